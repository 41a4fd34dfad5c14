#include "vortex/run.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vortex/pairs.hpp"
#include "vortex/shape.hpp"

namespace vortex {

using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::config, "config: " + msg); }

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) config_error("unknown field '" + (where.empty() ? key : where + "." + key) + "'");
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) config_error(field + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_error(field + " must be finite");
  return d;
}

double positive(const json& v, const std::string& field) {
  const double d = number(v, field);
  if (!(d > 0.0)) config_error(field + " must be positive");
  return d;
}

long integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) config_error(field + " must be an integer");
  return v.get<long>();
}

std::uint64_t seed_of(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) config_error(field + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<double> numbers(const json& v, const std::string& field) {
  if (!v.is_array()) config_error(field + " must be an array");
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(number(v[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

Vec3 vec3(const json& v, const std::string& field) {
  const auto a = numbers(v, field);
  if (a.size() != 3) config_error(field + " must have 3 components");
  return Vec3(a[0], a[1], a[2]);
}

void parse_initial(const json& j, RunConfig& cfg) {
  check_keys(j, "initial", {"preset", "colatitude", "seed", "positions", "shape"});
  InitialSpec& in = cfg.initial;
  const int n = cfg.n();
  const int given = static_cast<int>(j.contains("preset")) + static_cast<int>(j.contains("positions")) +
                    static_cast<int>(j.contains("shape"));
  if (given != 1) config_error("initial needs exactly one of preset, positions, shape");
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) config_error("initial.preset must be a string");
    const std::string p = j["preset"];
    if (p == "tetrahedron") {
      in.kind = InitialKind::tetrahedron;
      if (n != 4) config_error("initial.preset tetrahedron needs 4 circulations, got " + std::to_string(n));
    } else if (p == "ring") {
      in.kind = InitialKind::ring;
      if (j.contains("colatitude")) in.colatitude = number(j["colatitude"], "initial.colatitude");
    } else if (p == "random") {
      in.kind = InitialKind::random;
      if (j.contains("seed")) in.seed = seed_of(j["seed"], "initial.seed");
    } else {
      config_error("initial.preset '" + p + "' is not one of tetrahedron, ring, random");
    }
    if (j.contains("colatitude") && in.kind != InitialKind::ring) config_error("initial.colatitude applies to the ring preset only");
    if (j.contains("seed") && in.kind != InitialKind::random) config_error("initial.seed applies to the random preset only");
    return;
  }
  if (j.contains("colatitude") || j.contains("seed")) config_error("initial.colatitude and initial.seed need a preset");
  if (j.contains("positions")) {
    in.kind = InitialKind::positions;
    const json& p = j["positions"];
    if (!p.is_array()) config_error("initial.positions must be an array");
    if (static_cast<int>(p.size()) != n)
      config_error("initial.positions has " + std::to_string(p.size()) + " entries for " + std::to_string(n) + " circulations");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string field = "initial.positions[" + std::to_string(i) + "]";
      const Vec3 x = vec3(p[i], field);
      if (std::abs(x.norm() - cfg.radius) > 1e-6 * cfg.radius)
        config_error(field + " is not on the sphere of radius " + format_double(cfg.radius) + " (tolerance 1e-6 R)");
      in.positions.push_back(x);
    }
    return;
  }
  in.kind = InitialKind::shape;
  const json& s = j["shape"];
  check_keys(s, "initial.shape", {"s", "mu"});
  if (!s.contains("s") || !s.contains("mu")) config_error("initial.shape needs s and mu");
  if (n < 2) config_error("initial.shape needs at least 2 circulations");
  in.s = numbers(s["s"], "initial.shape.s");
  if (static_cast<int>(in.s.size()) != n - 1) config_error("initial.shape.s must have " + std::to_string(n - 1) + " entries");
  const json& mu = s["mu"];
  if (!mu.is_array() || static_cast<int>(mu.size()) != pair_count(n - 1))
    config_error("initial.shape.mu must have " + std::to_string(pair_count(n - 1)) + " [re, im] entries");
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const auto v = numbers(mu[k], "initial.shape.mu[" + std::to_string(k) + "]");
    if (v.size() != 2) config_error("initial.shape.mu[" + std::to_string(k) + "] must be [re, im]");
    in.mu.emplace_back(v[0], v[1]);
  }
}

void parse_integrator(const json& j, IntegratorConfig& ic) {
  check_keys(j, "integrator", {"method", "dt", "initial_dt", "rtol", "atol", "t_end", "sample_stride", "sample_interval", "max_steps"});
  if (j.contains("method")) {
    if (!j["method"].is_string()) config_error("integrator.method must be a string");
    try {
      ic.method = method_from_string(j["method"]);
    } catch (const Error&) {
      config_error("integrator.method must be rk4 or dp54");
    }
  }
  if (j.contains("dt")) ic.dt = positive(j["dt"], "integrator.dt");
  if (j.contains("initial_dt")) ic.initial_dt = number(j["initial_dt"], "integrator.initial_dt");
  if (j.contains("rtol")) ic.rtol = positive(j["rtol"], "integrator.rtol");
  if (j.contains("atol")) ic.atol = positive(j["atol"], "integrator.atol");
  if (j.contains("t_end")) ic.t_end = positive(j["t_end"], "integrator.t_end");
  if (j.contains("sample_stride")) ic.sample_stride = static_cast<int>(integer(j["sample_stride"], "integrator.sample_stride"));
  if (j.contains("sample_interval")) ic.sample_interval = number(j["sample_interval"], "integrator.sample_interval");
  if (j.contains("max_steps")) ic.max_steps = integer(j["max_steps"], "integrator.max_steps");
  try {
    ic.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
}

void parse_stability(const json& j, RunConfig& cfg) {
  check_keys(j, "stability", {"phi1", "phi2", "psi_grad", "psi_hessian", "sweep"});
  EnergyCasimirSpec& s = cfg.stability;
  if (j.contains("phi1")) s.phi1 = number(j["phi1"], "stability.phi1");
  if (j.contains("phi2")) s.phi2 = number(j["phi2"], "stability.phi2");
  if (j.contains("psi_grad")) s.psi_grad = vec3(j["psi_grad"], "stability.psi_grad");
  if (j.contains("psi_hessian")) {
    const json& h = j["psi_hessian"];
    if (!h.is_array() || h.size() != 3) config_error("stability.psi_hessian must be a 3x3 array");
    for (int r = 0; r < 3; ++r) s.psi_hessian.row(r) = vec3(h[r], "stability.psi_hessian[" + std::to_string(r) + "]").transpose();
    if ((s.psi_hessian - s.psi_hessian.transpose()).cwiseAbs().maxCoeff() > 0.0)
      config_error("stability.psi_hessian must be symmetric");
  }
  if (j.contains("sweep")) {
    const json& w = j["sweep"];
    if (!w.is_array()) config_error("stability.sweep must be an array");
    for (std::size_t k = 0; k < w.size(); ++k) {
      const std::string field = "stability.sweep[" + std::to_string(k) + "]";
      const auto g = numbers(w[k], field);
      if (g.size() != 4) config_error(field + ": tetrahedron analysis requires N=4");
      for (double v : g)
        if (v == 0.0) config_error(field + " has a zero circulation");
      cfg.sweep.push_back({g[0], g[1], g[2], g[3]});
    }
  }
}

std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

double uniform01(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

Vec3 random_direction(std::mt19937_64& eng) {
  const double z = 2.0 * uniform01(eng) - 1.0;
  const double phi = 2.0 * kPi * uniform01(eng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory " + dir + ": " + ec.message());
}

std::string write_file(const std::string& dir, const std::string& name, const std::string& content) {
  ensure_dir(dir);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  return path;
}

json drift_summary(const std::vector<std::string>& names, const std::vector<std::vector<double>>& values) {
  json d = json::object();
  for (std::size_t m = 0; m < names.size(); ++m) {
    const auto& v = values[m];
    if (v.empty()) continue;
    double max_abs = 0.0;
    for (double x : v) max_abs = std::max(max_abs, std::abs(x - v.front()));
    const bool zero_ref = std::abs(v.front()) <= 1e-10;
    d[names[m]] = {{"initial", v.front()},
                   {"final", v.back()},
                   {"max_abs_drift", max_abs},
                   {"max_rel_drift", zero_ref ? max_abs : max_abs / std::abs(v.front())},
                   {"relative", !zero_ref}};
  }
  return d;
}

json base_summary(const RunConfig& cfg) {
  return {{"level", to_string(cfg.level)},
          {"n", cfg.n()},
          {"radius", cfg.radius},
          {"gamma", cfg.gamma},
          {"method", to_string(cfg.integrator.method)},
          {"t_end", cfg.integrator.t_end}};
}

json record_summary(const TrajectoryRecord& rec) {
  json j = {{"samples", rec.samples()},
            {"t_final", rec.times.empty() ? 0.0 : rec.times.back()},
            {"accepted_steps", rec.accepted_steps},
            {"rejected_steps", rec.rejected_steps},
            {"post_step_changes", rec.post_step_changes},
            {"halted", rec.halted},
            {"halt_reason", rec.halted ? json(rec.halt_reason) : json(nullptr)}};
  return j;
}

SystemOptions options_of(const RunConfig& cfg) {
  SystemOptions o;
  o.renormalize_sphere = cfg.renormalize_sphere;
  o.project_shape_constraints = cfg.project_shape_constraints;
  return o;
}

Circulations circulations_of(const RunConfig& cfg) {
  try {
    return Circulations(cfg.gamma, cfg.radius);
  } catch (const Error& e) {
    config_error(e.what());
  }
}

// Setup failures (bad initial data) are configuration errors.
template <class F>
auto as_config(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config || e.code() == ErrorCode::io) throw;
    config_error(std::string("initial data: ") + e.what());
  }
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  check_keys(j, "", {"level", "n", "radius", "gamma", "initial", "phases", "perturbation", "integrator",
                     "renormalize_sphere", "project_shape_constraints", "tolerance", "stability", "output"});
  RunConfig cfg;
  if (j.contains("level")) {
    if (!j["level"].is_string()) config_error("level must be a string");
    try {
      cfg.level = level_from_string(j["level"]);
    } catch (const Error&) {
      config_error("level must be one of sphere, lifted, liepoisson, shape");
    }
  }
  if (j.contains("radius")) cfg.radius = positive(j["radius"], "radius");
  if (!j.contains("gamma")) config_error("missing field 'gamma'");
  cfg.gamma = numbers(j["gamma"], "gamma");
  if (cfg.gamma.empty()) config_error("gamma must not be empty");
  for (std::size_t i = 0; i < cfg.gamma.size(); ++i)
    if (cfg.gamma[i] == 0.0) config_error("gamma[" + std::to_string(i) + "] must be nonzero");
  if (j.contains("n") && integer(j["n"], "n") != cfg.n())
    config_error("n = " + std::to_string(integer(j["n"], "n")) + " does not match " + std::to_string(cfg.n()) + " circulations");
  if (cfg.level == Level::shape && cfg.n() < 2) config_error("level shape needs at least 2 circulations");

  if (!j.contains("initial")) config_error("missing field 'initial'");
  parse_initial(j["initial"], cfg);
  if (cfg.initial.kind == InitialKind::shape && cfg.level != Level::shape)
    config_error("initial.shape requires level shape");

  if (j.contains("phases")) {
    cfg.phases = numbers(j["phases"], "phases");
    if (cfg.phases.size() != cfg.gamma.size()) config_error("phases must have one entry per vortex");
  }
  if (j.contains("perturbation")) {
    const json& p = j["perturbation"];
    check_keys(p, "perturbation", {"amplitude", "seed"});
    if (p.contains("amplitude")) cfg.perturbation.amplitude = number(p["amplitude"], "perturbation.amplitude");
    if (cfg.perturbation.amplitude < 0.0) config_error("perturbation.amplitude must be non-negative");
    if (p.contains("seed")) cfg.perturbation.seed = seed_of(p["seed"], "perturbation.seed");
    if (cfg.perturbation.amplitude > 0.0 && cfg.initial.kind == InitialKind::shape)
      config_error("perturbation needs sphere positions, not initial.shape");
  }
  if (j.contains("integrator")) parse_integrator(j["integrator"], cfg.integrator);
  if (j.contains("renormalize_sphere")) {
    if (!j["renormalize_sphere"].is_boolean()) config_error("renormalize_sphere must be a boolean");
    cfg.renormalize_sphere = j["renormalize_sphere"];
  }
  if (j.contains("project_shape_constraints")) {
    if (!j["project_shape_constraints"].is_boolean()) config_error("project_shape_constraints must be a boolean");
    cfg.project_shape_constraints = j["project_shape_constraints"];
  }
  if (j.contains("tolerance")) cfg.tolerance = positive(j["tolerance"], "tolerance");
  if (j.contains("stability")) parse_stability(j["stability"], cfg);
  if (j.contains("output")) {
    check_keys(j["output"], "output", {"dir"});
    if (j["output"].contains("dir")) {
      if (!j["output"]["dir"].is_string()) config_error("output.dir must be a string");
      cfg.output_dir = j["output"]["dir"];
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

void override_seed(RunConfig& cfg, std::uint64_t seed) {
  cfg.initial.seed = seed;
  cfg.perturbation.seed = seed;
}

SphereState random_configuration(int n, double radius, std::uint64_t seed) {
  auto eng = make_engine(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    SphereState x(n);
    for (auto& p : x) p = radius * random_direction(eng);
    bool ok = true;
    for (auto [i, j] : pair_list(n)) {
      const double l = (x[i] - x[j]).norm();
      ok = ok && l >= 0.1 * radius && l <= 1.99 * radius;
    }
    if (ok) return x;
  }
  throw Error(ErrorCode::config, "config: random preset found no well-separated configuration");
}

SphereState ring_configuration(int n, double radius, double colatitude) {
  SphereState x(n);
  for (int i = 0; i < n; ++i) {
    const double phi = 2.0 * kPi * i / n;
    x[i] = radius * Vec3(std::sin(colatitude) * std::cos(phi), std::sin(colatitude) * std::sin(phi), std::cos(colatitude));
  }
  return x;
}

SphereState initial_positions(const RunConfig& cfg) {
  const int n = cfg.n();
  const double r = cfg.radius;
  SphereState x;
  switch (cfg.initial.kind) {
    case InitialKind::tetrahedron: x = tetrahedron_configuration(r); break;
    case InitialKind::ring: x = ring_configuration(n, r, cfg.initial.colatitude); break;
    case InitialKind::random: x = random_configuration(n, r, cfg.initial.seed); break;
    case InitialKind::positions:
      x = cfg.initial.positions;
      for (auto& p : x) p *= r / p.norm();
      break;
    case InitialKind::shape: config_error("initial.shape has no sphere positions");
  }
  if (cfg.perturbation.amplitude > 0.0) {
    auto eng = make_engine(cfg.perturbation.seed);
    for (auto& p : x) {
      p += cfg.perturbation.amplitude * r * random_direction(eng);
      p *= r / p.norm();
    }
  }
  return x;
}

Eigen::VectorXd initial_vector(const RunConfig& cfg) {
  const Circulations c = circulations_of(cfg);
  return as_config([&]() -> Eigen::VectorXd {
    if (cfg.initial.kind != InitialKind::shape) return initial_state(cfg.level, initial_positions(cfg), c, cfg.phases);
    const int m = cfg.n() - 1;
    ShapePoint z(cfg.n());
    for (int i = 0; i < m; ++i) z.set_s(i, cfg.initial.s[i]);
    int k = 0;
    for (auto [i, j] : pair_list(m)) z.set_mu(i, j, cfg.initial.mu[k++]);
    check_admissible(z);
    for (double f : f_constraints(z))
      if (std::abs(f) > 1e-8) config_error("initial.shape violates the constraints f_ij = 0 (|f| = " + format_double(std::abs(f)) + ")");
    return project_constraints(z).chart();
  });
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const TrajectoryRecord& rec, const std::vector<std::string>& columns) {
  std::string out = "t";
  for (const auto& c : columns) out += "," + c;
  for (const auto& m : rec.monitor_names) out += "," + m;
  out += "\n";
  for (std::size_t k = 0; k < rec.samples(); ++k) {
    out += format_double(rec.times[k]);
    for (Eigen::Index i = 0; i < rec.states[k].size(); ++i) out += "," + format_double(rec.states[k](i));
    for (const auto& series : rec.monitor_values) out += "," + format_double(series[k]);
    out += "\n";
  }
  return out;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read trajectory file " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::config, path + ": empty file");
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split(line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size())
      throw Error(ErrorCode::config, path + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) + " fields");
    std::vector<double> row(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const char* b = cells[k].data();
      const char* e = b + cells[k].size();
      const auto res = std::from_chars(b, e, row[k]);
      if (res.ec != std::errc() || res.ptr != e)
        throw Error(ErrorCode::config, path + ":" + std::to_string(lineno) + ": bad number '" + cells[k] + "'");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

RunOutput simulate(const RunConfig& cfg, bool write_files) {
  const Circulations c = circulations_of(cfg);
  const Eigen::VectorXd y0 = initial_vector(cfg);
  const LevelSystem sys = as_config([&] { return make_system(cfg.level, c, options_of(cfg)); });
  const TrajectoryRecord rec = integrate(sys.rhs, y0, cfg.integrator, sys.monitors, sys.post_step);

  json s = base_summary(cfg);
  s.update(record_summary(rec));
  s["drifts"] = drift_summary(rec.monitor_names, rec.monitor_values);
  RunOutput out;
  out.status = rec.halted ? RunStatus::halted : RunStatus::ok;
  s["status"] = rec.halted ? "halted" : "ok";
  out.summary_json = s.dump(2);

  std::ostringstream txt;
  txt << "level " << to_string(cfg.level) << ", N = " << cfg.n() << ", " << rec.samples() << " samples to t = "
      << (rec.times.empty() ? 0.0 : rec.times.back()) << "\n";
  if (rec.halted) txt << "halted: " << rec.halt_reason << "\n";
  txt << pad("monitor", 12) << pad("initial", 16) << "max drift\n";
  for (const auto& [name, d] : s["drifts"].items())
    txt << pad(name, 12) << pad(sci(d["initial"].get<double>()), 16) << sci(d["max_rel_drift"].get<double>())
        << (d["relative"].get<bool>() ? " (rel)" : " (abs)") << "\n";
  out.text = txt.str();
  if (write_files) {
    out.files.push_back(write_file(cfg.output_dir, "trajectory.csv", trajectory_csv(rec, sys.columns)));
    out.files.push_back(write_file(cfg.output_dir, "summary.json", out.summary_json + "\n"));
  }
  return out;
}

RunOutput crosscheck(const RunConfig& cfg, bool write_files) {
  const Circulations c = circulations_of(cfg);
  const int n = cfg.n();
  const SphereState x0 = as_config([&] {
    const SphereState x = initial_positions(cfg);
    initial_state(Level::sphere, x, c);
    return x;
  });
  IntegratorConfig ic = cfg.integrator;
  if (!(ic.sample_interval > 0.0)) ic.sample_interval = ic.t_end / 200.0;
  const SystemOptions opts{cfg.renormalize_sphere, false};

  auto run = [&](Level l) {
    const LevelSystem sys = make_system(l, c, opts);
    return integrate(sys.rhs, initial_state(l, x0, c, cfg.phases), ic, {}, sys.post_step);
  };
  auto f_sphere = std::async(std::launch::async, run, Level::sphere);
  auto f_lifted = std::async(std::launch::async, run, Level::lifted);
  auto f_lp = std::async(std::launch::async, run, Level::liepoisson);
  std::future<TrajectoryRecord> f_shape;
  if (n >= 2) f_shape = std::async(std::launch::async, run, Level::shape);
  const TrajectoryRecord sp = f_sphere.get(), li = f_lifted.get(), lp = f_lp.get();
  TrajectoryRecord sh;
  if (n >= 2) sh = f_shape.get();

  const bool halted = sp.halted || li.halted || lp.halted || (n >= 2 && sh.halted);
  std::size_t common = std::min({sp.samples(), li.samples(), lp.samples()});
  if (n >= 2) common = std::min(common, sh.samples());

  double d_lifted = 0.0, d_lp = 0.0, d_shape = 0.0;
  for (std::size_t k = 0; k < common; ++k) {
    const SphereState xs = unpack_sphere(sp.states[k]);
    const SphereState xl = sphere_of(Level::lifted, li.states[k]);
    for (int i = 0; i < n; ++i) d_lifted = std::max(d_lifted, (xs[i] - xl[i]).cwiseAbs().maxCoeff());
    const Eigen::VectorXd lam = momentum_L(unpack_lifted(li.states[k]), c).coordinates();
    d_lp = std::max(d_lp, (lam - lp.states[k]).cwiseAbs().maxCoeff());
    if (n >= 2) d_shape = std::max(d_shape, (shape_chart_of(Level::sphere, sp.states[k], c) - sh.states[k]).cwiseAbs().maxCoeff());
  }
  const bool pass = !halted && d_lifted <= cfg.tolerance && d_lp <= cfg.tolerance && d_shape <= cfg.tolerance;

  json s = base_summary(cfg);
  s.erase("level");
  s["samples"] = common;
  s["sample_interval"] = ic.sample_interval;
  s["tolerance"] = cfg.tolerance;
  s["deviations"] = {{"sphere_vs_lifted", d_lifted}, {"lifted_vs_liepoisson", d_lp}, {"sphere_vs_shape", d_shape}};
  json runs = json::object();
  runs["sphere"] = record_summary(sp);
  runs["lifted"] = record_summary(li);
  runs["liepoisson"] = record_summary(lp);
  if (n >= 2) runs["shape"] = record_summary(sh);
  s["runs"] = runs;
  s["pass"] = pass;
  RunOutput out;
  out.status = halted ? RunStatus::halted : (pass ? RunStatus::ok : RunStatus::crosscheck_failed);
  s["status"] = halted ? "halted" : (pass ? "ok" : "failed");
  out.summary_json = s.dump(2);

  std::ostringstream txt;
  txt << "crosscheck N = " << n << ", " << common << " samples, tolerance " << sci(cfg.tolerance) << "\n";
  txt << pad("sphere vs lifted", 24) << sci(d_lifted) << "\n";
  txt << pad("lifted vs liepoisson", 24) << sci(d_lp) << "\n";
  txt << pad("sphere vs shape", 24) << sci(d_shape) << (n < 2 ? " (no shape for N = 1)" : "") << "\n";
  for (const auto& [name, r] : runs.items())
    if (r["halted"].get<bool>()) txt << name << " halted: " << r["halt_reason"].get<std::string>() << "\n";
  txt << (pass ? "PASS" : "FAIL") << "\n";
  out.text = txt.str();
  if (write_files) out.files.push_back(write_file(cfg.output_dir, "crosscheck.json", out.summary_json + "\n"));
  return out;
}

RunOutput stability(const RunConfig& cfg, bool write_files) {
  if (cfg.n() != 4) config_error("tetrahedron analysis requires N=4");
  std::vector<std::array<double, 4>> gammas{{cfg.gamma[0], cfg.gamma[1], cfg.gamma[2], cfg.gamma[3]}};
  gammas.insert(gammas.end(), cfg.sweep.begin(), cfg.sweep.end());
  std::vector<StabilityReport> reps;
  try {
    reps = analyze_sweep(gammas, cfg.radius, cfg.stability);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::not_critical) config_error(std::string("stability: ") + e.what());
    throw;
  }
  json arr = json::array();
  std::ostringstream txt;
  for (const auto& r : reps) {
    json j = {{"gamma", r.gamma},
              {"radius", r.radius},
              {"gradient_norm", r.gradient_norm},
              {"symmetry_residual", r.symmetry_residual},
              {"eigenvalues", std::vector<double>(r.eigenvalues.data(), r.eigenvalues.data() + r.eigenvalues.size())},
              {"minors", r.minors},
              {"closed_minors", r.closed_minors ? json(*r.closed_minors) : json(nullptr)},
              {"minors_match", r.minors_match},
              {"minor_tolerance", r.minor_tolerance},
              {"note", r.note},
              {"verdict", to_string(r.verdict)}};
    json h = json::array();
    for (Eigen::Index a = 0; a < r.hessian.rows(); ++a) {
      std::vector<double> row(r.hessian.cols());
      for (Eigen::Index b = 0; b < r.hessian.cols(); ++b) row[b] = r.hessian(a, b);
      h.push_back(row);
    }
    j["hessian"] = h;
    arr.push_back(j);

    txt << "gamma = (" << r.gamma[0] << ", " << r.gamma[1] << ", " << r.gamma[2] << ", " << r.gamma[3]
        << "), R = " << r.radius << "\n";
    txt << "gradient norm " << sci(r.gradient_norm) << "\n";
    txt << pad("k", 4) << pad("d_k numeric", 18) << pad("d_k closed", 18) << "eigenvalue\n";
    for (int k = 0; k < 9; ++k)
      txt << pad(std::to_string(k + 1), 4) << pad(sci(r.minors[k]), 18)
          << pad(r.closed_minors ? sci((*r.closed_minors)[k]) : std::string("-"), 18) << sci(r.eigenvalues(k)) << "\n";
    if (!r.note.empty()) txt << "note: " << r.note << "\n";
    txt << "verdict: " << to_string(r.verdict) << "\n\n";
  }
  json s = {{"reports", arr}, {"spec", {{"phi1", cfg.stability.phi1}, {"phi2", cfg.stability.phi2}}}};
  RunOutput out;
  out.summary_json = s.dump(2);
  out.text = txt.str();
  if (write_files) out.files.push_back(write_file(cfg.output_dir, "stability.json", out.summary_json + "\n"));
  return out;
}

RunOutput invariants(const RunConfig& cfg, const std::string& csv_path, bool write_files) {
  const Circulations c = circulations_of(cfg);
  const CsvTable t = read_csv(csv_path);
  const auto cols = state_columns(cfg.level, cfg.n());
  if (t.header.size() < cols.size() + 1 || t.header[0] != "t" ||
      !std::equal(cols.begin(), cols.end(), t.header.begin() + 1))
    throw Error(ErrorCode::config, csv_path + ": columns do not match level " + to_string(cfg.level) + " with N = " + std::to_string(cfg.n()));
  const LevelSystem sys = make_system(cfg.level, c, options_of(cfg));
  std::vector<std::string> names;
  std::vector<std::vector<double>> values(sys.monitors.size());
  for (const auto& m : sys.monitors) names.push_back(m.name);
  std::vector<double> times;
  std::string csv = "t";
  for (const auto& nm : names) csv += "," + nm;
  csv += "\n";
  for (const auto& row : t.rows) {
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(row.data() + 1, static_cast<Eigen::Index>(cols.size()));
    times.push_back(row[0]);
    csv += format_double(row[0]);
    for (std::size_t m = 0; m < sys.monitors.size(); ++m) {
      values[m].push_back(sys.monitors[m].eval(y));
      csv += "," + format_double(values[m].back());
    }
    csv += "\n";
  }
  json s = base_summary(cfg);
  s.erase("method");
  s.erase("t_end");
  s["source"] = csv_path;
  s["samples"] = times.size();
  s["drifts"] = drift_summary(names, values);
  RunOutput out;
  out.summary_json = s.dump(2);
  std::ostringstream txt;
  txt << times.size() << " samples from " << csv_path << "\n";
  txt << pad("monitor", 12) << pad("initial", 16) << "max drift\n";
  for (const auto& [name, d] : s["drifts"].items())
    txt << pad(name, 12) << pad(sci(d["initial"].get<double>()), 16) << sci(d["max_rel_drift"].get<double>())
        << (d["relative"].get<bool>() ? " (rel)" : " (abs)") << "\n";
  out.text = txt.str();
  if (write_files) {
    out.files.push_back(write_file(cfg.output_dir, "invariants.csv", csv));
    out.files.push_back(write_file(cfg.output_dir, "invariants.json", out.summary_json + "\n"));
  }
  return out;
}

}  // namespace vortex
