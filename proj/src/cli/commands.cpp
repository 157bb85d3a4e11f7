#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"

#include "curvelab/errors.hpp"
#include "curvelab/flows.hpp"
#include "curvelab/functionals.hpp"
#include "curvelab/identities.hpp"
#include "curvelab/serialization.hpp"
#include "curvelab/speed_profile.hpp"
#include "curvelab/surfaces.hpp"

namespace curvelab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kMaxAmplitude = 0.45;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

const json& section(const json& config, const char* name) {
  if (!config.contains(name)) throw ConfigError(std::string("missing required section '") + name + "'");
  return config.at(name);
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + where + "." + key + "' has the wrong type");
  }
}

template <class T>
T get_req(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError("missing required field '" + where + "." + key + "'");
  return get_or<T>(j, key, T{}, where);
}

/// Seed precedence: command line, then config, then 0. The effective seed is
/// written back so that the config hash covers it.
std::uint64_t effective_seed(json& config, const Options& opt) {
  std::uint64_t seed = get_or<std::uint64_t>(config, "seed", 0, "config");
  if (opt.seed) seed = *opt.seed;
  config["seed"] = seed;
  return seed;
}

fs::path prepare_out(const Options& opt) {
  fs::path out(opt.out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out.string() + ": " + ec.message());
  return out;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

json null_if_nan(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double field_min(const ScalarField& f) { return f.min(); }
double field_max(const ScalarField& f) { return f.max(); }

}  // namespace

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config '" + path + "'");
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

GridPtr grid_from_json(const json& j, int n) {
  const std::string mode = get_or<std::string>(j, "mode", "axisym", "grid");
  const int nt = get_or<int>(j, "n_theta", 128, "grid");
  try {
    if (mode == "axisym") return SphericalGrid::axisym(n, nt);
    if (mode == "full-s2") {
      if (n != 2) throw ConfigError("field 'grid.mode' full-s2 requires n = 2");
      return SphericalGrid::full_s2(nt, get_or<int>(j, "n_phi", 2 * nt, "grid"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("section 'grid': ") + e.what());
  }
  throw ConfigError("field 'grid.mode' must be axisym or full-s2");
}

ScalarField initial_surface(const json& j, GridPtr grid, Parametrization kind, std::mt19937_64& rng) {
  const std::string type = get_req<std::string>(j, "type", "surface");
  const double base = get_or<double>(j, "base", get_or<double>(j, "radius", 1.0, "surface"), "surface");
  if (!(base > 0.0)) throw ConfigError("field 'surface.base' must be positive");
  const double amp = get_or<double>(j, "amplitude", 0.0, "surface");
  if (!(amp >= 0.0 && amp <= kMaxAmplitude))
    throw ConfigError("field 'surface.amplitude' must lie in [0, 0.45]");

  if (type == "sphere") return sphere_field(grid, base);
  if (type == "spheroid") {
    const auto axes = get_req<std::vector<double>>(j, "axes", "surface");
    Ellipsoid e;
    if (axes.size() == 2) {
      e = {axes[0], axes[0], axes[1]};
    } else if (axes.size() == 3) {
      e = {axes[0], axes[1], axes[2]};
    } else {
      throw ConfigError("field 'surface.axes' needs 2 or 3 entries");
    }
    if (!(e.ax > 0 && e.ay > 0 && e.az > 0)) throw ConfigError("field 'surface.axes' must be positive");
    return kind == Parametrization::Radial ? ellipsoid_radial(grid, e) : ellipsoid_support(grid, e);
  }
  if (type == "harmonic") {
    const int l = get_req<int>(j, "l", "surface");
    const int m = get_or<int>(j, "m", 0, "surface");
    if (l < 0 || std::abs(m) > l) throw ConfigError("field 'surface.l' / 'surface.m' out of range");
    const std::string basis = get_or<std::string>(j, "basis", "ylm", "surface");
    if (basis == "cos") {
      return ScalarField::sample(grid, [&](double t, double) { return base * (1.0 + amp * std::cos(l * t)); });
    }
    if (basis != "ylm") throw ConfigError("field 'surface.basis' must be ylm or cos");
    const HarmonicSeries y(*grid, {{l, m, 1.0}});
    return ScalarField::sample(grid, [&](double t, double p) { return base * (1.0 + amp * y(t, p)); });
  }
  if (type == "random") {
    if (kind == Parametrization::Radial) return random_starshaped_radial(grid, base, amp, rng);
    const std::string validity = get_or<std::string>(j, "validity", "static-convex", "surface");
    if (validity != "static-convex" && validity != "convex")
      throw ConfigError("field 'surface.validity' must be static-convex or convex");
    return random_support(grid, base, amp,
                          validity == "convex" ? SupportValidity::Convex : SupportValidity::StaticConvex, rng);
  }
  if (type == "file") {
    ScalarField f = field_from_json(load_config(get_req<std::string>(j, "path", "surface")));
    if (f.grid().mode() != grid->mode() || f.grid().size() != grid->size() || f.grid().dim() != grid->dim())
      throw ConfigError("field 'surface.path' snapshot does not match the configured grid");
    return ScalarField(grid, std::vector<double>(f.values().begin(), f.values().end()));
  }
  throw ConfigError("field 'surface.type' must be sphere, spheroid, harmonic, random or file");
}

int cmd_flow(json config, const Options& opt, std::ostream& log) {
  const std::uint64_t seed = effective_seed(config, opt);
  FlowConfig fc = flow_config_from_json(section(config, "flow"));
  const GridPtr grid = grid_from_json(config.value("grid", json::object()), fc.n);
  const bool radial = fc.kind == FlowKind::Radial;
  const SpeedProfile profile = config.contains("profile")
                                   ? profile_from_json(config.at("profile"))
                                   : (radial ? throw ConfigError("missing required section 'profile'")
                                             : SpeedProfile::constant(1.0));
  const std::string hash = config_hash(config);

  std::mt19937_64 rng(seed);
  const ScalarField initial = initial_surface(section(config, "surface"), grid,
                                              radial ? Parametrization::Radial : Parametrization::Support, rng);

  // precondition checks; with --force they are recorded and the run proceeds
  json violations = json::array();
  auto violated = [&](const std::string& what) {
    violations.push_back(what);
    log << (opt.force ? "warning: " : "error: ") << what << '\n';
  };
  const json& pj = config.value("profile", json::object());
  const CurvatureField geom0 = radial ? radial_geometry(initial) : support_geometry(initial);
  const double lo = get_or<double>(pj, "interval_lo", 0.5 * field_min(initial), "profile");
  const double hi = get_or<double>(pj, "interval_hi", 2.0 * field_max(initial), "profile");
  try {
    profile.require_positive(lo, hi);
    if (radial) {
      const double r_star = validate_assumption_1_5(profile, fc.n, lo, hi);
      if (!fc.r_star) fc.r_star = r_star;
    } else {
      validate_assumption_1_10(profile, fc.n, fc.k, lo, hi);
      const StaticConvexityReport sc = static_convexity(geom0);
      if (sc.margin < 0.0) {
        std::ostringstream os;
        os << "initial data is not static convex (margin " << sc.margin << ")";
        violated(os.str());
      }
    }
  } catch (const AssumptionViolated& e) {
    violated(e.what());
  }
  if (!violations.empty() && !opt.force) return kRuntimeError;

  const FlowTrace trace = run_flow(initial, profile, fc);
  const fs::path out = prepare_out(opt);
  {
    std::ofstream os(out / "trace.csv", std::ios::binary);
    write_trace_csv(os, trace, fc.n, seed, hash);
  }
  if (trace.final_state) {
    json snap = field_to_json(*trace.final_state);
    snap["seed"] = seed;
    snap["config_hash"] = hash;
    write_json(out / "final_state.json", snap);
  }

  json summary = {{"schema_version", kSchemaVersion},
                  {"command", "flow"},
                  {"status", to_string(trace.status)},
                  {"t_final", trace.t_final},
                  {"steps", trace.steps},
                  {"breach_count", trace.breach_count},
                  {"max_breach", trace.max_breach},
                  {"seed", seed},
                  {"config_hash", hash},
                  {"timestamp", utc_timestamp()},
                  {"flow", to_json(fc)},
                  {"profile", to_json(profile)},
                  {"forced_violations", violations},
                  {"initial", to_json(summarize(geom0))}};
  if (trace.status == FlowStatus::Error) {
    summary["error_kind"] = trace.error_kind;
    summary["error_message"] = trace.error_message;
  }
  if (!trace.records.empty()) {
    const TraceRecord& first = trace.records.front();
    const TraceRecord& last = trace.records.back();
    summary["final"] = {{"r_min", last.r_min},
                        {"r_max", last.r_max},
                        {"r_oscillation", last.r_oscillation},
                        {"h_oscillation", last.h_oscillation},
                        {"grad_max", last.grad_max},
                        {"margin", null_if_nan(last.margin)},
                        {"monotone", last.monotone},
                        {"quermass", last.quermass}};
    summary["initial"]["monotone"] = first.monotone;
    summary["initial"]["quermass"] = first.quermass;
  }
  try {
    const DecayFit fit = estimate_decay_rate(trace);
    summary["gamma"] = fit.gamma;
    summary["r_squared"] = fit.r_squared;
  } catch (const InsufficientData&) {
    summary["gamma"] = nullptr;
  }
  json events = json::array();
  for (const FlowEvent& e : trace.events)
    events.push_back({{"t", e.t}, {"kind", e.kind}, {"detail", e.detail}, {"value", e.value}});
  summary["events"] = events;
  write_json(out / "summary.json", summary);

  log << "flow: " << to_string(trace.status) << " at t = " << trace.t_final << " after " << trace.steps
      << " steps";
  if (trace.status == FlowStatus::Error) log << " (" << trace.error_message << ")";
  log << '\n';
  switch (trace.status) {
    case FlowStatus::Converged:
      return kOk;
    case FlowStatus::TimeExhausted:
      return kTimeExhausted;
    case FlowStatus::Error:
      break;
  }
  return kRuntimeError;
}

int cmd_verify(json config, const Options& opt, std::ostream& log) {
  const std::uint64_t seed = effective_seed(config, opt);
  const json& vj = section(config, "verify");
  const int n = get_req<int>(vj, "n", "verify");
  const int k = get_or<int>(vj, "k", 1, "verify");
  const int samples = get_or<int>(vj, "samples", 50, "verify");
  const double amp = get_or<double>(vj, "amplitude", 0.3, "verify");
  const double base = get_or<double>(vj, "base", 1.0, "verify");
  const bool include_sphere = get_or<bool>(vj, "include_sphere", false, "verify");
  const std::string validity = get_or<std::string>(vj, "validity", "static-convex", "verify");
  const std::string calib = get_or<std::string>(vj, "calibration", "sphere-calibrated", "verify");
  auto profiles = get_or<std::vector<std::string>>(vj, "profiles", {"constant"}, "verify");
  if (n < 2 || n > kMaxDim) throw ConfigError("field 'verify.n' must lie in [2, 8]");
  if (k < 1 || k > n - 1 + (k == 1 ? 1 : 0)) throw ConfigError("field 'verify.k' must lie in [1, n-1]");
  if (samples < 1) throw ConfigError("field 'verify.samples' must be at least 1");
  if (!(amp >= 0.0 && amp <= kMaxAmplitude)) throw ConfigError("field 'verify.amplitude' must lie in [0, 0.45]");
  if (validity != "static-convex" && validity != "convex")
    throw ConfigError("field 'verify.validity' must be static-convex or convex");
  if (calib != "sphere-calibrated" && calib != "paper-literal")
    throw ConfigError("field 'verify.calibration' must be sphere-calibrated or paper-literal");
  const Calibration mode = calib == "paper-literal" ? Calibration::PaperLiteral : Calibration::SphereCalibrated;
  const SpeedProfile dens = config.contains("profile") ? profile_from_json(config.at("profile"))
                                                       : SpeedProfile::power_exp_pinned(1.0, 1.0, 1.0);
  for (const auto& p : profiles)
    if (p != "constant" && p != "profile") throw ConfigError("field 'verify.profiles' entries must be constant or profile");
  const GridPtr grid = grid_from_json(config.value("grid", json::object()), n);
  const std::string hash = config_hash(config);
  const bool use_support = k >= 2;

  const fs::path out = prepare_out(opt);
  std::ofstream csv(out / "verify.csv", std::ios::binary);
  csv << "sample,n,k,profile,sphericity,f_variation,lhs,rhs,deficit,relative,mode,status,seed,config_hash\r\n";

  double min_rel = std::numeric_limits<double>::infinity();
  double worst_rigidity = 0.0;
  int rows = 0, flagged = 0, near_equal = 0;
  const double rigidity_threshold = 1e-4;
  for (int s = 0; s < samples; ++s) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    std::optional<CurvatureField> geom;
    std::string surface_error;
    try {
      if (include_sphere && s == 0) {
        const ScalarField sph = sphere_field(grid, base);
        geom.emplace(use_support ? support_geometry(sph) : radial_geometry(sph));
      } else if (use_support) {
        geom.emplace(support_geometry(random_support(
            grid, base, amp, validity == "convex" ? SupportValidity::Convex : SupportValidity::StaticConvex, rng)));
      } else {
        geom.emplace(radial_geometry(random_starshaped_radial(grid, base, amp, rng)));
      }
    } catch (const Error& e) {
      surface_error = e.kind();
    }
    for (const auto& pname : profiles) {
      ++rows;
      std::ostringstream row;
      row << s << ',' << n << ',' << k << ',' << pname << ',';
      if (!geom) {
        ++flagged;
        csv << row.str() << ",,,,,," << to_string(mode) << ',' << csv_escape(surface_error) << ',' << seed << ','
            << hash << "\r\n";
        continue;
      }
      try {
        std::vector<double> fv(geom->size());
        for (std::size_t i = 0; i < fv.size(); ++i)
          fv[i] = pname == "constant" ? 1.0 : dens.value((*geom)[i].radius);
        const ScalarField f(grid, fv);
        const double fmean = std::accumulate(fv.begin(), fv.end(), 0.0) / static_cast<double>(fv.size());
        const double fvar = (f.max() - f.min()) / fmean;
        const double sph = sphericity(*geom);
        const DeficitReport d =
            k == 1 && !use_support ? michael_simon_deficit_H(*geom, f) : michael_simon_deficit_k(*geom, f, k, mode);
        min_rel = std::min(min_rel, d.relative);
        if (d.relative < rigidity_threshold) {
          ++near_equal;
          worst_rigidity = std::max(worst_rigidity, sph);
        }
        csv << row.str() << format_double(sph) << ',' << format_double(fvar) << ',' << format_double(d.lhs) << ','
            << format_double(d.rhs) << ',' << format_double(d.deficit) << ',' << format_double(d.relative) << ','
            << csv_escape(d.mode) << ",ok," << seed << ',' << hash << "\r\n";
      } catch (const Error& e) {
        ++flagged;
        csv << row.str() << ",,,,,," << to_string(mode) << ',' << csv_escape(e.kind()) << ',' << seed << ','
            << hash << "\r\n";
      }
    }
  }

  const json summary = {{"schema_version", kSchemaVersion},
                        {"command", "verify"},
                        {"n", n},
                        {"k", k},
                        {"rows", rows},
                        {"flagged", flagged},
                        {"min_relative_deficit", null_if_nan(std::isinf(min_rel) ? NAN : min_rel)},
                        {"rigidity_threshold", rigidity_threshold},
                        {"near_equality_rows", near_equal},
                        {"max_sphericity_near_equality", worst_rigidity},
                        {"calibration", to_string(mode)},
                        {"seed", seed},
                        {"config_hash", hash},
                        {"timestamp", utc_timestamp()}};
  write_json(out / "verify_summary.json", summary);
  log << "verify: " << rows << " rows, " << flagged << " flagged, min relative deficit " << min_rel << '\n';
  return kOk;
}

int cmd_identities(json config, const Options& opt, std::ostream& log) {
  const std::uint64_t seed = effective_seed(config, opt);
  const json ij = config.value("identities", json::object());
  const int samples = get_or<int>(ij, "samples", 1000, "identities");
  const int nm_samples = get_or<int>(ij, "nm_samples", 1000, "identities");
  const auto axes = get_or<std::vector<double>>(ij, "axes", {1.2, 1.0, 1.0}, "identities");
  const auto res = get_or<std::vector<std::vector<int>>>(ij, "resolutions", {{48, 96}, {96, 192}}, "identities");
  if (axes.size() != 3) throw ConfigError("field 'identities.axes' needs 3 entries");
  std::vector<std::pair<int, int>> levels;
  for (const auto& r : res) {
    if (r.size() != 2) throw ConfigError("field 'identities.resolutions' entries need [n_theta, n_phi]");
    levels.emplace_back(r[0], r[1]);
  }
  const std::string hash = config_hash(config);

  const IdentityBattery ib = run_identity_battery(samples, seed);
  const NewtonMaclaurinBattery nm = run_newton_maclaurin_battery(nm_samples, seed + 1);
  const MinkowskiStudy mk = run_minkowski_study({axes[0], axes[1], axes[2]}, levels);

  const bool pass_identities = ib.max_residual() < 1e-10;
  const bool pass_nm = nm.violations == 0 && nm.false_equalities == 0 && nm.missed_equalities == 0;
  bool pass_mk = !mk.residual.empty() && !mk.order.empty();
  if (pass_mk) {
    for (double r : mk.residual.front()) pass_mk = pass_mk && r < 5e-3;
    for (double o : mk.order) pass_mk = pass_mk && o >= 1.7;
  }
  const json report = {
      {"schema_version", kSchemaVersion},
      {"command", "identities"},
      {"seed", seed},
      {"config_hash", hash},
      {"timestamp", utc_timestamp()},
      {"symmetric_functions",
       {{"samples", ib.samples},
        {"trace_residual", ib.trace_residual},
        {"linear_residual", ib.linear_residual},
        {"square_residual", ib.square_residual},
        {"trace_bound_violation", ib.trace_bound_violation},
        {"square_lower_violation", ib.square_lower_violation},
        {"square_upper_violation", ib.square_upper_violation},
        {"homogeneity_residual", ib.homogeneity_residual},
        {"min_monotonicity", ib.min_monotonicity},
        {"pass", pass_identities}}},
      {"newton_maclaurin",
       {{"samples", nm.samples},
        {"pairs", nm.pairs},
        {"min_gap", nm.min_gap},
        {"violations", nm.violations},
        {"false_equalities", nm.false_equalities},
        {"missed_equalities", nm.missed_equalities},
        {"pass", pass_nm}}},
      {"minkowski",
       {{"axes", axes}, {"resolutions", res}, {"residual", mk.residual}, {"order", mk.order}, {"pass", pass_mk}}}};
  write_json(prepare_out(opt) / "identities.json", report);
  log << "identities: symmetric functions " << (pass_identities ? "pass" : "FAIL") << ", Newton-MacLaurin "
      << (pass_nm ? "pass" : "FAIL") << ", Minkowski " << (pass_mk ? "pass" : "FAIL") << '\n';
  return kOk;
}

int cmd_report(const Options& opt, std::ostream& log) {
  const fs::path root(opt.out_dir);
  if (!fs::exists(root)) {
    log << "error: output directory " << root << " does not exist\n";
    return kRuntimeError;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    const auto name = e.path().filename();
    if (name == "summary.json" || name == "verify_summary.json" || name == "identities.json")
      files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    log << "error: no artifacts under " << root << '\n';
    return kRuntimeError;
  }
  auto line = [&](const fs::path& p, const std::string& what, bool pass, const std::string& detail) {
    log << std::left << std::setw(40) << fs::relative(p, root).string() << std::setw(26) << what
        << (pass ? "PASS  " : "FAIL  ") << detail << '\n';
  };
  for (const auto& p : files) {
    const json j = load_config(p.string());
    const std::string cmd = j.value("command", std::string());
    std::ostringstream d;
    if (cmd == "identities") {
      const auto& sf = j.at("symmetric_functions");
      d << "max residual " << std::max({sf.at("trace_residual").get<double>(), sf.at("linear_residual").get<double>(),
                                        sf.at("square_residual").get<double>()});
      line(p, "identity residuals", sf.at("pass").get<bool>(), d.str());
      d.str("");
      const auto& nm = j.at("newton_maclaurin");
      d << nm.at("violations") << " violations, min gap " << nm.at("min_gap");
      line(p, "Newton-MacLaurin", nm.at("pass").get<bool>(), d.str());
      d.str("");
      const auto& mk = j.at("minkowski");
      d << "order " << mk.at("order").dump();
      line(p, "Minkowski convergence", mk.at("pass").get<bool>(), d.str());
    } else if (cmd == "verify") {
      const json mr = j.at("min_relative_deficit");
      const bool ok = !mr.is_null() && mr.get<double>() >= -1e-3 && j.at("max_sphericity_near_equality").get<double>() < 1e-2;
      d << "min relative deficit " << mr.dump() << ", flagged " << j.at("flagged");
      line(p, "deficit fuzz k=" + std::to_string(j.at("k").get<int>()), ok, d.str());
    } else if (cmd == "flow") {
      const std::string status = j.at("status");
      const bool converged = status == "Converged";
      d << status << " at t=" << j.at("t_final") << ", breaches " << j.at("breach_count");
      if (j.contains("final")) d << ", r in [" << j["final"]["r_min"] << ", " << j["final"]["r_max"] << "]";
      line(p, std::string("flow ") + j["flow"].value("kind", std::string()), converged && j.at("breach_count") == 0,
           d.str());
      if (!j.at("gamma").is_null()) {
        d.str("");
        d << "gamma " << j.at("gamma") << ", R^2 " << j.at("r_squared");
        line(p, "decay fit", j.at("gamma").get<double>() > 0 && j.at("r_squared").get<double>() > 0.95, d.str());
      }
    }
  }
  return kOk;
}

int run(int argc, char** argv) {
  if (const char* env = std::getenv("CURVELAB_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) omp_set_num_threads(t);
  }

  CLI::App app{"curvelab: curvature flows and Michael-Simon type inequalities on spherical grids"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config_path, "JSON experiment config");
    if (needs_config) c->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed (overrides the config)");
    sub->add_flag("--force", opt.force, "run even if the initial data violates the assumptions");
  };
  CLI::App* flow = app.add_subcommand("flow", "run a radial or support flow");
  CLI::App* verify = app.add_subcommand("verify", "fuzz the Michael-Simon type deficits");
  CLI::App* ident = app.add_subcommand("identities", "symmetric-function identities and Minkowski study");
  CLI::App* report = app.add_subcommand("report", "tabulate artifacts under --out");
  add_common(flow, true);
  add_common(verify, true);
  add_common(ident, false);
  report->add_option("--out", opt.out_dir, "directory holding artifacts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  for (CLI::App* sub : {flow, verify, ident})
    if (sub->parsed() && sub->count("--seed")) opt.seed = seed;

  try {
    if (report->parsed()) return cmd_report(opt, std::cerr);
    json config = opt.config_path.empty() ? json::object() : load_config(opt.config_path);
    if (flow->parsed()) return cmd_flow(std::move(config), opt, std::cerr);
    if (verify->parsed()) return cmd_verify(std::move(config), opt, std::cerr);
    return cmd_identities(std::move(config), opt, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace curvelab::cli
