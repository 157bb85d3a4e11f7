#include "curvelab/serialization.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "curvelab/errors.hpp"

namespace curvelab {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const json& config) { return fnv1a_hex(config.dump()); }

json field_to_json(const ScalarField& field) {
  const SphericalGrid& g = field.grid();
  json j;
  j["schema_version"] = kSchemaVersion;
  j["mode"] = g.mode() == GridMode::FullS2 ? "full-s2" : "axisym";
  j["n"] = g.dim();
  if (g.mode() == GridMode::FullS2) {
    j["resolution"] = {g.n_theta(), g.n_phi()};
  } else {
    j["resolution"] = {g.n_theta()};
  }
  std::vector<double> theta, phi;
  for (int t = 0; t < g.n_theta(); ++t) theta.push_back(g.theta(t));
  for (int p = 0; p < g.n_phi(); ++p) phi.push_back(g.phi(p));
  j["theta"] = theta;
  j["phi"] = phi;
  j["values"] = std::vector<double>(field.values().begin(), field.values().end());
  return j;
}

ScalarField field_from_json(const json& j) {
  try {
    const std::string mode = j.at("mode").get<std::string>();
    const auto res = j.at("resolution").get<std::vector<int>>();
    GridPtr grid;
    if (mode == "full-s2") {
      if (res.size() != 2) throw ConfigError("field 'resolution' needs [n_theta, n_phi]");
      grid = SphericalGrid::full_s2(res[0], res[1]);
    } else if (mode == "axisym") {
      if (res.empty()) throw ConfigError("field 'resolution' needs [n_theta]");
      grid = SphericalGrid::axisym(j.at("n").get<int>(), res[0]);
    } else {
      throw ConfigError("field 'mode' must be full-s2 or axisym");
    }
    return ScalarField(grid, j.at("values").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("snapshot: ") + e.what());
  }
}

json to_json(const GeometrySummary& s) {
  return {{"kappa_min", s.kappa_min}, {"kappa_max", s.kappa_max}, {"H_min", s.H_min},
          {"H_max", s.H_max},         {"h_min", s.h_min},         {"h_max", s.h_max},
          {"margin", std::isnan(s.margin) ? json(nullptr) : json(s.margin)},
          {"area", s.area},           {"volume", s.volume}};
}

json to_json(const QuermassVector& q) { return q.V; }

json to_json(const DeficitReport& d) {
  return {{"lhs", d.lhs}, {"rhs", d.rhs}, {"deficit", d.deficit}, {"relative", d.relative}, {"k", d.k}, {"mode", d.mode}};
}

namespace {

template <class T>
void read_opt(const json& j, const char* key, T& out, const std::string& prefix) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + prefix + "." + key + "' has the wrong type");
  }
}

template <class T>
T read_req(const json& j, const char* key, const std::string& prefix) {
  if (!j.contains(key)) throw ConfigError("missing required field '" + prefix + "." + key + "'");
  T out{};
  read_opt(j, key, out, prefix);
  return out;
}

}  // namespace

FlowConfig flow_config_from_json(const json& j, const std::string& prefix) {
  if (!j.is_object()) throw ConfigError("section '" + prefix + "' must be an object");
  FlowConfig c;
  const std::string kind = j.value("kind", std::string("radial"));
  if (kind == "radial") {
    c.kind = FlowKind::Radial;
  } else if (kind == "support") {
    c.kind = FlowKind::Support;
  } else {
    throw ConfigError("field '" + prefix + ".kind' must be radial or support");
  }
  c.n = read_req<int>(j, "n", prefix);
  if (c.kind == FlowKind::Support) c.k = read_req<int>(j, "k", prefix);
  read_opt(j, "cfl", c.cfl, prefix);
  read_opt(j, "t_end", c.t_end, prefix);
  read_opt(j, "grad_threshold", c.grad_threshold, prefix);
  read_opt(j, "fhat_threshold", c.fhat_threshold, prefix);
  read_opt(j, "osc_threshold", c.osc_threshold, prefix);
  read_opt(j, "output_stride", c.output_stride, prefix);
  read_opt(j, "mono_rel_tol", c.mono_rel_tol, prefix);
  read_opt(j, "dt_min", c.dt_min, prefix);
  read_opt(j, "max_steps", c.max_steps, prefix);
  read_opt(j, "polar_filter", c.polar_filter, prefix);
  if (j.contains("fixed_dt")) c.fixed_dt = read_req<double>(j, "fixed_dt", prefix);
  if (j.contains("r_star")) c.r_star = read_req<double>(j, "r_star", prefix);
  c.validate();
  return c;
}

json to_json(const FlowConfig& c) {
  json j = {{"kind", c.kind == FlowKind::Radial ? "radial" : "support"},
            {"n", c.n},
            {"k", c.k},
            {"cfl", c.cfl},
            {"t_end", c.t_end},
            {"grad_threshold", c.grad_threshold},
            {"fhat_threshold", c.fhat_threshold},
            {"osc_threshold", c.osc_threshold},
            {"output_stride", c.output_stride},
            {"mono_rel_tol", c.mono_rel_tol},
            {"dt_min", c.dt_min},
            {"max_steps", c.max_steps},
            {"polar_filter", c.polar_filter}};
  if (c.fixed_dt) j["fixed_dt"] = *c.fixed_dt;
  if (c.r_star) j["r_star"] = *c.r_star;
  return j;
}

SpeedProfile profile_from_json(const json& j, const std::string& prefix) {
  if (!j.is_object()) throw ConfigError("section '" + prefix + "' must be an object");
  const std::string kind = read_req<std::string>(j, "kind", prefix);
  try {
    if (kind == "power-exp-pinned") {
      return SpeedProfile::power_exp_pinned(read_req<double>(j, "p", prefix), j.value("s", 1.0),
                                            read_req<double>(j, "r_star", prefix));
    }
    if (kind == "affine-power") {
      return SpeedProfile::affine_power(read_req<double>(j, "a", prefix), read_req<double>(j, "b", prefix),
                                        read_req<double>(j, "q", prefix));
    }
    if (kind == "constant") return SpeedProfile::constant(j.value("c", 1.0));
    if (kind == "tabulated") {
      return SpeedProfile::tabulated(read_req<std::vector<double>>(j, "x", prefix),
                                     read_req<std::vector<double>>(j, "f", prefix));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("section '" + prefix + "': " + e.what());
  }
  throw ConfigError("field '" + prefix + ".kind' is not a known profile kind");
}

json to_json(const SpeedProfile& f) {
  const auto& p = f.parameters();
  switch (f.kind()) {
    case SpeedProfile::Kind::PowerExpPinned:
      return {{"kind", f.kind_name()}, {"p", p[0]}, {"s", p[1]}, {"r_star", p[2]}};
    case SpeedProfile::Kind::AffinePower:
      return {{"kind", f.kind_name()}, {"a", p[0]}, {"b", p[1]}, {"q", p[2]}};
    case SpeedProfile::Kind::Constant:
      return {{"kind", f.kind_name()}, {"c", p[0]}};
    case SpeedProfile::Kind::Tabulated:
      return {{"kind", f.kind_name()}, {"x_min", p[0]}, {"x_max", p[1]}, {"points", p[2]}};
  }
  return {};
}

const std::vector<std::string>& trace_columns(int n) {
  static std::vector<std::vector<std::string>> cache(kMaxDim + 1);
  auto& cols = cache[static_cast<std::size_t>(n)];
  if (cols.empty()) {
    cols = {"step", "t", "dt", "Q", "monotone"};
    for (int k = 0; k <= n; ++k) cols.push_back("V_" + std::to_string(k));
    for (const char* c : {"grad_max", "h_oscillation", "r_oscillation", "margin", "sphericity", "r_min", "r_max",
                          "area", "volume", "seed", "config_hash"})
      cols.emplace_back(c);
  }
  return cols;
}

void write_trace_csv(std::ostream& os, const FlowTrace& trace, int n, std::uint64_t seed, const std::string& hash) {
  const auto& cols = trace_columns(n);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\r\n";
  for (const auto& r : trace.records) {
    os << r.step << ',' << format_double(r.t) << ',' << format_double(r.dt) << ',' << format_double(r.Q) << ','
       << format_double(r.monotone);
    for (double v : r.quermass) os << ',' << format_double(v);
    for (double v : {r.grad_max, r.h_oscillation, r.r_oscillation, r.margin, r.sphericity, r.r_min, r.r_max, r.area,
                     r.volume})
      os << ',' << format_double(v);
    os << ',' << seed << ',' << hash << "\r\n";
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace curvelab
