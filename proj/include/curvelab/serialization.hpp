/// \file serialization.hpp
/// \brief JSON snapshots, config parsing and CSV output.
///
/// Field snapshot schema:
///   {"schema_version": 1, "mode": "full-s2" | "axisym", "n": int,
///    "resolution": [n_theta, n_phi] | [n_theta],
///    "theta": [...], "phi": [...], "values": [...]}
/// values are node-ordered: ring-major, longitude fastest.

#ifndef CURVELAB_SERIALIZATION_HPP
#define CURVELAB_SERIALIZATION_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "curvelab/flows.hpp"
#include "curvelab/functionals.hpp"
#include "curvelab/geometry.hpp"
#include "curvelab/speed_profile.hpp"
#include "curvelab/sphere_grid.hpp"

namespace curvelab {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

/// FNV-1a 64-bit hash of a string, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);
/// Hash of the canonical (sorted-key) dump of a config.
std::string config_hash(const nlohmann::json& config);

nlohmann::json field_to_json(const ScalarField& field);
ScalarField field_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GeometrySummary& s);
nlohmann::json to_json(const QuermassVector& q);
nlohmann::json to_json(const DeficitReport& d);

/// Required keys: "n". Optional keys override FlowConfig defaults.
/// Throws ConfigError naming the missing or malformed field.
FlowConfig flow_config_from_json(const nlohmann::json& j, const std::string& prefix = "flow");
nlohmann::json to_json(const FlowConfig& c);

/// {"kind": "power-exp-pinned", "p", "s", "r_star"} | {"kind": "affine-power", "a", "b", "q"}
/// | {"kind": "constant", "c"} | {"kind": "tabulated", "x": [...], "f": [...]}
SpeedProfile profile_from_json(const nlohmann::json& j, const std::string& prefix = "profile");
nlohmann::json to_json(const SpeedProfile& f);

/// Frozen trace column order. Every row ends with the run seed and config hash.
const std::vector<std::string>& trace_columns(int n);
void write_trace_csv(std::ostream& os, const FlowTrace& trace, int n, std::uint64_t seed, const std::string& hash);

/// RFC-4180 quoting when needed.
std::string csv_escape(const std::string& s);

}  // namespace curvelab

#endif  // CURVELAB_SERIALIZATION_HPP
