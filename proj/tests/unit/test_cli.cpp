#include "doctest.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/serialization.hpp"
#include "curvelab/surfaces.hpp"

using namespace curvelab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("curvelab_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path write_config(const fs::path& dir, const json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump(2);
  return p;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "curvelab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

json small_radial() {
  return {{"grid", {{"mode", "axisym"}, {"n_theta", 32}}},
          {"surface", {{"type", "harmonic"}, {"l", 2}, {"amplitude", 0.1}, {"basis", "cos"}}},
          {"profile", {{"kind", "power-exp-pinned"}, {"p", 1.0}, {"r_star", 1.0}}},
          {"flow", {{"kind", "radial"}, {"n", 2}, {"t_end", 0.05}, {"output_stride", 5}}}};
}

}  // namespace

TEST_CASE("missing n is a config error naming the field") {
  json bad = small_radial();
  bad["flow"].erase("n");
  try {
    flow_config_from_json(bad["flow"]);
    FAIL("no exception");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("flow.n") != std::string::npos);
  }
  const fs::path dir = scratch("missing_n");
  const fs::path cfg = write_config(dir, bad);
  CHECK(run_cli({"flow", "--config", cfg.string(), "--out", (dir / "out").string()}) == 64);
  CHECK(run_cli({"flow", "--config", (dir / "nope.json").string()}) == 64);
  CHECK(run_cli({"flow"}) == 64);
}

TEST_CASE("same seed gives byte-identical CSV") {
  const fs::path dir = scratch("repro");
  json cfg = small_radial();
  cfg["surface"] = {{"type", "random"}, {"amplitude", 0.2}};
  const fs::path path = write_config(dir, cfg);
  for (const char* sub : {"a", "b"})
    CHECK(run_cli({"flow", "--config", path.string(), "--out", (dir / sub).string(), "--seed", "99"}) != 64);
  const std::string a = slurp(dir / "a" / "trace.csv");
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(dir / "b" / "trace.csv"));
  // another seed draws another surface
  CHECK(run_cli({"flow", "--config", path.string(), "--out", (dir / "c").string(), "--seed", "100"}) != 64);
  CHECK(a != slurp(dir / "c" / "trace.csv"));

  // summaries differ only in their timestamp
  json sa = json::parse(slurp(dir / "a" / "summary.json"));
  json sb = json::parse(slurp(dir / "b" / "summary.json"));
  sa.erase("timestamp");
  sb.erase("timestamp");
  CHECK(sa == sb);
  CHECK(sa["seed"] == 99);
  CHECK(sa["schema_version"] == kSchemaVersion);

  // every CSV row carries seed and config hash
  std::istringstream rows(a);
  std::string line;
  std::getline(rows, line);
  CHECK(line.substr(line.size() - 1) == "\r");
  CHECK(line.find(",seed,config_hash") != std::string::npos);
  const std::string hash = sa["config_hash"];
  while (std::getline(rows, line)) CHECK(line.find(",99," + hash) != std::string::npos);
}

TEST_CASE("flow exit codes and forced runs") {
  const fs::path dir = scratch("force");
  json cfg = small_radial();
  cfg["profile"] = {{"kind", "constant"}, {"c", 1.0}};
  const fs::path path = write_config(dir, cfg);
  CHECK(run_cli({"flow", "--config", path.string(), "--out", (dir / "plain").string()}) == 1);
  CHECK(run_cli({"flow", "--config", path.string(), "--out", (dir / "forced").string(), "--force"}) == 2);
  const json s = json::parse(slurp(dir / "forced" / "summary.json"));
  CHECK(s["forced_violations"].size() == 1);
  CHECK(s["status"] == "TimeExhausted");
  CHECK(s["breach_count"] == 0);

  json amp = small_radial();
  amp["surface"]["amplitude"] = 0.5;
  CHECK(run_cli({"flow", "--config", write_config(dir, amp).string(), "--out", (dir / "amp").string()}) == 64);
}

TEST_CASE("verify and identities artifacts") {
  const fs::path dir = scratch("verify");
  const json cfg = {{"seed", 3},
                    {"grid", {{"mode", "axisym"}, {"n_theta", 48}}},
                    {"verify", {{"n", 2}, {"k", 1}, {"samples", 4}, {"amplitude", 0.2}, {"include_sphere", true}}}};
  const fs::path path = write_config(dir, cfg);
  CHECK(run_cli({"verify", "--config", path.string(), "--out", (dir / "a").string()}) == 0);
  CHECK(run_cli({"verify", "--config", path.string(), "--out", (dir / "b").string()}) == 0);
  const std::string csv = slurp(dir / "a" / "verify.csv");
  CHECK(csv == slurp(dir / "b" / "verify.csv"));
  CHECK(csv.rfind("sample,n,k,profile,sphericity,f_variation,lhs,rhs,deficit,relative,mode,status,seed,config_hash", 0) == 0);
  const json s = json::parse(slurp(dir / "a" / "verify_summary.json"));
  CHECK(s["rows"] == 4);  // the sphere replaces sample 0
  CHECK(s["flagged"] == 0);
  // sample 0 is the round sphere: the equality case
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  std::vector<std::string> cells;
  std::istringstream cs(line);
  for (std::string c; std::getline(cs, c, ',');) cells.push_back(c);
  REQUIRE(cells.size() == 14);
  CHECK(cells[0] == "0");
  CHECK(std::abs(std::stod(cells[4])) < 1e-12);
  CHECK(std::abs(std::stod(cells[9])) < 1e-10);
  CHECK(cells[11] == "ok");

  const json ic = {{"identities", {{"samples", 100}, {"nm_samples", 100}, {"resolutions", {{24, 48}, {48, 96}}}}}};
  CHECK(run_cli({"identities", "--config", write_config(dir, ic).string(), "--out", (dir / "id").string()}) == 0);
  const json id = json::parse(slurp(dir / "id" / "identities.json"));
  CHECK(id.contains("config_hash"));
  CHECK(id["schema_version"] == kSchemaVersion);
  CHECK(run_cli({"report", "--out", dir.string()}) == 0);
}

TEST_CASE("serialization helpers") {
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23}) {
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");

  auto g = SphericalGrid::full_s2(6, 12);
  const auto f = ellipsoid_radial(g, {1.1, 1.0, 0.9});
  const ScalarField back = field_from_json(json::parse(field_to_json(f).dump()));
  CHECK(back.grid().mode() == GridMode::FullS2);
  CHECK(back.grid().n_phi() == 12);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
  CHECK_THROWS_AS(field_from_json(json{{"mode", "torus"}, {"resolution", {4}}, {"values", {1}}}), ConfigError);

  const std::vector<std::string> want{"step", "t", "dt", "Q", "monotone", "V_0", "V_1", "V_2",
                                      "grad_max", "h_oscillation", "r_oscillation", "margin", "sphericity",
                                      "r_min", "r_max", "area", "volume", "seed", "config_hash"};
  CHECK(trace_columns(2) == want);

  const FlowConfig c = flow_config_from_json(json{{"kind", "support"}, {"n", 3}, {"k", 2}, {"cfl", 0.3}});
  CHECK(c.kind == FlowKind::Support);
  CHECK(c.cfl == 0.3);
  CHECK_THROWS_AS(flow_config_from_json(json{{"kind", "support"}, {"n", 3}}), ConfigError);
  CHECK_THROWS_AS(flow_config_from_json(json{{"n", "two"}}), ConfigError);
  CHECK_THROWS_AS(profile_from_json(json{{"kind", "wavy"}}), ConfigError);
  const SpeedProfile p = profile_from_json(json{{"kind", "affine-power"}, {"a", 1.0}, {"b", 0.5}, {"q", 2.0}});
  CHECK(p.value(1.0) == doctest::Approx(2.25));
}
