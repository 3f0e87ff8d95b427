#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "helix/cli/checks.hpp"
#include "helix/cli/config.hpp"
#include "helix/cli/export.hpp"
#include "helix/cli/report.hpp"
#include "helix/cli/scenarios.hpp"
#include "helix/errors.hpp"
#include "helix/specfun.hpp"

using namespace helix;
using namespace helix::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("helix_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

RunConfig config_file(const std::string& name) { return load_config(std::string(HELIX_CONFIG_DIR) + "/" + name); }

int run_binary(const std::string& args) {
  const char* env = std::getenv("HELIX_BIN");
  const std::string bin = env ? env : HELIX_BIN_PATH;
  const int status = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("shipped configs parse and round-trip") {
  for (const auto& e : fs::directory_iterator(HELIX_CONFIG_DIR)) {
    CAPTURE(e.path().string());
    const auto c = load_config(e.path().string());
    const auto text = serialize_config(c);
    CHECK(parse_config(text) == c);
    CHECK(serialize_config(parse_config(text)) == text);
  }
}

TEST_CASE("every parameter survives a round trip") {
  const std::string text = R"({
  "scenario": "field",
  "params": {"units": "natural", "m": 2.0, "c": 3.0, "hbar": 0.5, "B": 0.25},
  "model": {"kind": "dirac_helical", "n": 3, "l": 2, "d": 0.7, "pz": 0.1, "M": 2.5, "spin": "down",
            "trajectory": {"x": 1, "y": 2, "z": 3, "px": 4, "py": 5, "pz": 6}},
  "grid": {"n": [16, 16, 4], "origin": [-1, -1, 0], "spacing": [0.125, 0.125, 0.5]},
  "quadrature": {"rule": "gauss_hermite", "dim": 2, "points": [20, 22, 1], "center": [1, 2, 0],
                 "scale": [0.5, 0.5, 1], "half_width": [8, 8, 8], "decay_tolerance": 1e-10},
  "times": {"start": 0.5, "stop": 1.5, "count": 3},
  "output": "somewhere",
  "propagate": {"t_final": 2.0, "steps": 300},
  "spectrum": {"probe": [0.1, 0.2, 0.3], "t_span": 50.0, "samples": 1024},
  "verify": {"checks": ["classical_rk4", "normalization"]},
  "hamiltonian": {"dim": 2, "A": [1, 0, 0, 1], "Bq": [0.25, 0, 0, 0.25], "C": [0, 0.5, -0.5, 0]},
  "threads": 2,
  "tolerance_scale": 3.0
})";
  const auto c = parse_config(text);
  CHECK(c.model.params.c == 3.0);
  CHECK(c.model.spin == rel::Spin::down);
  CHECK(c.model.traj->pz == 6.0);
  CHECK(c.quad->points[1] == 22);
  CHECK(c.times.expand() == std::vector<double>{0.5, 1.0, 1.5});
  CHECK(c.hamiltonian->C[0][1] == 0.5);
  CHECK(c.verify.checks.size() == 2);
  CHECK(parse_config(serialize_config(c)) == c);

  const auto si = parse_config(R"({"scenario": "verify", "params": {"units": "si", "mass_kg": 9.1093837015e-31,
    "B_tesla": 2.0}, "model": {"kind": "landau"}})");
  CHECK(si.units.si);
  CHECK(parse_config(serialize_config(si)) == si);
}

TEST_CASE("schema violations carry line and column") {
  auto expect_at = [](const std::string& text, int line, int column) {
    try {
      parse_config(text);
      FAIL("no error raised");
    } catch (const ConfigError& e) {
      CAPTURE(e.what());
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  expect_at("{\n  \"scenario\": \"verify\",\n  \"model\": {\"kind\": \"landau\"},\n  \"colour\": 3\n}", 4, 3);
  expect_at("{\n  \"scenario\": \"verify\",\n  \"model\": {\"kind\": \"landau\", \"n\": \"two\"}\n}", 3, 36);
  expect_at("{\n  \"scenario\": \"fly\",\n  \"model\": {\"kind\": \"landau\"}\n}", 2, 15);
  CHECK_THROWS_AS(parse_config("{\"scenario\": \"verify\"}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"scenario\": \"verify\", "), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "field", "model": {"kind": "landau"}, "times": [0]})"),
                  ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("2x2x1 real export is bit-exact") {
  const auto dir = scratch("export");
  numerics::Grid3 g;
  g.n = {2, 2, 1};
  numerics::RealField f(g);
  f.at(0, 0, 0) = 1;
  f.at(0, 1, 0) = 2;
  f.at(1, 0, 0) = 3;
  f.at(1, 1, 0) = 4;
  const auto path = (dir / "f.bin").string();
  export_field(f, path, {});
  const auto bytes = slurp(path);
  REQUIRE(bytes.size() == 32);
  const auto expect = encode_le({1, 2, 3, 4});
  CHECK(std::equal(expect.begin(), expect.end(), reinterpret_cast<const std::uint8_t*>(bytes.data())));
  const auto meta = nlohmann::json::parse(slurp(path + ".meta.json"));
  CHECK(meta["sha256"] == sha256_file(path));
  CHECK(meta["bytes"] == 32);
  CHECK(meta["grid"]["n"] == nlohmann::json::array({2, 2, 1}));
  CHECK(meta.contains("created"));
  CHECK(sha256_hex("abc", 3) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  const auto back = load_field(path).as_real();
  CHECK(back.grid == g);
  CHECK(back.data == f.data);

  std::ofstream(path, std::ios::binary | std::ios::app) << 'x';
  CHECK_THROWS(load_field(path));
  CHECK_THROWS(export_field(f, "/nonexistent/dir/f.bin", {}));
}

TEST_CASE("complex and bispinor payloads round-trip bitwise") {
  const auto dir = scratch("complex");
  const auto g = numerics::Grid3::centered(3, 4, 1.0);
  numerics::ComplexField a(g);
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] = {std::sin(1.0 + i), std::cos(0.3 * i)};
  export_field(a, (dir / "a.bin").string(), {});
  const auto la = load_field((dir / "a.bin").string());
  CHECK(la.kind == ValueKind::complex);
  CHECK(la.as_complex().data == a.data);
  std::array<numerics::ComplexField, 4> b{a, a, a, a};
  for (auto& v : b[3].data) v *= 2.0;
  export_field(b, (dir / "b.bin").string(), {});
  CHECK(fs::file_size(dir / "b.bin") == a.data.size() * 64);
  CHECK(load_field((dir / "b.bin").string()).kind == ValueKind::bispinor);
}

TEST_CASE("report bookkeeping") {
  VerificationReport rep;
  rep.add(judge({"a", "ref", 0.5, 1.0}));
  CHECK(rep.passed());
  CHECK_THROWS_AS(rep.add(judge({"a", "ref", 0.5, 1.0})), std::logic_error);
  rep.add(judge({"b", "ref", NAN, 1.0}));
  CHECK_FALSE(rep.passed());
  CHECK(judge({"c", "ref", 2.0, 1.0, ">="}).passed);
  CHECK_FALSE(judge({"c", "ref", 0.5, 1.0, ">="}).passed);
  const auto j = rep.to_json();
  CHECK(j["checks"].size() == 2);
  CHECK(j["passed"] == false);
  CHECK_THROWS_AS(run_checks({"no_such_check"}, 1.0), ConfigError);
  CHECK(available_checks().size() == 12);
}

TEST_CASE("trajectory scenario closes after one period") {
  auto c = config_file("trajectory.json");
  c.output = scratch("trajectory").string();
  std::ostringstream log;
  CHECK(run(c, log) == exit_ok);
  const auto rows = read_csv(fs::path(c.output) / "trajectory.csv");
  REQUIRE(rows.size() == 1000);
  for (int k : {1, 2, 4, 5}) CHECK(std::abs(rows.back()[k] - rows.front()[k]) < 1e-12);
  CHECK(fs::exists(fs::path(c.output) / "config.json"));
}

TEST_CASE("corrections scenario with n = 0 reports zero shifts") {
  auto c = config_file("corrections.json");
  c.model.packet.qn = {0, 1};
  c.times = {};
  c.times.values = {0.0, 1.0};
  c.output = scratch("corrections").string();
  std::ostringstream log;
  CHECK(run(c, log) == exit_ok);
  for (const auto& row : read_csv(fs::path(c.output) / "corrections.csv")) {
    CHECK(row[1] == 0.0);
    CHECK(row[2] == 0.0);
    CHECK(std::abs(row[5]) < 1e-10);
    CHECK(std::abs(row[6]) < 1e-10);
  }
}

TEST_CASE("density of the (5,5) state shows n + 1 rings") {
  auto c = config_file("field.json");
  c.output = scratch("rings").string();
  std::ostringstream log;
  REQUIRE(run(c, log) == exit_ok);
  const auto rho = load_field((fs::path(c.output) / "density_0000.bin").string()).as_real();
  // density along the +x axis from the centre (j = 64 is y = 0)
  std::vector<double> ray;
  for (int i = 64; i < 128; ++i) ray.push_back(rho.at(i, 64, 0));
  const double peak = *std::max_element(ray.begin(), ray.end());
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < ray.size(); ++i)
    if (ray[i] > ray[i - 1] && ray[i] > ray[i + 1] && ray[i] > 1e-8 * peak) ++maxima;
  CHECK(maxima == 6);
  int sign_changes = 0;
  double prev = specfun::laguerre(5, 5, 1e-3);
  for (int i = 1; i <= 4000; ++i) {
    const double v = specfun::laguerre(5, 5, 0.01 * i);
    if (v * prev < 0) ++sign_changes;
    prev = v;
  }
  CHECK(sign_changes + 1 == 6);
}

TEST_CASE("identical configs give byte-identical artifacts") {
  auto c = config_file("dirac_field.json");
  std::string first;
  for (const char* name : {"det_a", "det_b"}) {
    c.output = scratch(name).string();
    std::ostringstream log;
    REQUIRE(run(c, log) == exit_ok);
  }
  for (const char* f : {"bispinor_0000.bin", "bispinor_0001.bin", "density_0001.bin"}) {
    CAPTURE(f);
    const auto a = slurp(fs::temp_directory_path() / "helix_cli_test_det_a" / f);
    CHECK(!a.empty());
    CHECK(a == slurp(fs::temp_directory_path() / "helix_cli_test_det_b" / f));
  }
}

TEST_CASE("executable exit codes") {
  const auto dir = scratch("exe");
  const std::string cfg = std::string(HELIX_CONFIG_DIR) + "/trajectory.json";
  CHECK(run_binary("--config " + cfg + " --out " + (dir / "ok").string()) == 0);
  CHECK(fs::exists(dir / "ok" / "trajectory.csv"));
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{\"scenario\": \"verify\", \"model\": {\"kind\": \"landau\"}, \"extra\": 1}";
  }
  CHECK(run_binary("--config " + (dir / "bad.json").string()) == 2);
  CHECK(run_binary("--config " + cfg + " --scenario nonsense") == 2);
  CHECK(run_binary("") == 2);
  {
    std::ofstream strict(dir / "strict.json");
    strict << "{\"scenario\": \"verify\", \"model\": {\"kind\": \"landau\"}, \"verify\": {\"checks\": "
              "[\"classical_rk4\"]}, \"tolerance_scale\": 1e-30}";
  }
  CHECK(run_binary("--config " + (dir / "strict.json").string() + " --out " + (dir / "strict").string()) == 1);
  const auto report = nlohmann::json::parse(slurp(dir / "strict" / "report.json"));
  CHECK(report["passed"] == false);
  CHECK(report["checks"][0]["name"] == "classical_rk4");
}
