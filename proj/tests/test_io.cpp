#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dephasure/config.hpp"
#include "dephasure/constants.hpp"
#include "dephasure/runner.hpp"

using namespace dephasure;
using namespace dephasure::io;

namespace {

namespace fs = std::filesystem;

const char kMinimalGeneric[] = R"(
[run]
mode = generic_bath
evaluation = closed_form

[time_grid]
t_min = 0.01 s
t_max = 1e4 s
points = 20
spacing = log

[fock]
pairs = 0:1, 0:2

[bath]
s = 1
coupling_c = 1.0
omega_1 = 1e-3
omega_u = 1.0
cutoff = exponential

[cavity]
omega_cavity = 1.0

[thermal]
beta_hbar = 10 s
)";

std::string preset_path(const std::string& name) {
  return std::string(DEPHASURE_PRESET_DIR) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("dephasure_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal generic config parses and echoes its values") {
  const RunConfig cfg = parse_config(kMinimalGeneric);
  CHECK(cfg.mode == RunMode::GenericBath);
  CHECK(cfg.evaluation == Evaluation::ClosedForm);
  CHECK(cfg.generic.model.s == 1);
  CHECK(cfg.generic.model.coupling_c == 1.0);
  CHECK(cfg.generic.model.omega_1 == 1e-3);
  CHECK(cfg.generic.model.omega_u == 1.0);
  CHECK(cfg.generic.beta_hbar == 10.0);
  CHECK(cfg.fock_pairs.size() == 2);
  CHECK(cfg.fock_pairs[1].n_prime == 2);
  CHECK(cfg.resolved_dim() == 3);
  CHECK(cfg.time_grid.times().size() == 20);
}

TEST_CASE("unit suffixes normalize to SI") {
  std::string text(kMinimalGeneric);
  text.replace(text.find("beta_hbar = 10 s"), 16, "temperature = 50 mK");
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.generic.temperature == doctest::Approx(0.05).epsilon(1e-15));

  // angular-frequency fields accept cyclic-frequency units
  std::string text2(kMinimalGeneric);
  text2.replace(text2.find("omega_cavity = 1.0"), 18, "omega_cavity = 5 GHz");
  const RunConfig cfg2 = parse_config(text2);
  CHECK(cfg2.generic.omega_cavity ==
        doctest::Approx(2.0 * constants::pi * 5e9).epsilon(1e-15));
}

TEST_CASE("config errors carry diagnostics") {
  SUBCASE("unknown keys are hard errors") {
    std::string text(kMinimalGeneric);
    text += "\n[bath]\n";  // duplicate section is fine, unknown key is not
    CHECK_THROWS_AS(parse_config(std::string(kMinimalGeneric) +
                                 "\n[extra]\nfoo = 1\n"),
                    ConfigError);
    try {
      parse_config(std::string(kMinimalGeneric) + "\n[extra]\nfoo = 1\n");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("extra.foo") != std::string::npos);
    }
  }
  SUBCASE("invariant violations name the offending key") {
    std::string text = slurp(preset_path("strip_sec3.cfg"));
    const auto pos = text.find("length_l = 10 cm");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 16, "length_l = -1 cm");
    try {
      parse_config(text);
      FAIL("expected ConfigError/invalid_argument");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("length_l") != std::string::npos);
    }
  }
  SUBCASE("unknown unit") {
    std::string text(kMinimalGeneric);
    text.replace(text.find("t_min = 0.01 s"), 14, "t_min = 0.01 xyz");
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
  SUBCASE("missing required key") {
    std::string text(kMinimalGeneric);
    text.replace(text.find("omega_u = 1.0"), 13, "# omega_u gone");
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
  SUBCASE("both thermal keys set") {
    std::string text(kMinimalGeneric);
    text += "\n[thermal]\ntemperature = 1 K\n";
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
  SUBCASE("pair outside a pinned dim") {
    std::string text(kMinimalGeneric);
    text.replace(text.find("pairs = 0:1, 0:2"), 16, "pairs = 0:9\ndim = 4");
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
}

TEST_CASE("shipped presets round-trip through the canonical form") {
  for (const char* name :
       {"strip_sec3.cfg", "membrane_sec4.cfg", "generic_ohmic.cfg"}) {
    const RunConfig cfg = parse_config_file(preset_path(name));
    const std::string canon = emit_config(cfg);
    const RunConfig cfg2 = parse_config(canon);
    CHECK(emit_config(cfg2) == canon);
  }
}

TEST_CASE("time grids") {
  TimeGrid g{1e-3, 1.0, 4, GridSpacing::Log};
  const auto t = g.times();
  CHECK(t.size() == 4);
  CHECK(t.front() == doctest::Approx(1e-3));
  CHECK(t.back() == doctest::Approx(1.0));
  CHECK(t[1] / t[0] == doctest::Approx(t[2] / t[1]).epsilon(1e-12));
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);

  TimeGrid lin{0.0, 3.0, 4, GridSpacing::Linear};
  CHECK(lin.times()[1] == doctest::Approx(1.0));

  TimeGrid bad{1.0, 1.0, 4, GridSpacing::Log};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  TimeGrid one{0.0, 1.0, 1, GridSpacing::Linear};
  CHECK_THROWS_AS(one.validate(), ConfigError);
}

TEST_CASE("evolve emits the pinned CSV schema, deterministically") {
  const RunConfig cfg = parse_config(kMinimalGeneric);
  const auto dir1 = temp_dir("evolve1");
  const auto dir2 = temp_dir("evolve2");
  std::ostringstream sink;
  CHECK(run_subcommand(cfg, "evolve", {dir1.string(), false}, sink, sink) == 0);
  CHECK(run_subcommand(cfg, "evolve", {dir2.string(), false}, sink, sink) == 0);

  const std::string csv1 = slurp(dir1 / "evolve.csv");
  const std::string csv2 = slurp(dir2 / "evolve.csv");
  CHECK(csv1 == csv2);  // byte identical

  std::istringstream lines(csv1);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "t_s,omega_u_t,n,n_prime,free_phase_rad,kerr_phase_rad,osc_phase_rad,"
        "dephase,coherence_magnitude");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    // dephase column (8th) must be <= 0
    std::istringstream cells(line);
    std::string cell;
    for (int i = 0; i < 8; ++i) std::getline(cells, cell, ',');
    CHECK(std::stod(cell) <= 0.0);
  }
  CHECK(rows == 20 * 2);  // 20 times x 2 pairs
  CHECK(fs::exists(dir1 / "summary.kv"));
}

TEST_CASE("evolve on the strip preset (discrete brute force)") {
  RunConfig cfg = parse_config_file(preset_path("strip_sec3.cfg"));
  cfg.time_grid.points = 12;  // keep the unit test light
  const auto dir = temp_dir("strip_evolve");
  std::ostringstream sink;
  CHECK(run_subcommand(cfg, "evolve", {dir.string(), true}, sink, sink) == 0);
  const std::string csv = slurp(dir / "evolve.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);  // header + 12 rows
}

TEST_CASE("report on the strip preset reproduces the headline numbers") {
  const RunConfig cfg = parse_config_file(preset_path("strip_sec3.cfg"));
  const auto dir = temp_dir("strip_report");
  std::ostringstream out;
  CHECK(run_subcommand(cfg, "report", {dir.string(), false}, out, out) == 0);
  const std::string text = slurp(dir / "report.txt");
  CHECK(text.find("rephasing_time_s = 0.00063245") != std::string::npos);
  CHECK(text.find("validity_ok = true") != std::string::npos);
  CHECK(text.find("dephase_coeff_refined_per_us2 = 21.5") != std::string::npos);
}

TEST_CASE("violated validity condition exits with code 4 when enforced") {
  RunConfig cfg = parse_config_file(preset_path("strip_sec3.cfg"));
  // a strip far beyond the 16 beta d^2 F length bound
  cfg = with_override(cfg, "strip.length_l", 5e6);
  std::ostringstream sink;
  CHECK(run_subcommand(cfg, "report", {temp_dir("v4").string(), true}, sink,
                       sink) == 4);
  // without enforcement the run proceeds and just reports ok = false
  std::ostringstream out;
  CHECK(run_subcommand(cfg, "report", {temp_dir("v4b").string(), false}, out,
                       out) == 0);
  CHECK(out.str().find("validity_ok = false") != std::string::npos);
}

TEST_CASE("report requires a device mode") {
  const RunConfig cfg = parse_config(kMinimalGeneric);
  std::ostringstream sink;
  CHECK_THROWS_AS(run_subcommand(cfg, "report", {".", false}, sink, sink),
                  ConfigError);
}

TEST_CASE("sweep writes one row per value") {
  std::string text(kMinimalGeneric);
  text += "\n[sweep]\nparameter = bath.omega_1\nvalues = 1e-3, 2e-3, 4e-3\n";
  const RunConfig cfg = parse_config(text);
  const auto dir = temp_dir("sweep");
  std::ostringstream sink;
  CHECK(run_subcommand(cfg, "sweep", {dir.string(), false}, sink, sink) == 0);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
  CHECK(csv.find("value,omega_u_rad_s,omega_1_rad_s") == 0);
}

TEST_CASE("sweep across strip lengths tracks the derived scalings") {
  std::string text = slurp(preset_path("strip_sec3.cfg"));
  text += "\n[sweep]\nparameter = strip.length_l\nvalues = 10 cm, 20 cm\n";
  const RunConfig cfg = parse_config(text);
  const auto dir = temp_dir("strip_sweep");
  std::ostringstream sink;
  CHECK(run_subcommand(cfg, "sweep", {dir.string(), false}, sink, sink) == 0);
  std::istringstream csv(slurp(dir / "sweep.csv"));
  std::string header, row1, row2;
  std::getline(csv, header);
  std::getline(csv, row1);
  std::getline(csv, row2);
  auto cell = [](const std::string& line, int idx) {
    std::istringstream ss(line);
    std::string c;
    for (int i = 0; i <= idx; ++i) std::getline(ss, c, ',');
    return std::stod(c);
  };
  // omega_1 halves with doubled length; omega_u and C stay put
  CHECK(cell(row2, 2) == doctest::Approx(0.5 * cell(row1, 2)).epsilon(1e-12));
  CHECK(cell(row2, 1) == doctest::Approx(cell(row1, 1)).epsilon(1e-12));
  CHECK(cell(row2, 3) == doctest::Approx(cell(row1, 3)).epsilon(1e-12));
  // rephasing time doubles
  CHECK(cell(row2, 10) == doctest::Approx(2.0 * cell(row1, 10)).epsilon(1e-12));
}

TEST_CASE("sweep override rescales derived quantities") {
  RunConfig cfg = parse_config_file(preset_path("strip_sec3.cfg"));
  const RunConfig doubled = with_override(cfg, "strip.length_l", 0.2);
  CHECK(doubled.spectral_model().omega_1 ==
        doctest::Approx(0.5 * cfg.spectral_model().omega_1).epsilon(1e-14));
  CHECK_THROWS_AS(with_override(cfg, "strip.nonsense", 1.0), ConfigError);
}

TEST_CASE("format_sci12 emits 12 significant digits") {
  CHECK(format_sci12(1.0) == "1.00000000000e+00");
  CHECK(format_sci12(-6.324555320337e-04) == "-6.32455532034e-04");
}

TEST_CASE("unknown subcommand is a config error") {
  const RunConfig cfg = parse_config(kMinimalGeneric);
  std::ostringstream sink;
  CHECK_THROWS_AS(run_subcommand(cfg, "frobnicate", {".", false}, sink, sink),
                  ConfigError);
}
