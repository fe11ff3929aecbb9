#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qs/cli_io.hpp"

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string minimal_config() {
  return R"({
    "units": {"frequency": "rad/s", "density": "cm^-3", "dipole": "CGSE"},
    "pump": {"V0": 1e12, "delta": -5e12, "T": 1e-12},
    "probe": {"omega": 1.0005004e15},
    "medium": {"omega0": 1e15, "d12_sq": 2e-34, "rho": 1e15},
    "grid": {"tau_min": 2e-12, "tau_max": 4e-11, "n_tau": 50,
             "z": 0.02, "n_z_quadrature": 10}
  })";
}

// Small but physically structured run: a few repetition periods fit in the
// window, so train metrics are well defined.
qs::SimulationConfig quick_train_config() {
  double T = 1e-13, w0 = 1e15, D = -4e12, V0 = 2.5e12;
  double Om = std::sqrt(D * D + 4.0 * V0 * V0);
  std::ostringstream ss;
  ss << R"({"units": {"frequency": "rad/s", "density": "cm^-3", "dipole": "CGSE"},)"
     << R"("pump": {"V0": 2.5e12, "delta": -4e12, "T": 1e-13},)"
     << R"("probe": {"omega": )" << std::setprecision(17)
     << w0 + 0.5 * (D + Om) + 3e11 << R"(},)"
     << R"("medium": {"omega0": 1e15, "d12_sq": 2e-34, "rho": 1e15, "gamma": 1e8},)"
     << R"("grid": {"tau_min": 2e-12, "tau_max": 8e-12, "n_tau": 400,)"
     << R"("z": 0.02, "n_z_quadrature": 10}})";
  (void)T;
  return qs::parse_config(ss.str());
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("defaults are filled in") {
  qs::SimulationConfig cfg = qs::parse_config(minimal_config());
  CHECK(cfg.pump.eps0 == 1.0);
  CHECK(cfg.pump.omega_pump == cfg.medium.omega0 + cfg.pump.delta);
  CHECK(cfg.probe.eps_probe == 1.0);
  CHECK(cfg.probe.co_propagating);
  CHECK(cfg.medium.gamma == 0.0);
  CHECK(cfg.grid.resolve_t0(cfg.pump.T) == -20.0 * cfg.pump.T);
  CHECK(cfg.mode == qs::TermMode::resonant);
  CHECK(cfg.exponent_cap == qs::kDefaultExponentCap);
  CHECK_FALSE(cfg.doppler.present);
  CHECK(cfg.doppler_spec().n_nodes == 1);
  CHECK(cfg.doppler_spec().v_sigma == 0.0);
}

TEST_CASE("schema errors name the offending field") {
  std::string text = minimal_config();
  auto drop = [&](const std::string& needle, const std::string& repl) {
    std::string t = text;
    t.replace(t.find(needle), needle.size(), repl);
    return t;
  };
  try {
    qs::parse_config(drop("\"T\": 1e-12", "\"T_wrong\": 1e-12"));
    FAIL("expected ConfigError");
  } catch (const qs::ConfigError& e) {
    // Both the unknown key and the missing one are reportable; either names pump.
    CHECK(contains(e.what(), "pump.T"));
  }
  CHECK_THROWS_AS(qs::parse_config(drop("\"rho\": 1e15", "\"rho\": 1e15, \"x\": 1")),
                  qs::ConfigError);
  CHECK_THROWS_AS(qs::parse_config(drop("rad/s", "Hz")), qs::ConfigError);
  CHECK_THROWS_AS(qs::parse_config(drop("cm^-3", "m^-3")), qs::ConfigError);
  CHECK_THROWS_AS(qs::parse_config("not json at all"), qs::ConfigError);
  CHECK_THROWS_AS(qs::parse_config("[1,2,3]"), qs::ConfigError);
  CHECK_THROWS_AS(qs::parse_config(drop("\"n_tau\": 50", "\"n_tau\": 1")),
                  qs::ConfigError);
}

TEST_CASE("mode and doppler blocks") {
  std::string text = minimal_config();
  text.insert(text.rfind('}'),
              R"(, "mode": "full",
                 "doppler": {"temperature_K": 400, "atomic_mass_amu": 23,
                             "doppler_nodes": 8, "average": "field"})");
  qs::SimulationConfig cfg = qs::parse_config(text);
  CHECK(cfg.mode == qs::TermMode::full);
  CHECK(cfg.doppler.present);
  CHECK(cfg.doppler.doppler_nodes == 8);
  CHECK(cfg.doppler.average_field);
  CHECK(cfg.medium.mass == doctest::Approx(23.0 * qs::kAmuGrams));
  qs::DopplerSpec ds = cfg.doppler_spec();
  CHECK(ds.n_nodes == 8);
  CHECK(ds.v_sigma ==
        doctest::Approx(std::sqrt(qs::kBoltzmann * 400.0 / (23.0 * qs::kAmuGrams))));

  std::string bad = minimal_config();
  bad.insert(bad.rfind('}'), R"(, "doppler": {"temperature_K": 400})");
  CHECK_THROWS_AS(qs::parse_config(bad), qs::ConfigError);
  std::string badmode = minimal_config();
  badmode.insert(badmode.rfind('}'), R"(, "mode": "bogus")");
  CHECK_THROWS_AS(qs::parse_config(badmode), qs::ConfigError);
}

TEST_CASE("canonical form is a round-trip fixed point") {
  qs::SimulationConfig cfg = qs::parse_config(minimal_config());
  std::string canon = qs::canonical_json(cfg);
  qs::SimulationConfig cfg2 = qs::parse_config(canon);
  CHECK(qs::canonical_json(cfg2) == canon);
  // Defaults are materialized in the canonical form.
  CHECK(contains(canon, "\"t0\""));
  CHECK(contains(canon, "\"mode\""));
  CHECK(contains(canon, "\"exponent_cap\""));
}

TEST_CASE("shipped configs parse and round-trip") {
  for (const char* name : {"/baseline.json", "/train.json"}) {
    qs::SimulationConfig cfg = qs::load_config(std::string(QSCOMB_CONFIG_DIR) + name);
    std::string canon = qs::canonical_json(cfg);
    CHECK(qs::canonical_json(qs::parse_config(canon)) == canon);
  }
  CHECK_THROWS_AS(qs::load_config("/nonexistent/path.json"), qs::ConfigError);
}

TEST_CASE("fnv1a-64 known values") {
  CHECK(qs::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(qs::fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(qs::fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("simulate writes a consistent, deterministic bundle") {
  qs::SimulationConfig cfg = quick_train_config();
  std::filesystem::remove_all("cli_io_sim_a");
  std::filesystem::remove_all("cli_io_sim_b");
  qs::SimulateResult r1 = qs::run_simulate(cfg, "cli_io_sim_a", true);
  qs::SimulateResult r2 = qs::run_simulate(cfg, "cli_io_sim_b", true);
  CHECK(r1.has_metrics);
  CHECK(r1.metrics.n_peaks >= 3);
  for (const char* f : {"envelope.csv", "metrics.json", "plot.svg", "manifest.json"}) {
    std::string a = slurp(std::string("cli_io_sim_a/") + f);
    std::string b = slurp(std::string("cli_io_sim_b/") + f);
    CHECK(a == b);  // byte identical
    CHECK_FALSE(a.empty());
  }
  json manifest = json::parse(slurp("cli_io_sim_a/manifest.json"));
  CHECK(manifest["tool"] == "qscomb");
  CHECK(manifest["version"] == std::string(qs::tool_version()));
  for (const char* f : {"envelope.csv", "metrics.json", "plot.svg"}) {
    CHECK(manifest["checksums"][f] ==
          qs::fnv1a_hex(slurp(std::string("cli_io_sim_a/") + f)));
  }
  CHECK(manifest["timing"]["tau_samples"] == cfg.grid.n_tau);
  CHECK(manifest["timing"]["doppler_nodes"] == 1);
  json metrics = json::parse(slurp("cli_io_sim_a/metrics.json"));
  CHECK(metrics["n_peaks"] == r1.metrics.n_peaks);
  CHECK(metrics["saturated"] == false);
}

TEST_CASE("simulate records a metrics failure without dying") {
  qs::SimulationConfig cfg = qs::parse_config(minimal_config());
  cfg.medium.rho = 0.0;  // incident sigmoid only: no pulse train
  cfg.grid.n_tau = 20;
  std::filesystem::remove_all("cli_io_sim_flat");
  qs::SimulateResult r = qs::run_simulate(cfg, "cli_io_sim_flat", false);
  CHECK_FALSE(r.has_metrics);
  CHECK_FALSE(r.metrics_error.empty());
  json metrics = json::parse(slurp("cli_io_sim_flat/metrics.json"));
  CHECK(contains(metrics["error"].get<std::string>(), "peaks"));
  CHECK_FALSE(std::filesystem::exists("cli_io_sim_flat/plot.svg"));
}

TEST_CASE("sweep: single value reproduces simulate, failures become nan rows") {
  qs::SimulationConfig cfg = quick_train_config();
  std::filesystem::remove_all("cli_io_sweep");
  auto rows = qs::run_sweep(cfg, "medium.rho", {cfg.medium.rho, -1.0}, "cli_io_sweep");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ok);
  CHECK_FALSE(rows[1].ok);
  std::filesystem::remove_all("cli_io_sweep_ref");
  qs::SimulateResult ref = qs::run_simulate(cfg, "cli_io_sweep_ref", false);
  REQUIRE(ref.has_metrics);
  CHECK(rows[0].metrics.repetition_period == ref.metrics.repetition_period);
  CHECK(rows[0].metrics.contrast == ref.metrics.contrast);
  std::string csv = slurp("cli_io_sweep/sweep.csv");
  CHECK(contains(csv, "param_value,period_s,fwhm_s,contrast,mean_gain"));
  CHECK(contains(csv, "nan,nan,nan,nan"));
  json manifest = json::parse(slurp("cli_io_sweep/manifest.json"));
  CHECK(manifest["failures"].size() == 1);
  CHECK(manifest["checksums"]["sweep.csv"] == qs::fnv1a_hex(csv));
  CHECK_THROWS_AS(qs::run_sweep(cfg, "medium.bogus", {1.0}, "cli_io_sweep"),
                  qs::ConfigError);
  CHECK_THROWS_AS(qs::run_sweep(cfg, "medium.rho", {}, "cli_io_sweep"),
                  qs::ConfigError);
}

TEST_CASE("svg plot is deterministic and structured") {
  qs::SimulationConfig cfg = quick_train_config();
  cfg.grid.n_tau = 60;
  qs::EnvelopeField f = qs::intensity_profile(cfg.grid, cfg.pump, cfg.probe,
                                              cfg.medium, cfg.mode);
  std::string svg1 = qs::emit_plot_svg(f);
  std::string svg2 = qs::emit_plot_svg(f);
  CHECK(svg1 == svg2);
  CHECK(contains(svg1, "<svg"));
  CHECK(contains(svg1, "</svg>"));
  CHECK(contains(svg1, "polyline"));
  CHECK(contains(svg1, "incident"));
  qs::EnvelopeField empty;
  CHECK_THROWS_AS(qs::emit_plot_svg(empty), qs::ConfigError);
}

TEST_CASE("trace CSV writers") {
  qs::SimulationConfig cfg = qs::parse_config(minimal_config());
  std::filesystem::remove_all("cli_io_traces");
  std::filesystem::create_directories("cli_io_traces");
  qs::write_atom_trace_csv(cfg, -2e-12, 6e-12, 20, "cli_io_traces/atom.csv");
  std::string atom = slurp("cli_io_traces/atom.csv");
  CHECK(contains(atom, "t_s,re_f,im_f,re_g,im_g,norm_defect"));
  CHECK(std::count(atom.begin(), atom.end(), '\n') == 21);
  qs::write_response_trace_csv(cfg, 2e-12, 6e-12, 10, "cli_io_traces/resp.csv");
  std::string resp = slurp("cli_io_traces/resp.csv");
  CHECK(contains(resp, "re_sigma1"));
  CHECK(std::count(resp.begin(), resp.end(), '\n') == 11);
  CHECK_THROWS_AS(qs::write_atom_trace_csv(cfg, 0.0, 1.0, 1, "cli_io_traces/x.csv"),
                  qs::ConfigError);
  CHECK_THROWS_AS(
      qs::write_response_trace_csv(cfg, -1e-10, 1e-12, 5, "cli_io_traces/x.csv"),
      qs::ConfigError);
}

TEST_CASE("validation suite driver") {
  CHECK_THROWS_AS(qs::run_validate("bogus", ""), qs::ConfigError);
  std::filesystem::remove_all("cli_io_report.json");
  bool ok = qs::run_validate("atom", "cli_io_report.json");
  CHECK(ok);
  json report = json::parse(slurp("cli_io_report.json"));
  CHECK(report["suite"] == "atom");
  CHECK(report["pass"] == true);
  CHECK(report["checks"].size() >= 5);
  for (const auto& c : report["checks"]) {
    CHECK(c["pass"] == true);
  }
}
