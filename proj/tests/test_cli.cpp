#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bptrack/config.hpp"
#include "bptrack/runner.hpp"

using namespace bptrack;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) : path(fs::temp_directory_path() / tag) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// Small but complete batch configuration, cheap enough for a unit test.
RunConfig small_config() {
  RunConfig cfg = default_run_config();
  cfg.scenario.n_steps = 50;
  cfg.tracker.particle_count = 200;
  cfg.runs = 2;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("config text round trip is exact") {
  RunConfig cfg = default_run_config();
  cfg.mode = TrackerMode::Simplified2;
  cfg.runs = 13;
  cfg.seed = 424242;
  cfg.scenario.sigma_d = 0.05;
  cfg.scenario.target_waypoints = {{1.5, -2.25}, {0.1, 0.2}};
  cfg.tracker.stack_partners = 17;
  cfg.tracker.model.sigma_theta = 0.031;
  cfg.track_spread_gate = 2.75;
  const std::string text = format_config(cfg);
  const RunConfig back = parse_config_text(text);
  CHECK(format_config(back) == text);
  CHECK(back.mode == TrackerMode::Simplified2);
  CHECK(back.runs == 13);
  CHECK(back.seed == 424242);
  CHECK(back.scenario.target_waypoints.size() == 2);
  CHECK(back.scenario.target_waypoints[1].y == 0.2);
  CHECK(back.tracker.stack_partners == 17);
}

TEST_CASE("config parser accepts comments and rejects junk") {
  const RunConfig cfg = parse_config_text(
      "# comment line\n"
      "\n"
      "runs = 5\n"
      "mode = simplified1   # trailing comment\n"
      "rx_waypoints = 0,0 ; 10,0\n");
  CHECK(cfg.runs == 5);
  CHECK(cfg.mode == TrackerMode::Simplified1);
  REQUIRE(cfg.scenario.rx_waypoints.size() == 2);
  CHECK(cfg.scenario.rx_waypoints[1].x == 10.0);
  // Unmentioned keys keep their defaults.
  CHECK(cfg.seed == default_run_config().seed);

  CHECK_THROWS_AS(parse_config_text("no_such_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("runs = banana\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("runs\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("target_waypoints = 1;2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("mode = warp\n"), ConfigError);
}

TEST_CASE("mode names round trip") {
  for (TrackerMode m : {TrackerMode::Full, TrackerMode::Simplified1,
                        TrackerMode::Simplified2, TrackerMode::TxOnly})
    CHECK(parse_mode(mode_name(m)) == m);
  CHECK_THROWS_AS(parse_mode("none"), ConfigError);
}

TEST_CASE("doubles are written shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(200.0) == "200");
  CHECK(format_double(1e-4) == "1e-04");  // scientific once it is shorter
  const double pi_ish = 0.034906585039886591;
  CHECK(std::stod(format_double(pi_ish)) == pi_ish);
}

TEST_CASE("batch outputs are identical across thread counts") {
  RunConfig cfg = small_config();
  TempDir a("bptrack_cli_a"), b("bptrack_cli_b");

  cfg.out_dir = a.path.string();
  write_outputs(cfg, run_batch(cfg, 1));
  cfg.out_dir = b.path.string();
  write_outputs(cfg, run_batch(cfg, 4));

  const char* names[] = {"tx_mle.csv", "target_mle.csv", "mospa.csv",
                         "tracks_run0.csv", "tracks_run1.csv", "summary.csv"};
  for (const char* name : names) {
    CAPTURE(name);
    CHECK(slurp(a.path / name) == slurp(b.path / name));
  }
}

TEST_CASE("csv shapes and headers") {
  RunConfig cfg = small_config();
  cfg.runs = 1;
  TempDir dir("bptrack_cli_csv");
  cfg.out_dir = dir.path.string();
  write_outputs(cfg, run_batch(cfg, 1));

  const std::string tx = slurp(dir.path / "tx_mle.csv");
  CHECK(tx.rfind("step,mean_error_m\n", 0) == 0);
  // Header plus one row per step, LF endings only.
  CHECK(std::count(tx.begin(), tx.end(), '\n') == cfg.scenario.n_steps + 1);
  CHECK(tx.find('\r') == std::string::npos);
  CHECK(slurp(dir.path / "mospa.csv").rfind("step,mean_ospa_m\n", 0) == 0);
  CHECK(slurp(dir.path / "tracks_run0.csv")
            .rfind("step,track_id,x,y,existence_prob\n", 0) == 0);
  const std::string summary = slurp(dir.path / "summary.csv");
  CHECK(summary.rfind("mode,runs,seed,stage_transition_mean\n", 0) == 0);
  CHECK(summary.find("full,1,7,") != std::string::npos);
}

TEST_CASE("tx-only batches skip the scatterer outputs") {
  RunConfig cfg = small_config();
  cfg.runs = 1;
  cfg.mode = TrackerMode::TxOnly;
  TempDir dir("bptrack_cli_txonly");
  cfg.out_dir = dir.path.string();
  write_outputs(cfg, run_batch(cfg, 1));
  CHECK(fs::exists(dir.path / "tx_mle.csv"));
  CHECK(fs::exists(dir.path / "summary.csv"));
  CHECK_FALSE(fs::exists(dir.path / "mospa.csv"));
  CHECK_FALSE(fs::exists(dir.path / "target_mle.csv"));
  CHECK_FALSE(fs::exists(dir.path / "tracks_run0.csv"));
}

TEST_CASE("runs are independent of batch composition") {
  RunConfig cfg = small_config();
  // Run 1 computed alone equals run 1 computed inside a 2-run batch.
  const RunRecord alone = run_single(cfg, 1);
  const BatchResult batch = run_batch(cfg, 1);
  REQUIRE(batch.runs.size() == 2);
  const RunRecord& inside = batch.runs[1];
  REQUIRE(alone.metrics.tx_error.size() == inside.metrics.tx_error.size());
  for (std::size_t i = 0; i < alone.metrics.tx_error.size(); ++i) {
    const double x = alone.metrics.tx_error[i], y = inside.metrics.tx_error[i];
    CHECK(((std::isnan(x) && std::isnan(y)) || x == y));
  }
  REQUIRE(alone.track_rows.size() == inside.track_rows.size());
  for (std::size_t i = 0; i < alone.track_rows.size(); ++i) {
    CHECK(alone.track_rows[i].position.x == inside.track_rows[i].position.x);
    CHECK(alone.track_rows[i].track_id == inside.track_rows[i].track_id);
  }
}
