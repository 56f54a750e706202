#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "bptrack/config.hpp"
#include "bptrack/rng.hpp"
#include "bptrack/runner.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string mode;
  int runs = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  int steps = -1;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags* flags, bool with_batch) {
  cmd->add_option("--config", flags->config_path, "Configuration file (key = value)");
  if (with_batch) {
    cmd->add_option("--mode", flags->mode,
                    "Tracker mode: full|simplified1|simplified2|tx-only");
    cmd->add_option("--runs", flags->runs, "Number of Monte Carlo runs");
    cmd->add_option("--threads", flags->threads,
                    "Worker threads (default: hardware concurrency)");
  }
  cmd->add_option("--seed", flags->seed, "Base RNG seed")
      ->each([flags](const std::string&) { flags->seed_set = true; });
  cmd->add_option("--out", flags->out_dir, "Output directory");
  cmd->add_option("--steps", flags->steps, "Override the number of simulated steps");
}

bptrack::RunConfig load_config(const CommonFlags& flags) {
  bptrack::RunConfig cfg = flags.config_path.empty()
                               ? bptrack::default_run_config()
                               : bptrack::parse_config_file(flags.config_path);
  if (!flags.mode.empty()) cfg.mode = bptrack::parse_mode(flags.mode);
  if (flags.runs >= 0) cfg.runs = flags.runs;
  if (flags.seed_set) cfg.seed = flags.seed;
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (flags.steps >= 0) cfg.scenario.n_steps = flags.steps;
  if (cfg.runs < 1) throw bptrack::ConfigError("runs must be >= 1");
  if (cfg.scenario.n_steps < 1) throw bptrack::ConfigError("steps must be >= 1");
  return cfg;
}

int run_command(const CommonFlags& flags) {
  const bptrack::RunConfig cfg = load_config(flags);
  int threads = flags.threads;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  const bptrack::BatchResult batch = bptrack::run_batch(cfg, threads);
  bptrack::write_outputs(cfg, batch);
  std::cout << "wrote " << cfg.out_dir << " (" << cfg.runs << " run"
            << (cfg.runs == 1 ? "" : "s") << ", mode " << bptrack::mode_name(cfg.mode)
            << ", mean stage transition " << bptrack::format_double(batch.mean_transition_step)
            << ")\n";
  return 0;
}

int scenario_command(const CommonFlags& flags) {
  const bptrack::RunConfig cfg = load_config(flags);
  const std::string text = bptrack::format_config(cfg);
  if (flags.out_dir.empty()) {
    std::cout << text;
    return 0;
  }
  namespace fs = std::filesystem;
  fs::create_directories(flags.out_dir);
  const fs::path path = fs::path(flags.out_dir) / "scenario.conf";
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int synth_command(const CommonFlags& flags) {
  const bptrack::RunConfig cfg = load_config(flags);
  const auto truth = bptrack::make_ground_truth(cfg.scenario);
  bptrack::RandomStream rng = bptrack::make_run_stream(cfg.seed, 0, 0);

  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const fs::path path = fs::path(cfg.out_dir) / "frames.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "step,kind,rel_distance_m,aoa_rad\n";
  for (const auto& t : truth) {
    const auto frame = bptrack::synthesize_frame(t, cfg.scenario, rng);
    if (frame.direct)
      out << frame.step << ",direct,," << bptrack::format_double(frame.direct->theta)
          << "\n";
    for (const auto& z : frame.scatter)
      out << frame.step << ",scatter," << bptrack::format_double(z.rel_distance) << ","
          << bptrack::format_double(z.theta) << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Passive radio tracking: scenario synthesis and Monte Carlo batches"};
  app.require_subcommand(1);

  CommonFlags run_flags, scenario_flags, synth_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a Monte Carlo batch and write metric CSVs");
  add_common(run_cmd, &run_flags, true);
  CLI::App* scenario_cmd =
      app.add_subcommand("scenario", "Print the effective configuration");
  add_common(scenario_cmd, &scenario_flags, true);
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Write raw synthesized measurement frames as CSV");
  add_common(synth_cmd, &synth_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return run_command(run_flags);
    if (scenario_cmd->parsed()) return scenario_command(scenario_flags);
    if (synth_cmd->parsed()) return synth_command(synth_flags);
    return 2;
  } catch (const bptrack::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
