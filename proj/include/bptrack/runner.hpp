#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bptrack/config.hpp"
#include "bptrack/metrics.hpp"

namespace bptrack {

// One confirmed-track observation, as written to tracks_run<k>.csv.
struct TrackRow {
  int step = 0;
  std::int64_t track_id = 0;
  Vec2 position;
  double existence = 0.0;
  double spread = 0.0;
};

struct RunRecord {
  RunMetrics metrics;
  std::vector<TrackRow> track_rows;
};

struct BatchResult {
  std::vector<RunRecord> runs;
  AggregateMetrics agg;
  double mean_transition_step = 0.0;  // runs that never transition count as n_steps + 1
};

// One complete simulated run: synthesize the scenario with the run's own RNG
// streams, track every frame, and reduce to metric series. Run `run_index`
// of a batch is identical no matter which batch it is part of.
RunRecord run_single(const RunConfig& cfg, std::uint32_t run_index);

// All runs, dispatched over `threads` workers (clamped to the run count;
// values < 1 mean one worker). Aggregation order is fixed by run index.
BatchResult run_batch(const RunConfig& cfg, int threads = 1);

// Write tx_mle.csv, and for scatterer-tracking modes also target_mle.csv,
// mospa.csv and one tracks_run<k>.csv per run, plus summary.csv, into
// cfg.out_dir (created if needed). UTF-8, LF line endings, '.' decimal
// separator. Throws std::runtime_error on I/O failure.
void write_outputs(const RunConfig& cfg, const BatchResult& batch);

}  // namespace bptrack
