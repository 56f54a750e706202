#include "bptrack/runner.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "bptrack/rng.hpp"

namespace bptrack {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<TrackSeries> group_tracks(const std::vector<TrackRow>& rows) {
  std::map<std::int64_t, TrackSeries> by_id;
  for (const auto& row : rows) {
    auto& series = by_id[row.track_id];
    series.id = row.track_id;
    series.points.emplace_back(row.step, row.position);
  }
  std::vector<TrackSeries> out;
  out.reserve(by_id.size());
  for (auto& [id, series] : by_id) out.push_back(std::move(series));
  return out;
}

}  // namespace

RunRecord run_single(const RunConfig& cfg, std::uint32_t run_index) {
  RandomStream scenario_rng = make_run_stream(cfg.seed, run_index, 0);
  RandomStream tracker_rng = make_run_stream(cfg.seed, run_index, 1);

  const auto truth = make_ground_truth(cfg.scenario);
  const auto frames = synthesize_all(truth, cfg.scenario, scenario_rng);

  Tracker tracker(cfg.tracker, cfg.mode, std::move(tracker_rng));

  RunRecord rec;
  const std::size_t n = truth.size();
  rec.metrics.tx_error.assign(n, kNaN);
  rec.metrics.target_error.assign(n, kNaN);
  rec.metrics.ospa.assign(n, kNaN);

  for (std::size_t i = 0; i < n; ++i) {
    tracker.step(frames[i], truth[i].rx);
    const StepEstimate est = tracker.estimate();

    if (est.tx) rec.metrics.tx_error[i] = distance(*est.tx, truth[i].tx);

    std::vector<Vec2> est_positions;
    est_positions.reserve(est.tracks.size());
    for (const auto& track : est.tracks) {
      est_positions.push_back(track.position);
      rec.track_rows.push_back(
          {truth[i].step, track.id, track.position, track.existence, track.spread});
    }
    rec.metrics.ospa[i] = ospa(est_positions, truth[i].scatterers, cfg.ospa);
  }
  rec.metrics.stage_transition_step = tracker.state().stage_transition_step;

  // The moving track is identified once the whole run is known. Only committed
  // estimates enter the identification series and the target error: while a
  // belief is still side-ambiguous its mean sits between the modes and sweeps
  // tens of meters, which would swamp the path-length statistic.
  std::vector<TrackRow> committed;
  committed.reserve(rec.track_rows.size());
  for (const auto& row : rec.track_rows)
    if (row.spread <= cfg.track_spread_gate) committed.push_back(row);
  const auto series = group_tracks(committed);
  if (const auto target_id = identify_target(series)) {
    for (const auto& row : committed) {
      if (row.track_id != *target_id) continue;
      const std::size_t i = static_cast<std::size_t>(row.step - 1);
      if (i < n) rec.metrics.target_error[i] = distance(row.position, truth[i].scatterers[0]);
    }
  }
  return rec;
}

BatchResult run_batch(const RunConfig& cfg, int threads) {
  if (cfg.runs < 1) throw ConfigError("run_batch: runs must be >= 1");
  BatchResult batch;
  batch.runs.resize(static_cast<std::size_t>(cfg.runs));

  const int workers = std::max(1, std::min(threads, cfg.runs));
  std::atomic<std::uint32_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    for (;;) {
      const std::uint32_t k = next.fetch_add(1);
      if (k >= static_cast<std::uint32_t>(cfg.runs)) return;
      try {
        batch.runs[k] = run_single(cfg, k);
      } catch (...) {
        std::scoped_lock lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RunMetrics> metrics;
  metrics.reserve(batch.runs.size());
  for (const auto& rec : batch.runs) metrics.push_back(rec.metrics);
  batch.agg = aggregate(metrics, cfg.ospa.cutoff);

  double sum = 0.0;
  for (const auto& rec : batch.runs)
    sum += rec.metrics.stage_transition_step.value_or(cfg.scenario.n_steps + 1);
  batch.mean_transition_step = sum / static_cast<double>(batch.runs.size());
  return batch;
}

namespace {

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& header)
      : path_(path.string()), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path_);
    out_ << header << "\n";
  }

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, write(fields)), ...);
    out_ << "\n";
  }

  ~CsvFile() { out_.flush(); }

  void close() {
    out_.flush();
    if (!out_) throw std::runtime_error("write failed for " + path_);
    out_.close();
  }

 private:
  void write(double v) { out_ << format_double(v); }
  void write(int v) { out_ << v; }
  void write(std::int64_t v) { out_ << v; }
  void write(std::uint64_t v) { out_ << v; }
  void write(const std::string& v) { out_ << v; }

  std::string path_;
  std::ofstream out_;
};

}  // namespace

void write_outputs(const RunConfig& cfg, const BatchResult& batch) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);

  {
    CsvFile f(dir / "tx_mle.csv", "step,mean_error_m");
    for (std::size_t i = 0; i < batch.agg.tx_error_mean.size(); ++i)
      f.row(static_cast<int>(i + 1), batch.agg.tx_error_mean[i]);
    f.close();
  }

  if (cfg.mode != TrackerMode::TxOnly) {
    {
      CsvFile f(dir / "target_mle.csv", "step,mean_error_m");
      for (std::size_t i = 0; i < batch.agg.target_error_mean.size(); ++i)
        f.row(static_cast<int>(i + 1), batch.agg.target_error_mean[i]);
      f.close();
    }
    {
      CsvFile f(dir / "mospa.csv", "step,mean_ospa_m");
      for (std::size_t i = 0; i < batch.agg.ospa_mean.size(); ++i)
        f.row(static_cast<int>(i + 1), batch.agg.ospa_mean[i]);
      f.close();
    }
    for (std::size_t k = 0; k < batch.runs.size(); ++k) {
      CsvFile f(dir / ("tracks_run" + std::to_string(k) + ".csv"),
                "step,track_id,x,y,existence_prob");
      for (const auto& row : batch.runs[k].track_rows)
        f.row(row.step, row.track_id, row.position.x, row.position.y, row.existence);
      f.close();
    }
  }

  {
    CsvFile f(dir / "summary.csv", "mode,runs,seed,stage_transition_mean");
    f.row(mode_name(cfg.mode), static_cast<int>(batch.runs.size()), cfg.seed,
          batch.mean_transition_step);
    f.close();
  }
}

}  // namespace bptrack
