#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bptrack/vec2.hpp"

namespace bptrack {

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// Hungarian algorithm with potentials, O(rows^2 * cols). Returns the optimal
// total cost; if `assignment` is given, (*assignment)[i] is the column of
// row i. Throws std::invalid_argument on ragged input or rows > cols.
double min_cost_assignment(const std::vector<std::vector<double>>& cost,
                           std::vector<int>* assignment = nullptr);

struct OspaParams {
  double order = 1.0;   // p >= 1
  double cutoff = 10.0; // c > 0
};

// OSPA distance between two point sets: cutoff-clamped distances, optimal
// sub-assignment, cardinality mismatch charged at the cutoff. Symmetric,
// bounded by the cutoff, zero iff the multisets are equal.
double ospa(const std::vector<Vec2>& a, const std::vector<Vec2>& b, const OspaParams& p);

// One track's confirmed positions over its lifetime, step-ordered.
struct TrackSeries {
  std::int64_t id = 0;
  std::vector<std::pair<int, Vec2>> points;  // (step, position)
};

// The track that moved: id with the largest cumulative path length, provided
// it exceeds min_path meters. Ties resolve to the earliest listed track.
std::optional<std::int64_t> identify_target(const std::vector<TrackSeries>& tracks,
                                            double min_path = 5.0);

// Per-run metric series. Entries may be NaN where a value is undefined (e.g.
// no identified target track at that step); aggregation substitutes a fill
// value, conventionally the OSPA cutoff.
struct RunMetrics {
  std::vector<double> tx_error;
  std::vector<double> target_error;
  std::vector<double> ospa;
  std::optional<int> stage_transition_step;  // step whose update left bootstrap
};

struct AggregateMetrics {
  std::vector<double> tx_error_mean;
  std::vector<double> target_error_mean;
  std::vector<double> ospa_mean;
};

// Per-step means across runs; series must share lengths. NaN entries are
// replaced by `undefined_fill` before averaging. A single run aggregates to
// itself (with NaNs filled).
AggregateMetrics aggregate(const std::vector<RunMetrics>& runs, double undefined_fill);

}  // namespace bptrack
