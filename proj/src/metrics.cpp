#include "bptrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bptrack {

double min_cost_assignment(const std::vector<std::vector<double>>& cost,
                           std::vector<int>* assignment) {
  const std::size_t rows = cost.size();
  if (rows == 0) {
    if (assignment) assignment->clear();
    return 0.0;
  }
  const std::size_t cols = cost[0].size();
  for (const auto& row : cost)
    if (row.size() != cols) throw std::invalid_argument("min_cost_assignment: ragged matrix");
  if (rows > cols) throw std::invalid_argument("min_cost_assignment: rows exceed columns");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Potentials u (rows) and v (columns); p[j] is the row matched to column j,
  // index 0 is the virtual unmatched slot.
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<std::size_t> p(cols + 1, 0), way(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(cols + 1, kInf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  if (assignment) assignment->assign(rows, -1);
  double total = 0.0;
  for (std::size_t j = 1; j <= cols; ++j) {
    if (p[j] == 0) continue;
    total += cost[p[j] - 1][j - 1];
    if (assignment) (*assignment)[p[j] - 1] = static_cast<int>(j - 1);
  }
  return total;
}

double ospa(const std::vector<Vec2>& a, const std::vector<Vec2>& b, const OspaParams& p) {
  if (!(p.order >= 1.0)) throw std::invalid_argument("ospa: order must be >= 1");
  if (!(p.cutoff > 0.0)) throw std::invalid_argument("ospa: cutoff must be > 0");
  const std::vector<Vec2>& small = a.size() <= b.size() ? a : b;
  const std::vector<Vec2>& big = a.size() <= b.size() ? b : a;
  const std::size_t m = small.size(), n = big.size();
  if (n == 0) return 0.0;
  double best = 0.0;
  if (m > 0) {
    std::vector<std::vector<double>> cost(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cost[i][j] = std::pow(std::min(distance(small[i], big[j]), p.cutoff), p.order);
    best = min_cost_assignment(cost);
  }
  const double total = best + std::pow(p.cutoff, p.order) * static_cast<double>(n - m);
  return std::pow(total / static_cast<double>(n), 1.0 / p.order);
}

std::optional<std::int64_t> identify_target(const std::vector<TrackSeries>& tracks,
                                            double min_path) {
  std::optional<std::int64_t> best_id;
  double best_len = min_path;
  for (const auto& track : tracks) {
    auto points = track.points;
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    double len = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i)
      len += distance(points[i - 1].second, points[i].second);
    if (len > best_len) {
      best_len = len;
      best_id = track.id;
    }
  }
  return best_id;
}

AggregateMetrics aggregate(const std::vector<RunMetrics>& runs, double undefined_fill) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  const std::size_t steps = runs[0].tx_error.size();
  for (const auto& r : runs) {
    if (r.tx_error.size() != steps || r.target_error.size() != steps ||
        r.ospa.size() != steps)
      throw std::invalid_argument("aggregate: runs have mismatched lengths");
  }
  auto mean_of = [&](auto&& select) {
    std::vector<double> out(steps, 0.0);
    for (std::size_t i = 0; i < steps; ++i) {
      double sum = 0.0;
      for (const auto& r : runs) {
        const double v = select(r)[i];
        sum += std::isnan(v) ? undefined_fill : v;
      }
      out[i] = sum / static_cast<double>(runs.size());
    }
    return out;
  };
  AggregateMetrics agg;
  agg.tx_error_mean = mean_of([](const RunMetrics& r) -> const std::vector<double>& { return r.tx_error; });
  agg.target_error_mean =
      mean_of([](const RunMetrics& r) -> const std::vector<double>& { return r.target_error; });
  agg.ospa_mean = mean_of([](const RunMetrics& r) -> const std::vector<double>& { return r.ospa; });
  return agg;
}

}  // namespace bptrack
