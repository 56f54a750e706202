#include "bptrack/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bptrack/geometry.hpp"

namespace bptrack {

ScenarioConfig benchmark_scenario() {
  ScenarioConfig cfg;
  cfg.tx_position = {0.0, 30.0};
  cfg.static_scatterers = {{40.0, 10.0}, {40.0, -10.0}, {-40.0, -10.0}, {-40.0, 10.0}};
  cfg.target_waypoints = {{-10.0, -10.0}, {10.0, -10.0}, {10.0, 0.0},
                          {-10.0, 0.0},   {-10.0, 10.0}, {10.0, 10.0}};
  cfg.target_speed = 0.4;
  cfg.rx_waypoints = {{0.0, -20.0}, {30.0, -20.0}, {30.0, 20.0},
                      {-30.0, 20.0}, {-30.0, -20.0}, {0.0, -20.0}};
  cfg.rx_speed = 1.0;
  cfg.n_steps = 200;
  cfg.sigma_d = 0.1;
  cfg.sigma_theta = std::numbers::pi / 180.0;
  cfg.p_detect = 0.95;
  cfg.mu_fa = 1.0;
  cfg.fa_d_range[0] = 0.0;
  cfg.fa_d_range[1] = 50.0;
  cfg.fa_theta_range[0] = 0.0;
  cfg.fa_theta_range[1] = std::numbers::pi;
  return cfg;
}

std::vector<Pose> waypoint_path(const std::vector<Vec2>& waypoints, double speed,
                                int n_steps) {
  if (waypoints.empty()) throw std::invalid_argument("waypoint_path: no waypoints");
  if (speed < 0.0) throw std::invalid_argument("waypoint_path: negative speed");

  struct Segment {
    Vec2 start;
    Vec2 dir;  // unit
    double begin = 0.0;
    double end = 0.0;  // cumulative arc length
  };
  std::vector<Segment> segments;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const Vec2 delta = waypoints[i + 1] - waypoints[i];
    const double len = delta.norm();
    if (len == 0.0) continue;  // repeated waypoint
    segments.push_back({waypoints[i], delta / len, total, total + len});
    total += len;
  }

  std::vector<Pose> path;
  path.reserve(static_cast<std::size_t>(std::max(n_steps, 0)));
  const Vec2 default_dir{1.0, 0.0};
  std::size_t seg = 0;
  for (int n = 1; n <= n_steps; ++n) {
    double arc = n * speed;
    // Snap to a corner when rounding puts the arc a hair before it; the
    // outgoing segment then supplies the orientation.
    if (seg < segments.size() && segments[seg].end - arc < 1e-9) arc = segments[seg].end;
    while (seg < segments.size() && arc >= segments[seg].end) ++seg;
    Pose pose;
    if (segments.empty()) {
      pose.position = waypoints.front();
      pose.orientation = default_dir;
    } else if (seg == segments.size()) {
      pose.position = segments.back().start +
                      (segments.back().end - segments.back().begin) * segments.back().dir;
      pose.orientation = segments.back().dir;
    } else {
      const Segment& s = segments[seg];
      pose.position = s.start + (arc - s.begin) * s.dir;
      pose.orientation = s.dir;
    }
    path.push_back(pose);
  }
  return path;
}

std::vector<GroundTruthFrame> make_ground_truth(const ScenarioConfig& cfg) {
  const auto rx_path = waypoint_path(cfg.rx_waypoints, cfg.rx_speed, cfg.n_steps);
  const auto target_path = waypoint_path(cfg.target_waypoints, cfg.target_speed, cfg.n_steps);

  std::vector<GroundTruthFrame> truth;
  truth.reserve(rx_path.size());
  for (int n = 1; n <= cfg.n_steps; ++n) {
    GroundTruthFrame f;
    f.step = n;
    f.rx = rx_path[static_cast<std::size_t>(n - 1)];
    f.tx = cfg.tx_position;
    f.scatterers.push_back(target_path[static_cast<std::size_t>(n - 1)].position);
    f.scatterers.insert(f.scatterers.end(), cfg.static_scatterers.begin(),
                        cfg.static_scatterers.end());
    truth.push_back(std::move(f));
  }
  return truth;
}

MeasurementFrame synthesize_frame(const GroundTruthFrame& truth,
                                  const ScenarioConfig& cfg, RandomStream& rng) {
  MeasurementFrame frame;
  frame.step = truth.step;

  frame.direct = DirectMeasurement{rng.normal(aoa(truth.tx, truth.rx), cfg.sigma_theta)};

  for (const Vec2& scat : truth.scatterers) {
    if (rng.uniform(0.0, 1.0) >= cfg.p_detect) continue;
    ScatterMeasurement z;
    z.rel_distance =
        rng.normal(relative_distance(truth.tx, scat, truth.rx.position), cfg.sigma_d);
    z.theta = rng.normal(aoa(scat, truth.rx), cfg.sigma_theta);
    frame.scatter.push_back(z);
  }

  const int n_fa = rng.poisson(cfg.mu_fa);
  for (int i = 0; i < n_fa; ++i) {
    ScatterMeasurement z;
    z.rel_distance = rng.uniform(cfg.fa_d_range[0], cfg.fa_d_range[1]);
    z.theta = rng.uniform(cfg.fa_theta_range[0], cfg.fa_theta_range[1]);
    frame.scatter.push_back(z);
  }

  std::shuffle(frame.scatter.begin(), frame.scatter.end(), rng.engine());
  return frame;
}

std::vector<MeasurementFrame> synthesize_all(const std::vector<GroundTruthFrame>& truth,
                                             const ScenarioConfig& cfg,
                                             RandomStream& rng) {
  std::vector<MeasurementFrame> frames;
  frames.reserve(truth.size());
  for (const auto& t : truth) frames.push_back(synthesize_frame(t, cfg, rng));
  return frames;
}

}  // namespace bptrack
