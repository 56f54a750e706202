#pragma once

#include <optional>
#include <vector>

#include "bptrack/rng.hpp"
#include "bptrack/vec2.hpp"

namespace bptrack {

// World/sensor description used to synthesize measurement data. Defaults are
// the benchmark scene returned by benchmark_scenario().
struct ScenarioConfig {
  Vec2 tx_position;
  std::vector<Vec2> static_scatterers;
  std::vector<Vec2> target_waypoints;
  double target_speed = 0.0;  // meters per step
  std::vector<Vec2> rx_waypoints;
  double rx_speed = 0.0;
  int n_steps = 0;
  double sigma_d = 0.1;            // range noise used for generation
  double sigma_theta = 0.0;        // AOA noise used for generation
  double p_detect = 1.0;           // per-scatterer detection probability
  double mu_fa = 0.0;              // mean false-alarm count per step (Poisson)
  double fa_d_range[2] = {0.0, 50.0};
  double fa_theta_range[2] = {0.0, 0.0};
};

// The fixed evaluation scene: one walked rectangle-ish receiver loop, four
// static scatterers, one target on a zigzag, 200 steps.
ScenarioConfig benchmark_scenario();

struct GroundTruthFrame {
  int step = 0;  // 1-based
  Pose rx;
  Vec2 tx;
  std::vector<Vec2> scatterers;  // target first, then statics
};

struct DirectMeasurement {
  double theta = 0.0;  // AOA of the transmitter itself
};

struct ScatterMeasurement {
  double rel_distance = 0.0;  // may go slightly negative under noise
  double theta = 0.0;
};

struct MeasurementFrame {
  int step = 0;
  std::optional<DirectMeasurement> direct;
  std::vector<ScatterMeasurement> scatter;  // shuffled; order carries no information
};

// Poses along the polyline through `waypoints` at constant speed. Entry i is
// the pose after (i+1)*speed meters of travel. Orientation is the direction of
// the segment being traversed; exactly at a corner the outgoing segment wins,
// and past the end the final waypoint is held with the last direction.
// A single waypoint yields a constant pose with orientation (1, 0).
// Throws std::invalid_argument for an empty waypoint list or speed < 0.
std::vector<Pose> waypoint_path(const std::vector<Vec2>& waypoints, double speed,
                                int n_steps);

// True world state for steps 1..n_steps.
std::vector<GroundTruthFrame> make_ground_truth(const ScenarioConfig& cfg);

// One measurement frame: the direct AOA (always present), each scatterer
// detected with probability p_detect and measured with additive Gaussian
// noise, plus Poisson(mu_fa) uniform false alarms. Scatter order is shuffled.
MeasurementFrame synthesize_frame(const GroundTruthFrame& truth,
                                  const ScenarioConfig& cfg, RandomStream& rng);

std::vector<MeasurementFrame> synthesize_all(const std::vector<GroundTruthFrame>& truth,
                                             const ScenarioConfig& cfg,
                                             RandomStream& rng);

}  // namespace bptrack
