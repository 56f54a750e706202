#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bptrack/association.hpp"
#include "bptrack/factors.hpp"
#include "bptrack/rng.hpp"
#include "bptrack/scenario.hpp"

namespace bptrack {

struct WeightedParticleSet {
  std::vector<Vec2> positions;
  std::vector<double> weights;  // non-negative; the sum is the represented mass

  double total_weight() const;
  Vec2 mean() const;  // weighted; requires positive total mass
};

// A tracked object hypothesis. Particle weights sum to 1 - nonexist_prob, so
// the pair carries both the position belief and the existence belief.
struct PotentialScatterer {
  WeightedParticleSet particles;
  double nonexist_prob = 0.0;
  std::int64_t id = 0;
  int birth_step = 0;
};

enum class TrackerMode {
  Full,         // transmitter belief refined by all scatter paths
  Simplified1,  // transmitter frozen at its first converged estimate
  Simplified2,  // transmitter follows the direct path only
  TxOnly,       // direct-path filter forever; no scatterer tracking
};

enum class TrackerStage { Bootstrap, Tracking };

struct TrackerConfig {
  int particle_count = 1000;  // even; birth sides alternate per particle
  double p_exist = 0.5;       // confirmation threshold on 1 - nonexist_prob
  double p_prune = 1e-3;      // pruning threshold on 1 - nonexist_prob
  double assoc_tol = 1e-5;
  int assoc_max_iter = 1000;
  double lambda_undetected_init = 5.0;
  double lambda_birth = 1e-4;
  double tx_range_max = 150.0;        // initial transmitter range prior: U(0, max)
  double bootstrap_std_threshold = 5.0;
  int stack_partners = 64;  // cross-cloud samples averaged per detection factor
  ModelParams model;
};

// Tracker parameters matched to benchmark_scenario().
TrackerConfig benchmark_tracker_config();

struct TrackEstimate {
  std::int64_t id = 0;
  Vec2 position;
  double existence = 0.0;
  double spread = 0.0;  // positional std of the belief; large while ambiguous
};

struct StepEstimate {
  std::optional<Vec2> tx;
  std::vector<TrackEstimate> tracks;  // confirmed objects only
};

struct TrackerState {
  TrackerStage stage = TrackerStage::Bootstrap;
  int step = 0;  // step index of the last processed frame
  bool tx_initialized = false;
  WeightedParticleSet tx_particles;
  std::vector<PotentialScatterer> scatterers;
  double lambda_undetected = 0.0;
  std::optional<int> stage_transition_step;
  std::int64_t next_track_id = 1;
};

// ---- building blocks (exposed for tests and bindings) ----

// Systematic resampling: `count` draws proportional to the input weights, one
// stratified threshold per draw, equal output weights summing to target_mass.
// With equal input weights and count == size the multiset is returned
// unchanged for every stratum offset. Throws std::invalid_argument when the
// input mass is zero or not finite.
WeightedParticleSet resample_systematic(const WeightedParticleSet& in, int count,
                                        double target_mass, RandomStream& rng);

// Square root of the trace of the weighted position covariance (centered).
// Infinity for zero total mass.
double spread_std(const WeightedParticleSet& particles);

// Initial transmitter cloud from the first direct AOA: range uniform on
// (0, tx_range_max], AOA perturbed with the model sigma, sides alternating so
// both mirror hypotheses get half the particles. Equal weights.
WeightedParticleSet init_tx_particles(const DirectMeasurement& z, const Pose& rx,
                                      const TrackerConfig& cfg, RandomStream& rng);

// One-step prediction of the transmitter cloud (weights kept).
WeightedParticleSet predict_tx(const WeightedParticleSet& prev, const ModelParams& p,
                               RandomStream& rng);

// Reweight a predicted transmitter cloud by the direct-AOA likelihood and
// resample back to equal weights, mass 1. A cloud whose every likelihood
// underflows to zero is returned unchanged (uniform fallback).
WeightedParticleSet evaluate_direct(const WeightedParticleSet& predicted,
                                    const DirectMeasurement& z, const Pose& rx,
                                    const ModelParams& p, RandomStream& rng);

struct LegacyPrediction {
  WeightedParticleSet particles;  // weights p_survival * (1 - q_prev) / S
  double pred_nonexist = 0.0;     // 1 - p_survival * (1 - q_prev)
};

LegacyPrediction predict_legacy(const PotentialScatterer& ps, const ModelParams& p,
                                RandomStream& rng);

// Association prior for one legacy object: beta[a] = sum_s g[s][a] * w'_s,
// plus the predicted non-existence mass at a = 0. The transmitter coordinate
// of each detection factor is averaged over `partners` strided transmitter
// particles (partners = 1 is plain index pairing).
std::vector<double> compute_beta(const WeightedParticleSet& tx_eval,
                                 const LegacyPrediction& leg,
                                 const MeasurementFrame& frame, const Pose& rx,
                                 const ModelParams& p, int partners);

struct BirthResult {
  WeightedParticleSet particles;  // equal weights, mass 1
  std::vector<double> lik;        // scatter likelihood of z at each particle
  double xi0 = 1.0;               // prior weight of "not caused by a tracked object"
};

// Birth proposal for one measurement: per transmitter particle, perturb the
// measurement with the model sigmas, invert the geometry on the alternating
// side, and retry a degenerate inversion up to 16 times before copying a
// valid sibling. xi0 = 1 + mu_new/(mu_fa * clutter) * mean likelihood.
// Throws std::runtime_error when no particle admits a valid inversion.
BirthResult birth_and_xi(const WeightedParticleSet& tx_eval, const ScatterMeasurement& z,
                         const Pose& rx, double mu_new, const ModelParams& p,
                         RandomStream& rng);

struct BeliefUpdate {
  WeightedParticleSet particles;  // resampled, mass 1 - nonexist
  double nonexist = 1.0;
};

// Posterior for a legacy object given the association messages eta (length
// M+1). The transmitter coordinate of each detection factor is integrated out
// by averaging over `partners` strided transmitter particles (partners = 1 is
// plain index pairing). Guards: a zero denominator or zero surviving mass
// yields nonexist = 1 with zero-weight particles.
BeliefUpdate update_legacy_belief(const LegacyPrediction& leg,
                                  const WeightedParticleSet& tx_eval,
                                  const std::vector<double>& eta,
                                  const MeasurementFrame& frame, const Pose& rx,
                                  const ModelParams& p, int partners, RandomStream& rng);

// Posterior for a newly born object given the measurement messages varsigma
// (length K+1).
BeliefUpdate update_new_belief(const BirthResult& birth, double mu_new,
                               const std::vector<double>& varsigma, const ModelParams& p,
                               RandomStream& rng);

// Normalized weights of the transmitter cloud after folding in every legacy
// object's message product. The k-th factor for transmitter particle s is
//   (1 - alpha_k) * sum_a eta_k(a) * g_avg(s, a) + eta_k(0) * alpha_k,
// where g_avg averages the detection factor over `partners` particles of the
// object's predicted cloud (strided, deterministic). partners = 1 degenerates
// to index pairing, whose single-sample factors are so peaked that the
// effective sample size collapses to a handful of particles. Uniform when
// K = 0 or on total underflow. Factors are rescaled per object before
// multiplying, which the final normalization cancels.
std::vector<double> tx_stack_weights(const WeightedParticleSet& tx_eval,
                                     const std::vector<LegacyPrediction>& legs,
                                     const std::vector<std::vector<double>>& etas,
                                     const MeasurementFrame& frame, const Pose& rx,
                                     const ModelParams& p, int partners);

// Scalar birth-intensity recursion: mean birth count for this step and the
// undetected intensity carried to the next step.
//   mu_new = p_detect * (lambda_undetected + lambda_birth)
//   lambda_next = (1 - p_detect) * (lambda_undetected + lambda_birth)
std::pair<double, double> phd_update(double lambda_undetected, double lambda_birth,
                                     double p_detect);

// ---- orchestration ----

class Tracker {
 public:
  Tracker(TrackerConfig cfg, TrackerMode mode, std::uint64_t seed);
  Tracker(TrackerConfig cfg, TrackerMode mode, RandomStream rng);

  // Process one measurement frame at the given (known) receiver pose. A frame
  // without a direct measurement only advances the step counter.
  const TrackerState& step(const MeasurementFrame& frame, const Pose& rx);

  StepEstimate estimate() const;
  const TrackerState& state() const { return state_; }
  TrackerMode mode() const { return mode_; }
  const TrackerConfig& config() const { return cfg_; }

 private:
  void bootstrap_step(const MeasurementFrame& frame, const Pose& rx);
  void tracking_step(const MeasurementFrame& frame, const Pose& rx);

  TrackerConfig cfg_;
  TrackerMode mode_;
  TrackerState state_;
  RandomStream rng_;
};

}  // namespace bptrack
