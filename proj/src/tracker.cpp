#include "bptrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bptrack/geometry.hpp"

namespace bptrack {

double WeightedParticleSet::total_weight() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return sum;
}

Vec2 WeightedParticleSet::mean() const {
  Vec2 acc;
  double sum = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    acc += weights[i] * positions[i];
    sum += weights[i];
  }
  if (!(sum > 0.0)) throw std::runtime_error("particle mean: zero total mass");
  return acc / sum;
}

WeightedParticleSet resample_systematic(const WeightedParticleSet& in, int count,
                                        double target_mass, RandomStream& rng) {
  if (in.positions.empty() || in.positions.size() != in.weights.size())
    throw std::invalid_argument("resample: empty or inconsistent particle set");
  if (count <= 0) throw std::invalid_argument("resample: count must be positive");
  const double total = in.total_weight();
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::invalid_argument("resample: total weight must be positive and finite");

  const double u0 = rng.uniform(0.0, 1.0);
  WeightedParticleSet out;
  out.positions.resize(static_cast<std::size_t>(count));
  out.weights.assign(static_cast<std::size_t>(count), target_mass / count);
  std::size_t j = 0;
  double cum = in.weights[0];
  for (int i = 0; i < count; ++i) {
    // Stratified thresholds; particle j owns the cumulative-weight interval
    // (cum - w_j, cum].
    const double threshold = (i + u0) * total / count;
    while (cum <= threshold && j + 1 < in.positions.size()) cum += in.weights[++j];
    out.positions[static_cast<std::size_t>(i)] = in.positions[j];
  }
  return out;
}

double spread_std(const WeightedParticleSet& particles) {
  const double total = particles.total_weight();
  if (!(total > 0.0)) return std::numeric_limits<double>::infinity();
  const Vec2 m = particles.mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < particles.positions.size(); ++i)
    acc += particles.weights[i] * (particles.positions[i] - m).squared_norm();
  return std::sqrt(acc / total);
}

WeightedParticleSet init_tx_particles(const DirectMeasurement& z, const Pose& rx,
                                      const TrackerConfig& cfg, RandomStream& rng) {
  const int S = cfg.particle_count;
  WeightedParticleSet out;
  out.positions.reserve(static_cast<std::size_t>(S));
  out.weights.assign(static_cast<std::size_t>(S), 1.0 / S);
  for (int s = 0; s < S; ++s) {
    const double theta = rng.normal(z.theta, cfg.model.sigma_theta);
    const double range = rng.uniform(0.0, cfg.tx_range_max);
    const double side = (s % 2 == 0) ? 1.0 : -1.0;
    out.positions.push_back(rx.position + range * rotated(rx.orientation, side * theta));
  }
  return out;
}

WeightedParticleSet predict_tx(const WeightedParticleSet& prev, const ModelParams& p,
                               RandomStream& rng) {
  WeightedParticleSet out;
  out.positions.reserve(prev.positions.size());
  for (const Vec2& pos : prev.positions)
    out.positions.push_back(transition_sample_tx(pos, p, rng));
  out.weights = prev.weights;
  return out;
}

WeightedParticleSet evaluate_direct(const WeightedParticleSet& predicted,
                                    const DirectMeasurement& z, const Pose& rx,
                                    const ModelParams& p, RandomStream& rng) {
  WeightedParticleSet weighted = predicted;
  double total = 0.0;
  for (std::size_t i = 0; i < weighted.positions.size(); ++i) {
    weighted.weights[i] *= likelihood_direct(z, weighted.positions[i], rx, p);
    total += weighted.weights[i];
  }
  if (!(total > 0.0)) {
    // Every likelihood underflowed; the measurement carries no usable
    // information, keep the prediction.
    WeightedParticleSet out = predicted;
    const double in_total = out.total_weight();
    if (!(in_total > 0.0))
      throw std::invalid_argument("evaluate_direct: zero-mass input");
    for (double& w : out.weights) w /= in_total;
    return out;
  }
  return resample_systematic(weighted, static_cast<int>(weighted.positions.size()), 1.0,
                             rng);
}

LegacyPrediction predict_legacy(const PotentialScatterer& ps, const ModelParams& p,
                                RandomStream& rng) {
  LegacyPrediction out;
  out.particles.positions.reserve(ps.particles.positions.size());
  for (const Vec2& pos : ps.particles.positions)
    out.particles.positions.push_back(transition_sample_ps(pos, p, rng));
  out.particles.weights.resize(ps.particles.weights.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < ps.particles.weights.size(); ++i) {
    out.particles.weights[i] = p.p_survival * ps.particles.weights[i];
    mass += out.particles.weights[i];
  }
  out.pred_nonexist = 1.0 - mass;
  return out;
}

namespace {

// Likelihoods f(z_m | tx, x, rx) with the partner cloud's coordinate
// integrated out by a strided average, row-major S x M: for primary particle s
//   out[s][m] = (1 / P) sum_i f(z_m | tx, x, rx)
// where (tx, x) pairs primary particle s with partner (s + i * stride) mod S.
// P = 1 is plain index pairing, P = S covers the whole partner cloud.
std::vector<double> mean_detect_factor(const std::vector<Vec2>& tx_pos,
                                       const std::vector<Vec2>& obj_pos,
                                       const MeasurementFrame& frame, const Pose& rx,
                                       const ModelParams& p, std::size_t P,
                                       bool tx_primary) {
  const std::size_t S = tx_pos.size();
  const std::size_t stride = std::max<std::size_t>(1, S / P);
  const std::size_t M = frame.scatter.size();
  std::vector<double> out(S * M, 0.0);
  if (M == 0) return out;

  std::vector<double> tx_rx(S), rxd(S), theta_pdf(S * M);
  for (std::size_t t = 0; t < S; ++t) tx_rx[t] = distance(tx_pos[t], rx.position);
  // The AOA density depends only on the object particle, so it is tabulated
  // once; an object at the receiver has no defined bearing and scores zero.
  for (std::size_t j = 0; j < S; ++j) {
    rxd[j] = distance(obj_pos[j], rx.position);
    if (rxd[j] == 0.0) {
      for (std::size_t m = 0; m < M; ++m) theta_pdf[j * M + m] = 0.0;
      continue;
    }
    const double th = aoa(obj_pos[j], rx);
    for (std::size_t m = 0; m < M; ++m)
      theta_pdf[j * M + m] = normal_pdf(frame.scatter[m].theta, th, p.sigma_theta);
  }

  const double inv_p = 1.0 / static_cast<double>(P);
  for (std::size_t s = 0; s < S; ++s) {
    double* row = &out[s * M];
    for (std::size_t i = 0; i < P; ++i) {
      const std::size_t q = (s + i * stride) % S;
      const std::size_t t = tx_primary ? s : q;
      const std::size_t o = tx_primary ? q : s;
      if (rxd[o] == 0.0) continue;
      const double d = distance(obj_pos[o], tx_pos[t]) + rxd[o] - tx_rx[t];
      for (std::size_t m = 0; m < M; ++m) {
        const double dev = (frame.scatter[m].rel_distance - d) / p.sigma_d;
        if (dev > 8.5 || dev < -8.5) continue;
        row[m] += theta_pdf[o * M + m] *
                  normal_pdf(frame.scatter[m].rel_distance, d, p.sigma_d);
      }
    }
    for (std::size_t m = 0; m < M; ++m) row[m] *= inv_p;
  }
  return out;
}

}  // namespace

std::vector<double> compute_beta(const WeightedParticleSet& tx_eval,
                                 const LegacyPrediction& leg,
                                 const MeasurementFrame& frame, const Pose& rx,
                                 const ModelParams& p, int partners) {
  const std::size_t S = tx_eval.positions.size();
  if (leg.particles.positions.size() != S)
    throw std::invalid_argument("compute_beta: particle counts must agree");
  if (partners < 1) throw std::invalid_argument("compute_beta: partners must be >= 1");
  const std::size_t P = std::min<std::size_t>(static_cast<std::size_t>(partners), S);
  const std::size_t M = frame.scatter.size();
  std::vector<double> beta(M + 1, 0.0);
  const double miss = 1.0 - p.p_detect;
  const double ratio = p.p_detect / (p.mu_fa * p.clutter_density());
  const auto f = mean_detect_factor(tx_eval.positions, leg.particles.positions, frame,
                                    rx, p, P, /*tx_primary=*/false);
  for (std::size_t s = 0; s < S; ++s) {
    const double w = leg.particles.weights[s];
    beta[0] += miss * w;
    for (std::size_t m = 0; m < M; ++m) beta[m + 1] += w * ratio * f[s * M + m];
  }
  beta[0] += leg.pred_nonexist;
  return beta;
}

BirthResult birth_and_xi(const WeightedParticleSet& tx_eval, const ScatterMeasurement& z,
                         const Pose& rx, double mu_new, const ModelParams& p,
                         RandomStream& rng) {
  const std::size_t S = tx_eval.positions.size();
  if (S == 0) throw std::invalid_argument("birth_and_xi: empty transmitter cloud");
  BirthResult out;
  out.particles.positions.assign(S, Vec2{});
  out.particles.weights.assign(S, 1.0 / static_cast<double>(S));
  out.lik.assign(S, 0.0);

  std::vector<char> valid(S, 0);
  std::size_t n_valid = 0;
  for (std::size_t s = 0; s < S; ++s) {
    const Vec2& tx = tx_eval.positions[s];
    const double side = (s % 2 == 0) ? 1.0 : -1.0;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const double zd = rng.normal(z.rel_distance, p.sigma_d);
      const double zth = rng.normal(z.theta, p.sigma_theta);
      const Vec2 u = rotated(rx.orientation, side * zth);
      double r = 0.0;
      if (!try_ray_ellipse_range(tx, rx, u, zd, r)) continue;
      out.particles.positions[s] = rx.position + r * u;
      valid[s] = 1;
      ++n_valid;
      break;
    }
  }
  if (n_valid == 0) throw std::runtime_error("birth_and_xi: no valid inversion");
  if (n_valid < S) {
    // Copy the nearest valid sibling into each failed slot.
    for (std::size_t s = 0; s < S; ++s) {
      if (valid[s]) continue;
      for (std::size_t off = 1; off < S; ++off) {
        if (s >= off && valid[s - off]) {
          out.particles.positions[s] = out.particles.positions[s - off];
          break;
        }
        if (s + off < S && valid[s + off]) {
          out.particles.positions[s] = out.particles.positions[s + off];
          break;
        }
      }
    }
  }

  double lik_sum = 0.0;
  for (std::size_t s = 0; s < S; ++s) {
    out.lik[s] = likelihood_scatter(z, tx_eval.positions[s], out.particles.positions[s],
                                    rx, p);
    lik_sum += out.lik[s];
  }
  out.xi0 = 1.0 + mu_new / (p.mu_fa * p.clutter_density()) * lik_sum /
                      static_cast<double>(S);
  return out;
}

BeliefUpdate update_legacy_belief(const LegacyPrediction& leg,
                                  const WeightedParticleSet& tx_eval,
                                  const std::vector<double>& eta,
                                  const MeasurementFrame& frame, const Pose& rx,
                                  const ModelParams& p, int partners, RandomStream& rng) {
  const std::size_t S = leg.particles.positions.size();
  if (tx_eval.positions.size() != S)
    throw std::invalid_argument("update_legacy_belief: particle counts must agree");
  if (eta.size() != frame.scatter.size() + 1)
    throw std::invalid_argument("update_legacy_belief: eta must have M + 1 entries");
  if (partners < 1)
    throw std::invalid_argument("update_legacy_belief: partners must be >= 1");
  const std::size_t P = std::min<std::size_t>(static_cast<std::size_t>(partners), S);
  const double miss = 1.0 - p.p_detect;
  const double ratio = p.p_detect / (p.mu_fa * p.clutter_density());
  const std::size_t M = frame.scatter.size();
  const auto f = mean_detect_factor(tx_eval.positions, leg.particles.positions, frame,
                                    rx, p, P, /*tx_primary=*/false);

  std::vector<double> w(S, 0.0);
  double sum_w = 0.0;
  for (std::size_t s = 0; s < S; ++s) {
    double detect = 0.0;
    for (std::size_t m = 0; m < M; ++m) detect += eta[m + 1] * f[s * M + m];
    w[s] = leg.particles.weights[s] * (eta[0] * miss + ratio * detect);
    sum_w += w[s];
  }
  const double dead = eta[0] * leg.pred_nonexist;
  const double denom = sum_w + dead;

  BeliefUpdate out;
  if (!(denom > 0.0) || !std::isfinite(denom) || !(sum_w > 0.0)) {
    // No mass survives the update; the object is as good as nonexistent.
    out.nonexist = 1.0;
    out.particles.positions = leg.particles.positions;
    out.particles.weights.assign(S, 0.0);
    return out;
  }
  out.nonexist = dead / denom;
  WeightedParticleSet weighted{leg.particles.positions, std::move(w)};
  out.particles = resample_systematic(weighted, static_cast<int>(S), 1.0 - out.nonexist,
                                      rng);
  return out;
}

BeliefUpdate update_new_belief(const BirthResult& birth, double mu_new,
                               const std::vector<double>& varsigma, const ModelParams& p,
                               RandomStream& rng) {
  const std::size_t S = birth.particles.positions.size();
  if (varsigma.empty())
    throw std::invalid_argument("update_new_belief: varsigma must have K + 1 entries");
  double vs_sum = 0.0;
  for (double v : varsigma) vs_sum += v;

  const double scale =
      varsigma[0] * mu_new / (p.mu_fa * p.clutter_density() * static_cast<double>(S));
  std::vector<double> w(S, 0.0);
  double sum_w = 0.0;
  for (std::size_t s = 0; s < S; ++s) {
    w[s] = scale * birth.lik[s];
    sum_w += w[s];
  }
  const double denom = sum_w + vs_sum;

  BeliefUpdate out;
  if (!(denom > 0.0) || !std::isfinite(denom) || !(sum_w > 0.0)) {
    out.nonexist = 1.0;
    out.particles.positions = birth.particles.positions;
    out.particles.weights.assign(S, 0.0);
    return out;
  }
  out.nonexist = vs_sum / denom;
  WeightedParticleSet weighted{birth.particles.positions, std::move(w)};
  out.particles = resample_systematic(weighted, static_cast<int>(S), 1.0 - out.nonexist,
                                      rng);
  return out;
}

std::vector<double> tx_stack_weights(const WeightedParticleSet& tx_eval,
                                     const std::vector<LegacyPrediction>& legs,
                                     const std::vector<std::vector<double>>& etas,
                                     const MeasurementFrame& frame, const Pose& rx,
                                     const ModelParams& p, int partners) {
  const std::size_t S = tx_eval.positions.size();
  if (legs.size() != etas.size())
    throw std::invalid_argument("tx_stack_weights: one eta row per legacy object");
  if (partners < 1) throw std::invalid_argument("tx_stack_weights: partners must be >= 1");
  const std::size_t P = std::min<std::size_t>(static_cast<std::size_t>(partners), S);
  const std::size_t M = frame.scatter.size();
  const double miss = 1.0 - p.p_detect;
  const double ratio = p.p_detect / (p.mu_fa * p.clutter_density());

  std::vector<double> w(S, 1.0);
  std::vector<double> factor(S);
  for (std::size_t k = 0; k < legs.size(); ++k) {
    const auto& leg = legs[k];
    if (leg.particles.positions.size() != S)
      throw std::invalid_argument("tx_stack_weights: particle counts must agree");
    const auto& eta = etas[k];
    if (eta.size() != M + 1)
      throw std::invalid_argument("tx_stack_weights: eta row must have M + 1 entries");
    const double alpha = leg.pred_nonexist;
    const double survive = 1.0 - alpha;
    const auto f = mean_detect_factor(tx_eval.positions, leg.particles.positions, frame,
                                      rx, p, P, /*tx_primary=*/true);
    double fmax = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
      double detect = 0.0;
      for (std::size_t m = 0; m < M; ++m) detect += eta[m + 1] * f[s * M + m];
      const double g_sum = eta[0] * miss + ratio * detect;
      factor[s] = survive * g_sum + eta[0] * alpha;
      fmax = std::max(fmax, factor[s]);
    }
    // Factors for a near-dead object are flat; normalizing each object by its
    // own maximum keeps the product away from underflow.
    if (fmax > 0.0)
      for (std::size_t s = 0; s < S; ++s) w[s] *= factor[s] / fmax;
  }
  double total = 0.0;
  for (double v : w) total += v;
  if (!(total > 0.0) || !std::isfinite(total)) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(S));
  } else {
    for (double& v : w) v /= total;
  }
  return w;
}

std::pair<double, double> phd_update(double lambda_undetected, double lambda_birth,
                                     double p_detect) {
  const double lambda_total = lambda_undetected + lambda_birth;
  return {p_detect * lambda_total, (1.0 - p_detect) * lambda_total};
}

TrackerConfig benchmark_tracker_config() {
  TrackerConfig cfg;
  cfg.model = benchmark_model();
  return cfg;
}

namespace {

void validate_config(const TrackerConfig& cfg) {
  if (cfg.particle_count <= 0 || cfg.particle_count % 2 != 0)
    throw std::invalid_argument("tracker: particle_count must be positive and even");
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(cfg.p_exist) || !in_unit(cfg.p_prune) || !in_unit(cfg.model.p_survival) ||
      !in_unit(cfg.model.p_detect))
    throw std::invalid_argument("tracker: probabilities must lie in [0, 1]");
  if (cfg.assoc_max_iter < 1 || !(cfg.assoc_tol >= 0.0))
    throw std::invalid_argument("tracker: bad association stopping parameters");
  if (!(cfg.lambda_undetected_init >= 0.0) || !(cfg.lambda_birth >= 0.0))
    throw std::invalid_argument("tracker: birth intensities must be >= 0");
  if (!(cfg.tx_range_max > 0.0))
    throw std::invalid_argument("tracker: tx_range_max must be > 0");
  if (cfg.stack_partners < 1)
    throw std::invalid_argument("tracker: stack_partners must be >= 1");
  if (!(cfg.bootstrap_std_threshold > 0.0))
    throw std::invalid_argument("tracker: bootstrap_std_threshold must be > 0");
  if (!(cfg.model.mu_fa > 0.0) || !(cfg.model.sigma_d > 0.0) ||
      !(cfg.model.sigma_theta > 0.0))
    throw std::invalid_argument("tracker: model scales must be > 0");
  if (!(cfg.model.fa_d_range[1] > cfg.model.fa_d_range[0]) ||
      !(cfg.model.fa_theta_range[1] > cfg.model.fa_theta_range[0]))
    throw std::invalid_argument("tracker: false-alarm ranges must be nonempty");
}

}  // namespace

Tracker::Tracker(TrackerConfig cfg, TrackerMode mode, std::uint64_t seed)
    : Tracker(std::move(cfg), mode, RandomStream(seed)) {}

Tracker::Tracker(TrackerConfig cfg, TrackerMode mode, RandomStream rng)
    : cfg_(std::move(cfg)), mode_(mode), rng_(std::move(rng)) {
  validate_config(cfg_);
  state_.lambda_undetected = cfg_.lambda_undetected_init;
}

const TrackerState& Tracker::step(const MeasurementFrame& frame, const Pose& rx) {
  if (!rx.is_unit())
    throw std::invalid_argument("tracker step: receiver orientation must be unit");
  if (frame.direct) {
    if (state_.stage == TrackerStage::Bootstrap)
      bootstrap_step(frame, rx);
    else
      tracking_step(frame, rx);
  }
  // A frame without a direct path leaves the state untouched.
  state_.step = frame.step;
  return state_;
}

void Tracker::bootstrap_step(const MeasurementFrame& frame, const Pose& rx) {
  const DirectMeasurement& z = *frame.direct;
  if (!state_.tx_initialized) {
    state_.tx_particles = init_tx_particles(z, rx, cfg_, rng_);
    state_.tx_initialized = true;
  } else {
    WeightedParticleSet pred = predict_tx(state_.tx_particles, cfg_.model, rng_);
    double total = 0.0;
    for (std::size_t i = 0; i < pred.positions.size(); ++i) {
      pred.weights[i] *= likelihood_direct(z, pred.positions[i], rx, cfg_.model);
      total += pred.weights[i];
    }
    if (!(total > 0.0)) {
      // The whole cloud is inconsistent with the measurement; start over.
      state_.tx_particles = init_tx_particles(z, rx, cfg_, rng_);
    } else {
      state_.tx_particles = resample_systematic(pred, cfg_.particle_count, 1.0, rng_);
    }
  }

  if (mode_ != TrackerMode::TxOnly &&
      spread_std(state_.tx_particles) < cfg_.bootstrap_std_threshold) {
    state_.stage = TrackerStage::Tracking;
    state_.stage_transition_step = frame.step;
    if (mode_ == TrackerMode::Simplified1) {
      // The transmitter estimate stays fixed from here on.
      const Vec2 frozen = state_.tx_particles.mean();
      const std::size_t S = static_cast<std::size_t>(cfg_.particle_count);
      state_.tx_particles.positions.assign(S, frozen);
      state_.tx_particles.weights.assign(S, 1.0 / static_cast<double>(S));
    }
  }
}

void Tracker::tracking_step(const MeasurementFrame& frame, const Pose& rx) {
  const int S = cfg_.particle_count;
  const auto [mu_new, lambda_next] =
      phd_update(state_.lambda_undetected, cfg_.lambda_birth, cfg_.model.p_detect);

  WeightedParticleSet tx_eval;
  if (mode_ == TrackerMode::Simplified1) {
    tx_eval = state_.tx_particles;
  } else {
    WeightedParticleSet tx_pred = predict_tx(state_.tx_particles, cfg_.model, rng_);
    tx_eval = evaluate_direct(tx_pred, *frame.direct, rx, cfg_.model, rng_);
  }

  const std::size_t K = state_.scatterers.size();
  const std::size_t M = frame.scatter.size();

  std::vector<LegacyPrediction> legs;
  legs.reserve(K);
  AssocInput ain;
  ain.beta.reserve(K);
  ain.xi0.reserve(M);
  for (std::size_t k = 0; k < K; ++k) {
    legs.push_back(predict_legacy(state_.scatterers[k], cfg_.model, rng_));
    ain.beta.push_back(
        compute_beta(tx_eval, legs.back(), frame, rx, cfg_.model, cfg_.stack_partners));
  }

  std::vector<BirthResult> births;
  births.reserve(M);
  for (std::size_t m = 0; m < M; ++m) {
    births.push_back(
        birth_and_xi(tx_eval, frame.scatter[m], rx, mu_new, cfg_.model, rng_));
    ain.xi0.push_back(births.back().xi0);
  }

  const AssocOutput assoc = run_association(ain, cfg_.assoc_max_iter, cfg_.assoc_tol);

  for (std::size_t k = 0; k < K; ++k) {
    BeliefUpdate up = update_legacy_belief(legs[k], tx_eval, assoc.eta[k], frame, rx,
                                           cfg_.model, cfg_.stack_partners, rng_);
    state_.scatterers[k].particles = std::move(up.particles);
    state_.scatterers[k].nonexist_prob = up.nonexist;
  }

  if (mode_ == TrackerMode::Full && K > 0) {
    WeightedParticleSet weighted;
    weighted.positions = tx_eval.positions;
    weighted.weights = tx_stack_weights(tx_eval, legs, assoc.eta, frame, rx, cfg_.model,
                                        cfg_.stack_partners);
    state_.tx_particles = resample_systematic(weighted, S, 1.0, rng_);
  } else if (mode_ != TrackerMode::Simplified1) {
    state_.tx_particles = std::move(tx_eval);
  }

  for (std::size_t m = 0; m < M; ++m) {
    BeliefUpdate up =
        update_new_belief(births[m], mu_new, assoc.varsigma[m], cfg_.model, rng_);
    PotentialScatterer ps;
    ps.particles = std::move(up.particles);
    ps.nonexist_prob = up.nonexist;
    ps.id = state_.next_track_id++;
    ps.birth_step = frame.step;
    state_.scatterers.push_back(std::move(ps));
  }

  state_.lambda_undetected = lambda_next;

  std::erase_if(state_.scatterers, [&](const PotentialScatterer& ps) {
    return 1.0 - ps.nonexist_prob < cfg_.p_prune;
  });
}

StepEstimate Tracker::estimate() const {
  StepEstimate est;
  if (state_.tx_initialized && state_.tx_particles.total_weight() > 0.0)
    est.tx = state_.tx_particles.mean();
  for (const auto& ps : state_.scatterers) {
    const double existence = 1.0 - ps.nonexist_prob;
    if (existence > cfg_.p_exist && ps.particles.total_weight() > 0.0)
      est.tracks.push_back(
          {ps.id, ps.particles.mean(), existence, spread_std(ps.particles)});
  }
  return est;
}

}  // namespace bptrack
