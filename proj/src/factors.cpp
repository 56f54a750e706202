#include "bptrack/factors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bptrack/geometry.hpp"

namespace bptrack {

ModelParams benchmark_model() {
  ModelParams p;
  p.sigma_theta = std::numbers::pi / 90.0;
  p.fa_theta_range[1] = std::numbers::pi;
  return p;
}

double normal_pdf(double x, double mean, double stddev) {
  const double z = (x - mean) / stddev;
  return std::exp(-0.5 * z * z) / (stddev * std::sqrt(2.0 * std::numbers::pi));
}

double likelihood_scatter(const ScatterMeasurement& z, const Vec2& tx, const Vec2& scatterer,
                          const Pose& rx, const ModelParams& p) {
  if (scatterer == rx.position) return 0.0;
  const double d = relative_distance(tx, scatterer, rx.position);
  const double theta = aoa(scatterer, rx);
  return normal_pdf(z.rel_distance, d, p.sigma_d) * normal_pdf(z.theta, theta, p.sigma_theta);
}

double likelihood_direct(const DirectMeasurement& z, const Vec2& tx, const Pose& rx,
                         const ModelParams& p) {
  if (tx == rx.position) return 0.0;
  return normal_pdf(z.theta, aoa(tx, rx), p.sigma_theta);
}

double fa_density(const ScatterMeasurement& z, const ModelParams& p) {
  if (z.rel_distance < p.fa_d_range[0] || z.rel_distance > p.fa_d_range[1]) return 0.0;
  if (z.theta < p.fa_theta_range[0] || z.theta > p.fa_theta_range[1]) return 0.0;
  return p.clutter_density();
}

double g_factor(const Vec2& tx, const Vec2& scatterer, bool exists, int a,
                const MeasurementFrame& frame, const Pose& rx, const ModelParams& p) {
  if (a < 0 || a > static_cast<int>(frame.scatter.size()))
    throw std::invalid_argument("g_factor: association index out of range");
  if (!exists) return a == 0 ? 1.0 : 0.0;
  if (a == 0) return 1.0 - p.p_detect;
  const auto& z = frame.scatter[static_cast<std::size_t>(a - 1)];
  return p.p_detect * likelihood_scatter(z, tx, scatterer, rx, p) /
         (p.mu_fa * p.clutter_density());
}

double h_factor_weight(const Vec2& tx, const Vec2& scatterer, const ScatterMeasurement& z,
                       const Pose& rx, double mu_new, const ModelParams& p) {
  return mu_new * likelihood_scatter(z, tx, scatterer, rx, p) /
         (p.mu_fa * p.clutter_density());
}

double psi(int a, int b, int k, int m) {
  if (a == m && b != k) return 0.0;
  if (b == k && a != m) return 0.0;
  return 1.0;
}

Vec2 transition_sample_tx(const Vec2& prev, const ModelParams& p, RandomStream& rng) {
  return {rng.normal(prev.x, p.sigma_tx_walk), rng.normal(prev.y, p.sigma_tx_walk)};
}

Vec2 transition_sample_ps(const Vec2& prev, const ModelParams& p, RandomStream& rng) {
  return {rng.normal(prev.x, p.sigma_ps_walk), rng.normal(prev.y, p.sigma_ps_walk)};
}

}  // namespace bptrack
