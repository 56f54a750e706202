#pragma once

#include "bptrack/rng.hpp"
#include "bptrack/scenario.hpp"
#include "bptrack/vec2.hpp"

namespace bptrack {

// Measurement-model parameters used by the tracker. Sigmas here are the
// evaluation (likelihood) widths, deliberately wider than the generation
// noise; the walk sigmas drive the transition densities.
struct ModelParams {
  double p_survival = 0.999;
  double p_detect = 0.95;
  double mu_fa = 1.0;
  double sigma_d = 0.2;
  double sigma_theta = 0.0;  // set by benchmark_model()
  double sigma_tx_walk = 0.1;
  double sigma_ps_walk = 0.5;
  double fa_d_range[2] = {0.0, 50.0};
  double fa_theta_range[2] = {0.0, 0.0};

  // Uniform false-alarm density over the measurement box. Likelihood ratios
  // divide by this value for any z, including noise-displaced measurements
  // that land just outside the box, so it is the flat in-box constant.
  double clutter_density() const {
    return 1.0 / ((fa_d_range[1] - fa_d_range[0]) * (fa_theta_range[1] - fa_theta_range[0]));
  }
};

ModelParams benchmark_model();

double normal_pdf(double x, double mean, double stddev);

// Joint Gaussian density of a scatter measurement (rel distance, AOA) given
// transmitter and scatterer positions. Zero when the scatterer sits on the
// receiver. No angle wrapping: theta is compared on the real line.
double likelihood_scatter(const ScatterMeasurement& z, const Vec2& tx, const Vec2& scatterer,
                          const Pose& rx, const ModelParams& p);

// Density of the direct AOA given the transmitter position. Zero when the
// transmitter sits on the receiver.
double likelihood_direct(const DirectMeasurement& z, const Vec2& tx, const Pose& rx,
                         const ModelParams& p);

// False-alarm density with box semantics: constant inside the configured
// ranges, zero outside.
double fa_density(const ScatterMeasurement& z, const ModelParams& p);

// Detection factor for a legacy object. `exists` is the existence indicator,
// `a` the association (0 = undetected, m >= 1 picks frame.scatter[m-1]).
//   exists = 1, a = m: p_detect * likelihood(z_m) / (mu_fa * clutter density)
//   exists = 1, a = 0: 1 - p_detect
//   exists = 0:        1 if a == 0 else 0
double g_factor(const Vec2& tx, const Vec2& scatterer, bool exists, int a,
                const MeasurementFrame& frame, const Pose& rx, const ModelParams& p);

// Weight term for a newly born object on measurement z:
//   mu_new * likelihood(z) / (mu_fa * clutter density).
double h_factor_weight(const Vec2& tx, const Vec2& scatterer, const ScatterMeasurement& z,
                       const Pose& rx, double mu_new, const ModelParams& p);

// Pairwise association consistency: zero iff the two sides disagree about
// the pairing (a = m without b = k, or b = k without a = m).
double psi(int a, int b, int k, int m);

Vec2 transition_sample_tx(const Vec2& prev, const ModelParams& p, RandomStream& rng);
Vec2 transition_sample_ps(const Vec2& prev, const ModelParams& p, RandomStream& rng);

}  // namespace bptrack
