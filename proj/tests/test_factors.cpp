#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bptrack/factors.hpp"
#include "bptrack/geometry.hpp"

using namespace bptrack;

namespace {
constexpr double kPi = 3.14159265358979323846;

// One off-peak scatter measurement for the hand geometry below, built from the
// independently tested geometry routines.
ScatterMeasurement hand_measurement(const Vec2& tx, const Vec2& s, const Pose& rx) {
  return {relative_distance(tx, s, rx.position) + 0.15, aoa(s, rx) - 0.02};
}
}  // namespace

TEST_CASE("normal pdf values") {
  CHECK(normal_pdf(0.0, 0.0, 0.2) == doctest::Approx(1.9947114020071635).epsilon(1e-12));
  // One sigma off the mean costs exactly exp(-1/2).
  CHECK(normal_pdf(0.7, 0.5, 0.2) / normal_pdf(0.5, 0.5, 0.2) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(normal_pdf(3.0, 0.0, 1.0) == doctest::Approx(0.0044318484119380075));
}

TEST_CASE("benchmark model constants") {
  const ModelParams p = benchmark_model();
  CHECK(p.sigma_theta == doctest::Approx(kPi / 90));
  CHECK(p.fa_theta_range[1] == doctest::Approx(kPi));
  CHECK(p.clutter_density() == doctest::Approx(0.006366197723675813).epsilon(1e-12));
}

TEST_CASE("scatter likelihood peaks at the true measurement") {
  const ModelParams p = benchmark_model();
  const Vec2 tx{0.0, 10.0};
  const Vec2 s{4.0, 3.0};
  const Pose rx{{0.0, 0.0}, {1.0, 0.0}};
  const ScatterMeasurement exact{relative_distance(tx, s, rx.position), aoa(s, rx)};
  // 1 / (2 pi sigma_d sigma_theta).
  CHECK(likelihood_scatter(exact, tx, s, rx, p) ==
        doctest::Approx(22.797266319526003).epsilon(1e-12));
  // Displacing one coordinate by its sigma costs exp(-1/2).
  ScatterMeasurement off = exact;
  off.rel_distance += p.sigma_d;
  CHECK(likelihood_scatter(off, tx, s, rx, p) ==
        doctest::Approx(22.797266319526003 * std::exp(-0.5)).epsilon(1e-12));
  // A scatterer on the receiver has no defined bearing.
  CHECK(likelihood_scatter(exact, tx, rx.position, rx, p) == 0.0);
}

TEST_CASE("direct likelihood") {
  const ModelParams p = benchmark_model();
  const Pose rx{{0.0, 0.0}, {1.0, 0.0}};
  const Vec2 tx{0.0, 10.0};
  const DirectMeasurement exact{aoa(tx, rx)};
  CHECK(likelihood_direct(exact, tx, rx, p) ==
        doctest::Approx(11.428854468163376).epsilon(1e-12));
  CHECK(likelihood_direct(exact, rx.position, rx, p) == 0.0);
}

TEST_CASE("false alarm density is a box") {
  const ModelParams p = benchmark_model();
  CHECK(fa_density({25.0, 1.0}, p) == doctest::Approx(1.0 / (50.0 * kPi)));
  CHECK(fa_density({-0.1, 1.0}, p) == 0.0);
  CHECK(fa_density({25.0, -0.01}, p) == 0.0);
  CHECK(fa_density({50.1, 1.0}, p) == 0.0);
}

TEST_CASE("detection factor cases") {
  const ModelParams p = benchmark_model();
  const Vec2 tx{0.0, 10.0};
  const Vec2 s{4.0, 3.0};
  const Pose rx{{0.0, 0.0}, {1.0, 0.0}};
  MeasurementFrame frame;
  frame.scatter.push_back(hand_measurement(tx, s, rx));

  // Frozen composition: p_detect * likelihood / (mu_fa * clutter).
  CHECK(g_factor(tx, s, true, 1, frame, rx, p) ==
        doctest::Approx(2179.193013364889).epsilon(1e-9));
  CHECK(g_factor(tx, s, true, 0, frame, rx, p) == doctest::Approx(0.05));
  CHECK(g_factor(tx, s, false, 0, frame, rx, p) == 1.0);
  CHECK(g_factor(tx, s, false, 1, frame, rx, p) == 0.0);
  CHECK_THROWS_AS(g_factor(tx, s, true, 2, frame, rx, p), std::invalid_argument);
  CHECK_THROWS_AS(g_factor(tx, s, true, -1, frame, rx, p), std::invalid_argument);
}

TEST_CASE("birth weight composition") {
  const ModelParams p = benchmark_model();
  const Vec2 tx{0.0, 10.0};
  const Vec2 s{4.0, 3.0};
  const Pose rx{{0.0, 0.0}, {1.0, 0.0}};
  const auto z = hand_measurement(tx, s, rx);
  CHECK(h_factor_weight(tx, s, z, rx, 0.05, p) ==
        doctest::Approx(114.69436912446787).epsilon(1e-9));
  // Linear in the birth intensity.
  CHECK(h_factor_weight(tx, s, z, rx, 0.1, p) ==
        doctest::Approx(2.0 * h_factor_weight(tx, s, z, rx, 0.05, p)));
}

TEST_CASE("pairing consistency factor, exhaustive") {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int k = 1; k <= 2; ++k)
        for (int m = 1; m <= 2; ++m) {
          const bool conflict = (a == m) != (b == k);
          CHECK(psi(a, b, k, m) == (conflict ? 0.0 : 1.0));
        }
}

TEST_CASE("transition samples follow the walk scale") {
  ModelParams p = benchmark_model();
  RandomStream rng(3);
  const Vec2 prev{5.0, -2.0};
  const int N = 20000;
  double sx = 0.0, sx2 = 0.0, sy = 0.0;
  for (int i = 0; i < N; ++i) {
    const Vec2 v = transition_sample_ps(prev, p, rng);
    sx += v.x - prev.x;
    sy += v.y - prev.y;
    sx2 += (v.x - prev.x) * (v.x - prev.x);
  }
  CHECK(std::abs(sx / N) < 0.02);
  CHECK(std::abs(sy / N) < 0.02);
  CHECK(std::sqrt(sx2 / N) == doctest::Approx(p.sigma_ps_walk).epsilon(0.03));

  double tx2 = 0.0;
  for (int i = 0; i < N; ++i) {
    const Vec2 v = transition_sample_tx(prev, p, rng);
    tx2 += (v.x - prev.x) * (v.x - prev.x);
  }
  CHECK(std::sqrt(tx2 / N) == doctest::Approx(p.sigma_tx_walk).epsilon(0.03));
}
