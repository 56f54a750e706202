#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bptrack/geometry.hpp"
#include "bptrack/scenario.hpp"

using namespace bptrack;

namespace {
constexpr double kPi = 3.14159265358979323846;

ScenarioConfig tiny_scene() {
  ScenarioConfig s;
  s.tx_position = {0.0, 20.0};
  s.static_scatterers = {{-8.0, 5.0}, {9.0, 7.0}};
  s.target_waypoints = {{0.0, 5.0}};
  s.rx_waypoints = {{0.0, 0.0}};
  s.n_steps = 1;
  s.sigma_d = 0.1;
  s.sigma_theta = 0.01;
  s.fa_theta_range[1] = kPi;
  return s;
}
}  // namespace

TEST_CASE("waypoint path walks segments at constant speed") {
  const auto path = waypoint_path({{0.0, 0.0}, {2.0, 0.0}, {2.0, 2.0}}, 1.0, 5);
  REQUIRE(path.size() == 5);
  CHECK(path[0].position == Vec2{1.0, 0.0});
  CHECK(path[0].orientation == Vec2{1.0, 0.0});
  // Exactly at the corner the outgoing segment sets the heading.
  CHECK(path[1].position == Vec2{2.0, 0.0});
  CHECK(path[1].orientation.x == doctest::Approx(0.0));
  CHECK(path[1].orientation.y == doctest::Approx(1.0));
  CHECK(path[2].position.y == doctest::Approx(1.0));
  // Past the final waypoint the pose is held.
  CHECK(path[3].position == Vec2{2.0, 2.0});
  CHECK(path[4].position == Vec2{2.0, 2.0});
  CHECK(path[4].orientation.y == doctest::Approx(1.0));
}

TEST_CASE("waypoint path degenerate inputs") {
  const auto fixed = waypoint_path({{3.0, 4.0}}, 2.0, 3);
  for (const auto& p : fixed) {
    CHECK(p.position == Vec2{3.0, 4.0});
    CHECK(p.orientation == Vec2{1.0, 0.0});
  }
  CHECK_THROWS_AS(waypoint_path({}, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(waypoint_path({{0.0, 0.0}, {1.0, 0.0}}, -1.0, 3),
                  std::invalid_argument);
}

TEST_CASE("benchmark scenario shape") {
  const auto s = benchmark_scenario();
  CHECK(s.tx_position == Vec2{0.0, 30.0});
  CHECK(s.static_scatterers.size() == 4);
  CHECK(s.n_steps == 200);
  const auto truth = make_ground_truth(s);
  REQUIRE(truth.size() == 200);
  CHECK(truth.front().step == 1);
  CHECK(truth.back().step == 200);
  // Receiver reaches the first corner (30, -20) at step 30 and turns upward.
  CHECK(truth[29].rx.position.x == doctest::Approx(30.0));
  CHECK(truth[29].rx.position.y == doctest::Approx(-20.0));
  CHECK(truth[29].rx.orientation.y == doctest::Approx(1.0));
  // Target leads the scatterer list and moves 0.4 m per step; statics hold.
  const double step_len = distance(truth[10].scatterers[0], truth[11].scatterers[0]);
  CHECK(step_len == doctest::Approx(0.4));
  for (std::size_t k = 1; k < truth[0].scatterers.size(); ++k)
    CHECK(truth[50].scatterers[k] == truth[199].scatterers[k]);
}

TEST_CASE("synthesized frame without noise reproduces geometry") {
  ScenarioConfig s = tiny_scene();
  s.sigma_d = 0.0;
  s.sigma_theta = 0.0;
  const auto truth = make_ground_truth(s);
  RandomStream rng(5);
  const auto frame = synthesize_frame(truth[0], s, rng);
  CHECK(frame.step == 1);
  REQUIRE(frame.direct.has_value());
  CHECK(frame.direct->theta == doctest::Approx(aoa(s.tx_position, truth[0].rx)));
  REQUIRE(frame.scatter.size() == 3);  // p_detect = 1, mu_fa = 0
  // Every true scatterer appears with its exact measurement pair.
  for (const auto& sc : truth[0].scatterers) {
    const double d = relative_distance(s.tx_position, sc, truth[0].rx.position);
    const double th = aoa(sc, truth[0].rx);
    bool found = false;
    for (const auto& m : frame.scatter)
      found = found || (std::abs(m.rel_distance - d) < 1e-12 &&
                        std::abs(m.theta - th) < 1e-12);
    CHECK(found);
  }
}

TEST_CASE("detection and false alarm counts match their laws") {
  ScenarioConfig s = tiny_scene();
  s.p_detect = 0.7;
  s.mu_fa = 3.0;
  const auto truth = make_ground_truth(s);
  RandomStream rng(11);
  const int N = 4000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < N; ++i) {
    const auto frame = synthesize_frame(truth[0], s, rng);
    const double c = static_cast<double>(frame.scatter.size());
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / N;
  const double var = sum2 / N - mean * mean;
  // Binomial(3, 0.7) + Poisson(3): mean 5.1, variance 3.63.
  CHECK(mean == doctest::Approx(5.1).epsilon(0.03));
  CHECK(var == doctest::Approx(3.63).epsilon(0.12));
}

TEST_CASE("measurement noise has the configured scale") {
  ScenarioConfig s = tiny_scene();
  const auto truth = make_ground_truth(s);
  RandomStream rng(13);
  const int N = 3000;
  double sum = 0.0, sum2 = 0.0;
  int n = 0;
  for (int i = 0; i < N; ++i) {
    const auto frame = synthesize_frame(truth[0], s, rng);
    for (const auto& m : frame.scatter) {
      // Attribute each measurement to the nearest true excess path; the three
      // true values are separated by meters while sigma_d is 0.1.
      double best = 1e9;
      for (const auto& sc : truth[0].scatterers) {
        const double r = m.rel_distance -
                         relative_distance(s.tx_position, sc, truth[0].rx.position);
        if (std::abs(r) < std::abs(best)) best = r;
      }
      sum += best;
      sum2 += best * best;
      ++n;
    }
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::abs(mean) < 0.01);
  CHECK(sd == doctest::Approx(s.sigma_d).epsilon(0.05));
}

TEST_CASE("synthesis is reproducible for a fixed seed") {
  ScenarioConfig s = tiny_scene();
  s.n_steps = 20;
  s.p_detect = 0.8;
  s.mu_fa = 2.0;
  const auto truth = make_ground_truth(s);
  RandomStream a(99), b(99), c(100);
  const auto fa = synthesize_all(truth, s, a);
  const auto fb = synthesize_all(truth, s, b);
  const auto fc = synthesize_all(truth, s, c);
  REQUIRE(fa.size() == fb.size());
  bool identical = true, differs = false;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    identical = identical && fa[i].scatter.size() == fb[i].scatter.size();
    for (std::size_t m = 0; identical && m < fa[i].scatter.size(); ++m)
      identical = fa[i].scatter[m].rel_distance == fb[i].scatter[m].rel_distance &&
                  fa[i].scatter[m].theta == fb[i].scatter[m].theta;
    differs = differs || fa[i].scatter.size() != fc[i].scatter.size();
  }
  CHECK(identical);
  CHECK(differs);
}
