#include "bptrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bptrack {

double relative_distance(const Vec2& tx, const Vec2& scatterer, const Vec2& rx) {
  return distance(scatterer, tx) + distance(rx, scatterer) - distance(tx, rx);
}

double aoa(const Vec2& target, const Pose& rx) {
  const Vec2 to_target = target - rx.position;
  const double n = to_target.norm();
  if (n == 0.0) throw std::invalid_argument("aoa: target coincides with receiver");
  // Clamp guards acos against rounding when the vectors are (anti)parallel.
  const double c = std::clamp(to_target.dot(rx.orientation) / n, -1.0, 1.0);
  return std::acos(c);
}

std::pair<Vec2, Vec2> ambiguous_directions(const Pose& rx, double theta) {
  return {rotated(rx.orientation, theta), rotated(rx.orientation, -theta)};
}

bool try_ray_ellipse_range(const Vec2& tx, const Pose& rx, const Vec2& u, double d,
                           double& r) {
  if (d < 0.0) return false;
  const Vec2 w = rx.position - tx;
  const double s = d + w.norm();
  const double denom = 2.0 * (s + u.dot(w));
  if (denom < 1e-12) return false;
  r = (s * s - w.squared_norm()) / denom;
  return true;
}

double ray_ellipse_range(const Vec2& tx, const Pose& rx, const Vec2& u, double d) {
  if (d < 0.0) throw std::domain_error("ray_ellipse_range: negative relative distance");
  double r = 0.0;
  if (!try_ray_ellipse_range(tx, rx, u, d, r))
    throw std::domain_error("ray_ellipse_range: degenerate ellipse-ray");
  return r;
}

std::pair<Vec2, Vec2> position_from_direct(const Vec2& tx, const Pose& rx, double d,
                                           double theta) {
  const auto [up, um] = ambiguous_directions(rx, theta);
  return {rx.position + ray_ellipse_range(tx, rx, up, d) * up,
          rx.position + ray_ellipse_range(tx, rx, um, d) * um};
}

}  // namespace bptrack
