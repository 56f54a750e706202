#pragma once

#include <utility>

#include "bptrack/vec2.hpp"

namespace bptrack {

// Bistatic geometry for one transmitter, one receiver and point scatterers,
// all in the plane. Angles are radians.

// Propagation-path excess of the scattered path over the direct path:
//   ||scatterer - tx|| + ||rx - scatterer|| - ||tx - rx||.
// Non-negative by the triangle inequality; zero when the scatterer lies on
// the tx-rx segment.
double relative_distance(const Vec2& tx, const Vec2& scatterer, const Vec2& rx);

// Angle between the receiver heading and the direction to target, in [0, pi].
// The sign of the angle is unobservable; see ambiguous_directions.
// Throws std::invalid_argument when target coincides with the receiver.
double aoa(const Vec2& target, const Pose& rx);

// The two unit directions consistent with an AOA measurement: heading rotated
// by +theta and by -theta.
std::pair<Vec2, Vec2> ambiguous_directions(const Pose& rx, double theta);

// Range r >= 0 along unit direction u from the receiver such that the point
// rx + r*u has the given relative distance d. Closed form: with w = rx - tx
// and s = d + ||w||,  r = (s^2 - ||w||^2) / (2 (s + dot(u, w))).
// Throws std::domain_error when d < 0 or when the denominator falls below
// 1e-12 (d ~ 0 with u aimed at the transmitter; every point of the segment
// is then a solution).
double ray_ellipse_range(const Vec2& tx, const Pose& rx, const Vec2& u, double d);

// Non-throwing variant for hot paths: false instead of throwing, r untouched
// on failure.
bool try_ray_ellipse_range(const Vec2& tx, const Pose& rx, const Vec2& u, double d,
                           double& r);

// Both candidate positions for a scatterer given the measurement pair (d, theta),
// one per ambiguous side. Propagates ray_ellipse_range errors.
std::pair<Vec2, Vec2> position_from_direct(const Vec2& tx, const Pose& rx, double d,
                                           double theta);

}  // namespace bptrack
