// Copyright (c) 2026 The logmppi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>

namespace logmppi {

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) noexcept {
  constexpr double pi = std::numbers::pi;
  while (a > pi) a -= 2.0 * pi;
  while (a <= -pi) a += 2.0 * pi;
  return a;
}

/// Planar pose: position in meters, heading in radians.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

/// Circular obstacle or body footprint, world coordinates in meters.
struct Disc {
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;

  friend bool operator==(const Disc&, const Disc&) = default;
};

inline double distance(double ax, double ay, double bx, double by) noexcept {
  return std::hypot(bx - ax, by - ay);
}

/// True when two discs overlap (touching counts as overlap).
inline bool discs_overlap(const Disc& a, const Disc& b) noexcept {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double r = a.radius + b.radius;
  return dx * dx + dy * dy <= r * r;
}

}  // namespace logmppi
