#pragma once

#include <cassert>
#include <cmath>
#include <numbers>

#include "gridnet/rng.hpp"

namespace gridnet {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double dist2(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Area-uniform point on the disk of given radius. Consumes exactly two
// uniforms (radius first, then angle). The result is clamped back onto the
// disk so x^2 + y^2 <= radius^2 holds even after rounding.
inline Point sample_position(Rng& rng, double radius) {
    assert(radius > 0.0);
    const double r = radius * std::sqrt(rng.uniform01());
    const double theta = 2.0 * std::numbers::pi * rng.uniform01();
    Point p{r * std::cos(theta), r * std::sin(theta)};
    const double d2 = p.x * p.x + p.y * p.y;
    if (d2 > radius * radius) {
        const double scale = radius / std::sqrt(d2);
        p.x *= scale;
        p.y *= scale;
    }
    return p;
}

}  // namespace gridnet
