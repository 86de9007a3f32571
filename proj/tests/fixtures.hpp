#pragma once

#include <cmath>
#include <functional>

#include "legcalc/legcalc.hpp"

namespace legcalc::testing {

// Constant-phi circle (z, r, phi) = (cos a, 2 + sin a, 0):
// h = 0, r = +1 (counterclockwise projection), w = 0, beta = 0.
inline CylCurve circle_cyl(int n = 512) {
  CylCurve c;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double a = kTwoPi * t;
    c.samples.push_back({t, std::cos(a), 2.0 + std::sin(a), 0.0});
  }
  return c;
}

// (z, r, phi) = (0.5 sin a, 2 + 0.5 cos a, a): a (1,1)-curve around the
// z-axis; h = 1, r = -1, w = 0, beta = -1.
inline CylCurve torus_cyl(int n = 512) {
  CylCurve c;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double a = kTwoPi * t;
    c.samples.push_back({t, 0.5 * std::sin(a), 2.0 + 0.5 * std::cos(a), a});
  }
  return c;
}

// Lifted lemniscate (x, y, theta) = (sin 2a, 2 + sin a, lift * 0.5 cos a)
// with a phase offset so no sample lands on the double point (0, 2).
// h = 0, r = 0, one double point; lift=+1 gives (h+, h-) = (0, 1) and
// w = -1, lift=-1 gives (1, 0) and w = +1.
inline HKnot figure8_hknot(int lift = +1, int n = 512, double lambda = 0.5) {
  HKnot k;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double a = kTwoPi * t + 0.4;
    k.points.push_back(
        {t, std::sin(2.0 * a), 2.0 + std::sin(a), lift * lambda * std::cos(a)});
  }
  return k;
}

// Embedded projection (cos a, 2 + sin a) with theta winding h:
// r = +1, w = 0, beta = h.
inline HKnot embedded_hknot(int h, int n = 512) {
  HKnot k;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double a = kTwoPi * t;
    k.points.push_back({t, std::cos(a), 2.0 + std::sin(a), h * a});
  }
  return k;
}

// Ellipse (1.5 cos a, 2 + 0.7 sin a) whose top strand is pushed down across
// the bottom strand by a smooth bump of the given depth (a Reidemeister-II
// style finger). depth = 0 is embedded; depth = 1.7 creates exactly two
// double points whose weights cancel. theta = 0.7 sin a keeps the lift
// embedded at the crossings.
inline HKnot rii_hknot(double depth, int n = 512) {
  HKnot k;
  const double sigma = 0.8;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double a = kTwoPi * t + 0.13;
    const double c = wrap_to_pi(a - kPi / 2.0);
    double y = 2.0 + 0.7 * std::sin(a);
    if (std::abs(c) < sigma) {
      const double s = std::cos(kPi * c / (2.0 * sigma));
      y -= depth * s * s;
    }
    k.points.push_back({t, 1.5 * std::cos(a), y, 0.7 * std::sin(a)});
  }
  return k;
}

}  // namespace legcalc::testing
