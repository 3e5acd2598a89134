#pragma once

#include <cmath>

namespace dimer {

constexpr double two_pi = 6.283185307179586476925286766559;
constexpr double pi = 3.1415926535897932384626433832795;

// wrap into [0, 2pi)
inline double wrap_2pi(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

// wrap into (-pi, pi]
inline double wrap_pi(double x) {
  double y = std::fmod(x + pi, two_pi);
  if (y <= 0.0) y += two_pi;
  return y - pi;
}

}  // namespace dimer
