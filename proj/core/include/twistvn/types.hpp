#pragma once

#include <complex>
#include <random>

namespace twistvn {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Uniform double in [0,1) from the top 53 bits of a mersenne draw.
/// Used instead of std::uniform_real_distribution so that seeded runs
/// reproduce bit-for-bit regardless of the standard library.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Complex unit_dir(Complex v) {
  const double m = std::abs(v);
  return m == 0.0 ? Complex(1.0, 0.0) : v / m;
}

/// Argument normalized to [0, 2*pi).
inline double arg_2pi(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

}  // namespace twistvn
