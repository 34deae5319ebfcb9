#pragma once

#include <random>
#include <vector>

#include "twistvn/types.hpp"

namespace twistvn {

/// Rational normal form of a finite Blaschke product: numerator and
/// denominator coefficients in ascending degree order. The denominator
/// has no zeros in the closed unit disk.
struct RationalForm {
  std::vector<Complex> numerator;
  std::vector<Complex> denominator;

  Complex eval(Complex z) const;
};

/// A finite Blaschke product B(z) = e^{i theta} prod_j (z - a_j)/(1 - conj(a_j) z)
/// with all zeros strictly inside the unit disk. Zero multiplicity is
/// encoded by repetition. Immutable after construction; derived data
/// (rational form, critical points and values) is computed once in the
/// constructor so every operation is a pure read.
class BlaschkeProduct {
 public:
  BlaschkeProduct(std::vector<Complex> zeros, double phase);

  /// The monomial map z^k.
  static BlaschkeProduct power(int k);

  int order() const { return static_cast<int>(zeros_.size()); }
  const std::vector<Complex>& zeros() const { return zeros_; }
  double phase() const { return phase_; }
  const RationalForm& rational() const { return rational_; }

  Complex evaluate(Complex z) const;

  /// Complex derivative B'(z), computed from the logarithmic-derivative
  /// sum; falls back to the product rule when z is within 1e-6 of a zero.
  Complex derivative(Complex z) const;

  /// Zeros of B' inside the unit disk, with multiplicity. Always exactly
  /// order-1 points.
  const std::vector<Complex>& critical_points() const { return critical_points_; }

  /// B evaluated at the critical points (not deduplicated).
  const std::vector<Complex>& critical_values() const { return critical_values_; }

  /// The order-many solutions of B(z) = c on the unit circle, for |c| = 1,
  /// in anti-clockwise order starting from the smallest argument.
  std::vector<Complex> boundary_preimages(Complex c) const;

 private:
  std::vector<Complex> zeros_;
  double phase_ = 0.0;
  RationalForm rational_;
  std::vector<Complex> critical_points_;
  std::vector<Complex> critical_values_;
};

/// Seeded random product: `order` zeros drawn uniformly from the disk of
/// radius 0.8 with pairwise separation at least 0.05, and a uniform phase.
BlaschkeProduct random_blaschke(std::mt19937_64& rng, int order);

}  // namespace twistvn
