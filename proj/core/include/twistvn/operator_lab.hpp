#pragma once

#include <Eigen/Dense>
#include <vector>

#include "twistvn/poly.hpp"
#include "twistvn/symmetric_transforms.hpp"

namespace twistvn {

/// Truncated weighted monomial slice of the Bergman space of the bidisk:
/// basis z1^p z2^q for 0 <= p,q < N, with norm^2 weight pi^2/((p+1)(q+1)).
struct TruncatedBergmanSpace {
  int N = 0;

  double weight(int p, int q) const { return kPi * kPi / (double(p + 1) * double(q + 1)); }
  int index(int p, int q) const { return p * N + q; }
  int dim() const { return N * N; }
};

/// Compression of a polynomial multiplication operator to the truncated
/// slice, in the orthonormalized basis (so the adjoint is the conjugate
/// transpose exactly).
struct TruncatedOperator {
  Eigen::MatrixXcd matrix;
  int N = 0;
  int deg1 = 0, deg2 = 0;
};

TruncatedOperator mult_matrix(const Poly2& symbol, int N);

struct CommutantResult {
  int dim = 0;
  double gap = 0.0;  // smallest kept singular value / largest discarded
  bool low_confidence = false;  // gap below 1e4
  std::vector<Eigen::MatrixXcd> basis;
  int N = 0;
  int margin = 0;  // commutator equations imposed on indices < N - margin
};

/// Dimension of {X : [X, M_i] = 0, [X, M_i*] = 0 for all i} on the
/// truncated slice, with the commutator equations restricted to the
/// truncation-exact region: [X, M_i] is imposed on all rows but only on
/// columns with both indices < N - D, [X, M_i*] on all columns but only on
/// rows with both indices < N - D (D = max per-variable symbol degree; a
/// larger margin may be passed in). Unknown entries that appear in no
/// equation are pinned to zero. The nullspace is found blockwise (the
/// equations split the unknowns into independent groups) by dense SVD with
/// relative threshold tau.
CommutantResult joint_commutant_dim(const std::vector<Poly2>& symbols, int N, double tau = 1e-8,
                                    int margin_override = -1);

struct AbelianCheck {
  bool abelian = false;
  double max_residual = 0.0;
};

/// Pairwise commutators of the basis, measured on the block of indices
/// with p, q < restrict_dim (products of compressions are only reliable
/// away from the truncation boundary). Abelian iff the worst normalized
/// Frobenius residual stays below 1e-6.
AbelianCheck commutant_abelian_check(const std::vector<Eigen::MatrixXcd>& basis, int restrict_dim,
                                     int N);

/// Safe restriction depth for commutator products of the (z^k, z^l)
/// family at truncation N.
int abelian_check_depth(int k, int l, int N);

/// Symbols of the twisted map built from z^k and z^l, in the requested
/// symmetric-map convention. All three conventions induce the same
/// commutant.
std::vector<Poly2> twisted_power_symbols(int k, int l, Convention c = Convention::power);

}  // namespace twistvn
