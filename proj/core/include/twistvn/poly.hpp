#pragma once

#include <vector>

#include "twistvn/types.hpp"

namespace twistvn {

// Univariate polynomials are coefficient vectors in ascending degree order:
// p[0] + p[1] z + ... + p[n] z^n.

Complex poly_eval(const std::vector<Complex>& p, Complex z);
std::vector<Complex> poly_derivative(const std::vector<Complex>& p);
std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b);
std::vector<Complex> poly_add(const std::vector<Complex>& a, const std::vector<Complex>& b);
std::vector<Complex> poly_scale(const std::vector<Complex>& a, Complex s);
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots);

/// All complex roots via companion-matrix eigenvalues followed by one
/// Newton polish step. Leading coefficients below 1e-14 (relative to the
/// largest coefficient) are trimmed first.
std::vector<Complex> poly_roots(const std::vector<Complex>& p);

/// Sparse bivariate polynomial, used for operator symbols and the
/// polynomial component maps of the image-closure checks.
class Poly2 {
 public:
  struct Term {
    int a = 0;  // degree in z1
    int b = 0;  // degree in z2
    Complex c;
  };

  Poly2() = default;

  static Poly2 monomial(int a, int b, Complex c = Complex(1.0, 0.0));

  Poly2& add_term(int a, int b, Complex c);
  Poly2 plus(const Poly2& other) const;
  Poly2 times(const Poly2& other) const;

  Complex operator()(Complex z1, Complex z2) const;

  int degree1() const { return deg1_; }
  int degree2() const { return deg2_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
  int deg1_ = 0;
  int deg2_ = 0;
};

}  // namespace twistvn
