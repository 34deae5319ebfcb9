#include "twistvn/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "twistvn/errors.hpp"

namespace twistvn {

Complex poly_eval(const std::vector<Complex>& p, Complex z) {
  Complex acc(0.0, 0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& p) {
  if (p.size() <= 1) return {};
  std::vector<Complex> d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * double(i);
  return d;
}

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Complex> out(a.size() + b.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Complex> poly_add(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(std::max(a.size(), b.size()), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

std::vector<Complex> poly_scale(const std::vector<Complex>& a, Complex s) {
  std::vector<Complex> out(a);
  for (auto& c : out) c *= s;
  return out;
}

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> p{Complex(1.0, 0.0)};
  for (Complex r : roots) p = poly_mul(p, {-r, Complex(1.0, 0.0)});
  return p;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& p) {
  double maxcoef = 0.0;
  for (Complex c : p) maxcoef = std::max(maxcoef, std::abs(c));
  if (maxcoef == 0.0) throw NumericalError("poly_roots: zero polynomial");

  int deg = static_cast<int>(p.size()) - 1;
  while (deg > 0 && std::abs(p[deg]) <= 1e-14 * maxcoef) --deg;
  if (deg == 0) return {};

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = Complex(1.0, 0.0);
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i] / p[deg];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalError("poly_roots: eigenvalue iteration did not converge");

  std::vector<Complex> trimmed(p.begin(), p.begin() + deg + 1);
  const auto dp = poly_derivative(trimmed);
  std::vector<Complex> roots(deg);
  for (int i = 0; i < deg; ++i) {
    Complex z = es.eigenvalues()(i);
    // one Newton step; skip when the derivative is tiny (multiple root)
    Complex d = poly_eval(dp, z);
    if (std::abs(d) > 1e-12) z -= poly_eval(trimmed, z) / d;
    roots[i] = z;
  }
  return roots;
}

Poly2 Poly2::monomial(int a, int b, Complex c) {
  Poly2 p;
  p.add_term(a, b, c);
  return p;
}

Poly2& Poly2::add_term(int a, int b, Complex c) {
  for (auto& t : terms_) {
    if (t.a == a && t.b == b) {
      t.c += c;
      return *this;
    }
  }
  terms_.push_back({a, b, c});
  deg1_ = std::max(deg1_, a);
  deg2_ = std::max(deg2_, b);
  return *this;
}

Poly2 Poly2::plus(const Poly2& other) const {
  Poly2 out = *this;
  for (const auto& t : other.terms_) out.add_term(t.a, t.b, t.c);
  return out;
}

Poly2 Poly2::times(const Poly2& other) const {
  Poly2 out;
  for (const auto& s : terms_)
    for (const auto& t : other.terms_) out.add_term(s.a + t.a, s.b + t.b, s.c * t.c);
  return out;
}

Complex Poly2::operator()(Complex z1, Complex z2) const {
  Complex acc(0.0, 0.0);
  for (const auto& t : terms_) {
    Complex m = t.c;
    for (int i = 0; i < t.a; ++i) m *= z1;
    for (int i = 0; i < t.b; ++i) m *= z2;
    acc += m;
  }
  return acc;
}

}  // namespace twistvn
