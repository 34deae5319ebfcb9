#include "twistvn/blaschke.hpp"

#include <algorithm>
#include <cmath>

#include "twistvn/errors.hpp"
#include "twistvn/poly.hpp"

namespace twistvn {

namespace {

constexpr double kZeroGuardBand = 1e-9;
constexpr double kPoleGuard = 1e-14;

}  // namespace

Complex RationalForm::eval(Complex z) const {
  return poly_eval(numerator, z) / poly_eval(denominator, z);
}

BlaschkeProduct::BlaschkeProduct(std::vector<Complex> zeros, double phase)
    : zeros_(std::move(zeros)) {
  if (zeros_.empty())
    throw std::invalid_argument("BlaschkeProduct: at least one zero required (order >= 1)");
  for (Complex a : zeros_) {
    if (std::abs(a) >= 1.0 - kZeroGuardBand)
      throw std::invalid_argument("BlaschkeProduct: zero too close to the unit circle");
  }
  phase_ = std::fmod(phase, 2.0 * kPi);
  if (phase_ < 0.0) phase_ += 2.0 * kPi;

  // rational normal form
  std::vector<Complex> num{std::polar(1.0, phase_)};
  std::vector<Complex> den{Complex(1.0, 0.0)};
  for (Complex a : zeros_) {
    num = poly_mul(num, {-a, Complex(1.0, 0.0)});
    den = poly_mul(den, {Complex(1.0, 0.0), -std::conj(a)});
  }
  while (den.size() > 1 && std::abs(den.back()) < 1e-15) den.pop_back();
  rational_ = RationalForm{std::move(num), std::move(den)};

  // critical points: zeros of N'Q - NQ' inside the disk
  const auto& n = rational_.numerator;
  const auto& d = rational_.denominator;
  auto num_deriv = poly_add(poly_mul(poly_derivative(n), d),
                            poly_scale(poly_mul(n, poly_derivative(d)), Complex(-1.0, 0.0)));
  auto candidates = order() == 1 ? std::vector<Complex>{} : poly_roots(num_deriv);
  for (Complex w : candidates)
    if (std::abs(w) < 1.0) critical_points_.push_back(w);
  if (static_cast<int>(critical_points_.size()) != order() - 1)
    throw NumericalError("BlaschkeProduct: critical point count inside the disk != order-1");
  std::sort(critical_points_.begin(), critical_points_.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  critical_values_.reserve(critical_points_.size());
  for (Complex w : critical_points_) critical_values_.push_back(evaluate(w));
}

BlaschkeProduct BlaschkeProduct::power(int k) {
  if (k < 1) throw std::invalid_argument("BlaschkeProduct::power: k >= 1 required");
  return BlaschkeProduct(std::vector<Complex>(k, Complex(0.0, 0.0)), 0.0);
}

Complex BlaschkeProduct::evaluate(Complex z) const {
  Complex out = std::polar(1.0, phase_);
  for (Complex a : zeros_) {
    Complex den = Complex(1.0, 0.0) - std::conj(a) * z;
    if (std::abs(den) < kPoleGuard)
      throw std::domain_error("BlaschkeProduct::evaluate: z too close to a pole");
    out *= (z - a) / den;
  }
  return out;
}

Complex BlaschkeProduct::derivative(Complex z) const {
  double min_zero_dist = 1e300;
  for (Complex a : zeros_) min_zero_dist = std::min(min_zero_dist, std::abs(z - a));

  if (min_zero_dist > 1e-6) {
    // logarithmic derivative: B'/B = sum 1/(z-a) + conj(a)/(1-conj(a)z)
    Complex sum(0.0, 0.0);
    for (Complex a : zeros_) {
      Complex den = Complex(1.0, 0.0) - std::conj(a) * z;
      if (std::abs(den) < kPoleGuard)
        throw std::domain_error("BlaschkeProduct::derivative: z too close to a pole");
      sum += Complex(1.0, 0.0) / (z - a) + std::conj(a) / den;
    }
    return evaluate(z) * sum;
  }

  // product rule, valid at the zeros themselves
  const int n = order();
  std::vector<Complex> factor(n), dfactor(n);
  for (int j = 0; j < n; ++j) {
    Complex a = zeros_[j];
    Complex den = Complex(1.0, 0.0) - std::conj(a) * z;
    if (std::abs(den) < kPoleGuard)
      throw std::domain_error("BlaschkeProduct::derivative: z too close to a pole");
    factor[j] = (z - a) / den;
    dfactor[j] = (1.0 - std::norm(a)) / (den * den);
  }
  Complex out(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    Complex term = dfactor[j];
    for (int k = 0; k < n; ++k)
      if (k != j) term *= factor[k];
    out += term;
  }
  return std::polar(1.0, phase_) * out;
}

std::vector<Complex> BlaschkeProduct::boundary_preimages(Complex c) const {
  if (std::abs(std::abs(c) - 1.0) > 1e-9)
    throw std::invalid_argument("boundary_preimages: |c| = 1 required");

  // solutions of numerator(z) - c*denominator(z) = 0; all lie on the circle
  auto p = poly_add(rational_.numerator, poly_scale(rational_.denominator, -c));
  auto roots = poly_roots(p);
  if (static_cast<int>(roots.size()) != order())
    throw NumericalError("boundary_preimages: unexpected root count");

  for (Complex& z : roots) {
    z /= std::abs(z);
    for (int it = 0; it < 3; ++it) {
      Complex f = evaluate(z) - c;
      Complex d = derivative(z);
      if (std::abs(d) < 1e-14) break;
      z -= f / d;
      z /= std::abs(z);
    }
    if (std::abs(evaluate(z) - c) > 1e-10)
      throw NumericalError("boundary_preimages: residual too large after polish");
  }
  std::sort(roots.begin(), roots.end(),
            [](Complex a, Complex b) { return arg_2pi(a) < arg_2pi(b); });
  return roots;
}

BlaschkeProduct random_blaschke(std::mt19937_64& rng, int order) {
  if (order < 1) throw std::invalid_argument("random_blaschke: order >= 1 required");
  std::vector<Complex> zeros;
  while (static_cast<int>(zeros.size()) < order) {
    double r = 0.8 * std::sqrt(uniform01(rng));
    double t = 2.0 * kPi * uniform01(rng);
    Complex a = std::polar(r, t);
    bool ok = true;
    for (Complex b : zeros)
      if (std::abs(a - b) < 0.05) ok = false;
    if (ok) zeros.push_back(a);
  }
  double phase = 2.0 * kPi * uniform01(rng);
  return BlaschkeProduct(std::move(zeros), phase);
}

}  // namespace twistvn
