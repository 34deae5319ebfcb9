#include <doctest.h>

#include <cmath>
#include <random>

#include "twistvn/blaschke.hpp"
#include "twistvn/poly.hpp"

using namespace twistvn;

namespace {

// independent zero count of B' in the disk via the argument principle on |z|=1
int winding_of_derivative(const BlaschkeProduct& b, int samples = 1 << 13) {
  double total = 0.0;
  Complex prev = b.derivative(Complex(1.0, 0.0));
  for (int i = 1; i <= samples; ++i) {
    const Complex z = std::polar(1.0, 2.0 * kPi * double(i) / samples);
    const Complex cur = b.derivative(z);
    total += std::arg(cur / prev);
    prev = cur;
  }
  return int(std::lround(total / (2.0 * kPi)));
}

}  // namespace

TEST_CASE("evaluation matches closed forms") {
  const auto id = BlaschkeProduct::power(1);
  CHECK(std::abs(id.evaluate({0.5, 0.0}) - Complex(0.5, 0.0)) < 1e-15);

  const auto sq = BlaschkeProduct::power(2);
  CHECK(std::abs(sq.evaluate({0.0, 1.0}) - Complex(-1.0, 0.0)) < 1e-15);

  const BlaschkeProduct b({{0.5, 0.0}}, 0.0);
  CHECK(std::abs(b.evaluate({0.0, 0.0}) - Complex(-0.5, 0.0)) < 1e-15);
}

TEST_CASE("constructor rejects zeros outside the guard band") {
  CHECK_THROWS_AS(BlaschkeProduct({{1.0 - 1e-10, 0.0}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BlaschkeProduct({}, 0.0), std::invalid_argument);
}

TEST_CASE("derivative: closed forms and finite differences") {
  const auto sq = BlaschkeProduct::power(2);
  CHECK(std::abs(sq.derivative({0.3, 0.0}) - Complex(0.6, 0.0)) < 1e-12);
  const auto id = BlaschkeProduct::power(1);
  CHECK(std::abs(id.derivative({0.2, 0.7}) - Complex(1.0, 0.0)) < 1e-12);

  const BlaschkeProduct b({{0.5, 0.0}, {-0.3, 0.0}}, 0.0);
  const Complex z(0.1, 0.0);
  const double h = 1e-6;
  const Complex fd = (b.evaluate(z + h) - b.evaluate(z - h)) / (2.0 * h);
  CHECK(std::abs(b.derivative(z) - fd) < 1e-7);

  std::mt19937_64 rng(7);
  const auto r = random_blaschke(rng, 3);
  for (int i = 0; i < 100; ++i) {
    const Complex w = std::polar(0.8 * std::sqrt(uniform01(rng)), 2.0 * kPi * uniform01(rng));
    const Complex fd2 = (r.evaluate(w + h) - r.evaluate(w - h)) / (2.0 * h);
    CHECK(std::abs(r.derivative(w) - fd2) < 1e-7);
  }
}

TEST_CASE("critical points: count and residuals") {
  const auto sq = BlaschkeProduct::power(2);
  REQUIRE(sq.critical_points().size() == 1);
  CHECK(std::abs(sq.critical_points()[0]) < 1e-10);

  const auto id = BlaschkeProduct::power(1);
  CHECK(id.critical_points().empty());

  std::mt19937_64 rng(11);
  const auto b = random_blaschke(rng, 3);
  REQUIRE(b.critical_points().size() == 2);
  for (Complex w : b.critical_points()) {
    CHECK(std::abs(w) < 1.0);
    CHECK(std::abs(b.derivative(w)) < 1e-10);
  }
  CHECK(winding_of_derivative(b) == 2);
}

TEST_CASE("boundary preimages") {
  const auto cube = BlaschkeProduct::power(3);
  const auto pre = cube.boundary_preimages({1.0, 0.0});
  REQUIRE(pre.size() == 3);
  CHECK(std::abs(pre[0] - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(pre[1] - std::polar(1.0, 2.0 * kPi / 3.0)) < 1e-12);
  CHECK(std::abs(pre[2] - std::polar(1.0, 4.0 * kPi / 3.0)) < 1e-12);

  const auto id = BlaschkeProduct::power(1);
  const auto pi = id.boundary_preimages({0.0, 1.0});
  REQUIRE(pi.size() == 1);
  CHECK(std::abs(pi[0] - Complex(0.0, 1.0)) < 1e-12);

  std::mt19937_64 rng(13);
  const auto b = random_blaschke(rng, 2);
  const auto pr = b.boundary_preimages({1.0, 0.0});
  REQUIRE(pr.size() == 2);
  for (Complex z : pr) {
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);
    CHECK(std::abs(b.evaluate(z) - Complex(1.0, 0.0)) < 1e-10);
  }
}

TEST_CASE("rational normal form") {
  const auto sq = BlaschkeProduct::power(2);
  REQUIRE(sq.rational().numerator.size() == 3);
  CHECK(std::abs(sq.rational().numerator[2] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(sq.rational().numerator[0]) < 1e-15);
  REQUIRE(sq.rational().denominator.size() == 1);

  const BlaschkeProduct b({{0.5, 0.0}}, 0.0);
  CHECK(std::abs(b.rational().numerator[0] - Complex(-0.5, 0)) < 1e-15);
  CHECK(std::abs(b.rational().numerator[1] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(b.rational().denominator[1] - Complex(-0.5, 0)) < 1e-15);

  std::mt19937_64 rng(17);
  const auto r = random_blaschke(rng, 4);
  for (int i = 0; i < 100; ++i) {
    const Complex z = std::polar(0.95 * std::sqrt(uniform01(rng)), 2.0 * kPi * uniform01(rng));
    const Complex via_product = r.evaluate(z);
    const Complex via_rational = r.rational().eval(z);
    CHECK(std::abs(via_product - via_rational) <= 1e-12 * std::max(1.0, std::abs(via_product)));
  }
}

TEST_CASE("modulus invariants on and inside the circle") {
  std::mt19937_64 rng(19);
  const auto b = random_blaschke(rng, 3);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = std::polar(1.0, 2.0 * kPi * double(i) / 1000.0);
    CHECK(std::abs(std::abs(b.evaluate(z)) - 1.0) < 1e-10);
  }
  for (int i = 0; i < 200; ++i) {
    const Complex z = std::polar(0.99 * std::sqrt(uniform01(rng)), 2.0 * kPi * uniform01(rng));
    CHECK(std::abs(b.evaluate(z)) < 1.0);
  }
  // no critical point on the circle
  double min_deriv = 1e300;
  for (int i = 0; i < 1000; ++i) {
    const Complex z = std::polar(1.0, 2.0 * kPi * double(i) / 1000.0);
    min_deriv = std::min(min_deriv, std::abs(b.derivative(z)));
  }
  CHECK(min_deriv > 0.0);
}
