#include <doctest.h>

#include <random>

#include "twistvn/poly.hpp"
#include "twistvn/symmetric_transforms.hpp"

using namespace twistvn;

namespace {

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("closed-form conversions") {
  const SymmetricVector p{Convention::power, {{3, 0}, {5, 0}}};
  const auto e = power_to_elementary(p);
  CHECK(std::abs(e.values[0] - Complex(3, 0)) < 1e-14);
  CHECK(std::abs(e.values[1] - Complex(2, 0)) < 1e-14);  // (p1^2 - p2)/2

  const SymmetricVector zero{Convention::power, {{0, 0}, {0, 0}, {0, 0}}};
  CHECK(max_diff(power_to_elementary(zero).values, zero.values) < 1e-15);

  const SymmetricVector e11{Convention::elementary, {{1, 0}, {1, 0}}};
  const auto h = elementary_to_homogeneous(e11);
  CHECK(std::abs(h.values[0] - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(h.values[1]) < 1e-14);  // h2 = e1 h1 - e2 = 0
}

TEST_CASE("root-based oracle for d = 3") {
  const std::vector<Complex> roots{{0.1, 0}, {0.2, 0}, {0.3, 0}};
  const auto e = apply_convention(roots, Convention::elementary);
  CHECK(std::abs(e[0] - Complex(0.6, 0)) < 1e-14);
  CHECK(std::abs(e[1] - Complex(0.11, 0)) < 1e-14);
  CHECK(std::abs(e[2] - Complex(0.006, 0)) < 1e-14);

  const auto p = apply_convention(roots, Convention::power);
  CHECK(std::abs(p[1] - Complex(0.14, 0)) < 1e-14);
  CHECK(std::abs(p[2] - Complex(0.036, 0)) < 1e-14);

  const auto h = apply_convention(roots, Convention::homogeneous);
  CHECK(std::abs(h[1] - Complex(0.25, 0)) < 1e-13);  // e1 h1 - e2

  // all conversion paths agree with the direct values
  const SymmetricVector pv{Convention::power, p};
  CHECK(max_diff(convert(pv, Convention::elementary).values, e) < 1e-13);
  CHECK(max_diff(convert(pv, Convention::homogeneous).values, h) < 1e-13);
}

TEST_CASE("power vector reproduced by roots of the elementary polynomial") {
  std::mt19937_64 rng(43);
  const int d = 4;
  std::vector<Complex> pvals(d);
  for (auto& v : pvals) v = Complex(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
  const auto e = power_to_elementary({Convention::power, pvals});

  // monic polynomial with these elementary symmetric functions
  std::vector<Complex> poly(d + 1);
  poly[d] = Complex(1, 0);
  for (int k = 1; k <= d; ++k) poly[d - k] = (k % 2 ? -1.0 : 1.0) * e.values[k - 1];
  const auto roots = poly_roots(poly);
  REQUIRE(roots.size() == std::size_t(d));
  const auto p_back = apply_convention(roots, Convention::power);
  CHECK(max_diff(p_back, pvals) < 1e-10);
}

TEST_CASE("roundtrips are identities") {
  std::mt19937_64 rng(47);
  for (int d : {2, 3, 4}) {
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<Complex> vals(d);
      for (auto& v : vals) v = Complex(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
      const SymmetricVector e{Convention::elementary, vals};
      CHECK(max_diff(power_to_elementary(elementary_to_power(e)).values, vals) < 1e-12 * 100);
      CHECK(max_diff(homogeneous_to_elementary(elementary_to_homogeneous(e)).values, vals) <
            1e-12 * 100);
      const SymmetricVector p{Convention::power, vals};
      CHECK(max_diff(convert(convert(p, Convention::homogeneous), Convention::power).values,
                     vals) < 1e-12 * 100);
    }
  }
}

TEST_CASE("conversions commute with conjugation for real-rooted data") {
  const std::vector<Complex> roots{{0.3, 0}, {-0.5, 0}, {0.7, 0}};
  for (auto conv : {Convention::power, Convention::elementary, Convention::homogeneous}) {
    for (Complex v : apply_convention(roots, conv)) CHECK(std::abs(v.imag()) < 1e-14);
  }
}

TEST_CASE("apply_convention closed forms for d = 2") {
  const Complex a(0.3, 0.2), b(-0.1, 0.5);
  const auto pw = apply_convention({a, b}, Convention::power);
  CHECK(std::abs(pw[0] - (a + b)) < 1e-14);
  CHECK(std::abs(pw[1] - (a * a + b * b)) < 1e-14);
  const auto el = apply_convention({a, b}, Convention::elementary);
  CHECK(std::abs(el[0] - (a + b)) < 1e-14);
  CHECK(std::abs(el[1] - a * b) < 1e-14);
}
