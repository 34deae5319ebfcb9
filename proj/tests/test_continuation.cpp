#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "twistvn/continuation.hpp"
#include "twistvn/errors.hpp"

using namespace twistvn;

namespace {

// naive independent root localization: Newton from a coarse grid of starts
std::vector<Complex> grid_newton_roots(const BlaschkeProduct& b, Complex c) {
  std::vector<Complex> roots;
  for (int i = -20; i <= 20; ++i) {
    for (int j = -20; j <= 20; ++j) {
      Complex z(i / 21.0, j / 21.0);
      if (std::abs(z) > 0.999) continue;
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        const Complex f = b.evaluate(z) - c;
        if (std::abs(f) < 1e-12) {
          ok = true;
          break;
        }
        const Complex d = b.derivative(z);
        if (std::abs(d) < 1e-14 || std::abs(z) > 2.0) break;
        z -= f / d;
      }
      if (!ok || std::abs(z) >= 1.0) continue;
      bool dup = false;
      for (Complex r : roots)
        if (std::abs(r - z) < 1e-7) dup = true;
      if (!dup) roots.push_back(z);
    }
  }
  return roots;
}

}  // namespace

TEST_CASE("solve_fiber closed forms") {
  const auto sq = BlaschkeProduct::power(2);
  const auto f = solve_fiber(sq, {0.25, 0.0});
  REQUIRE(f.size() == 2);
  CHECK(std::abs(f[0] - Complex(-0.5, 0.0)) < 1e-12);
  CHECK(std::abs(f[1] - Complex(0.5, 0.0)) < 1e-12);

  const auto id = BlaschkeProduct::power(1);
  const auto g = solve_fiber(id, {0.0, 0.3});
  REQUIRE(g.size() == 1);
  CHECK(std::abs(g[0] - Complex(0.0, 0.3)) < 1e-12);
}

TEST_CASE("solve_fiber agrees with grid-Newton localization") {
  const BlaschkeProduct b({{0.5, 0.0}, {-0.5, 0.0}}, 0.0);
  const Complex c(0.1, 0.0);
  const auto fiber = solve_fiber(b, c);
  const auto brute = grid_newton_roots(b, c);
  REQUIRE(fiber.size() == 2);
  REQUIRE(brute.size() == 2);
  for (Complex r : brute) {
    double best = 1e300;
    for (Complex w : fiber) best = std::min(best, std::abs(w - r));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("solve_fiber rejects near-critical values") {
  const auto sq = BlaschkeProduct::power(2);  // critical value 0
  CHECK_THROWS_AS(solve_fiber(sq, {1e-9, 0.0}), CriticalValueError);
}

TEST_CASE("degree-1 loop gives the identity") {
  const auto id = BlaschkeProduct::power(1);
  const Complex base(0.3, 0.2);
  const auto fiber = make_fiber(id, id, base);
  const auto loop = make_puncture_loop(base, {0.5, 0.0}, 0.05, {});
  const auto res = track(id, id, loop, fiber);
  CHECK(res.permutation.is_identity());
  CHECK(res.max_residual < 1e-10);
}

TEST_CASE("square-root monodromy is a transposition") {
  const auto sq = BlaschkeProduct::power(2);
  const auto id = BlaschkeProduct::power(1);
  const Complex base(0.4, 0.1);
  const auto fiber = make_fiber(sq, id, base);
  REQUIRE(fiber.size() == 2);
  const std::vector<Complex> punctures{{0.0, 0.0}};
  const auto loop = make_puncture_loop(base, {0.0, 0.0}, 0.1, punctures);
  const auto res = track(sq, id, loop, fiber);
  CHECK(res.permutation.map == std::vector<int>{1, 0});
}

TEST_CASE("loop inversion and concatenation identities") {
  const auto b6 = BlaschkeProduct::power(6);
  const auto b4 = BlaschkeProduct::power(4);
  const Complex base(0.5, 0.3);
  const auto fiber = make_fiber(b6, b4, base);
  REQUIRE(fiber.size() == 6);
  const std::vector<Complex> punctures{{0.0, 0.0}};
  const auto loop = make_puncture_loop(base, {0.0, 0.0}, 0.1, punctures);

  const auto fwd = track(b6, b4, loop, fiber);
  auto rev_spec = loop;
  std::reverse(rev_spec.nodes.begin(), rev_spec.nodes.end());
  const auto rev = track(b6, b4, rev_spec, fiber);
  CHECK(rev.permutation == fwd.permutation.inverse());

  auto doubled = loop.nodes;
  doubled.insert(doubled.end(), loop.nodes.begin() + 1, loop.nodes.end());
  const auto twice = track(b6, b4, PathSpec::polyline(doubled), fiber);
  CHECK(twice.permutation == Permutation::compose(fwd.permutation, fwd.permutation));

  // orbit structure of the loop permutation: gcd(6,4) = 2 cycles
  std::vector<bool> seen(6, false);
  int cycles = 0;
  for (int i = 0; i < 6; ++i) {
    if (seen[i]) continue;
    ++cycles;
    int j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = fwd.permutation(j);
    }
  }
  CHECK(cycles == 2);
}

TEST_CASE("homotopy stability: doubling samples keeps the permutation") {
  const auto b3 = BlaschkeProduct::power(3);
  const auto b2 = BlaschkeProduct::power(2);
  const Complex base(0.45, -0.2);
  const auto fiber = make_fiber(b3, b2, base);
  const std::vector<Complex> punctures{{0.0, 0.0}};
  const auto coarse = make_puncture_loop(base, {0.0, 0.0}, 0.1, punctures, 64);
  const auto fine = make_puncture_loop(base, {0.0, 0.0}, 0.1, punctures, 128);
  CHECK(track(b3, b2, coarse, fiber).permutation == track(b3, b2, fine, fiber).permutation);
}

TEST_CASE("germ transport") {
  const auto id = BlaschkeProduct::power(1);
  CHECK(std::abs(transport_germ(id, id, {0.2, 0.0}, {0.0, 0.5}, {0.2, 0.0}, {}) -
                 Complex(0.0, 0.5)) < 1e-10);

  const auto sq = BlaschkeProduct::power(2);
  CHECK(std::abs(transport_germ(sq, sq, {0.5, 0.0}, {0.5, 0.0}, {-0.5, 0.0}, {}) -
                 Complex(-0.5, 0.0)) < 1e-12);

  // square root continued along the real segment stays on the principal branch
  const std::vector<Complex> punctures{{0.0, 0.0}};
  const Complex moved =
      transport_germ(sq, id, {0.25, 0.0}, {0.16, 0.0}, {0.5, 0.0}, punctures);
  CHECK(std::abs(moved - Complex(0.4, 0.0)) < 1e-9);
}

TEST_CASE("path validation catches puncture crossings") {
  const std::vector<Complex> punctures{{0.5, 0.0}};
  auto seg = PathSpec::segment({0.0, 0.0}, {0.8, 0.0});
  CHECK_THROWS_AS(seg.validate(punctures, 0.05), PathTooClose);
  auto safe = PathSpec::segment({0.0, 0.0}, {0.0, 0.8});
  CHECK_NOTHROW(safe.validate(punctures, 0.05));
}
