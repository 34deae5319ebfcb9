#include <doctest.h>

#include "twistvn/tensor_split.hpp"

using namespace twistvn;

namespace {

// smaller clouds keep the unit tests quick; the margins in these cases are
// enormous compared to the sampling noise
TensorSplitOptions fast_opts() {
  TensorSplitOptions o;
  o.samples_per_map = 20000;
  o.pair_subsample = 3000;
  o.whole_subsample = 1500;
  return o;
}

}  // namespace

TEST_CASE("distinct image closures split") {
  const std::vector<Poly2> f{Poly2::monomial(1, 0)};
  const std::vector<Poly2> g{Poly2::monomial(2, 0, Complex(0.5, 0.0))};
  const auto res = tensor_split_check(f, g, 421, fast_opts());
  CHECK(res.verdict == SplitVerdict::split);
  REQUIRE(res.findings.size() == 1);
  // the true Hausdorff distance between the disk and the half-disk is 0.5
  CHECK(res.findings[0].worst_single > 0.4);
  CHECK(res.findings[0].worst_single < 0.6);
}

TEST_CASE("identical maps do not split") {
  const std::vector<Poly2> f{Poly2::monomial(1, 0)};
  const auto res = tensor_split_check(f, f, 422, fast_opts());
  CHECK(res.verdict == SplitVerdict::not_split);
  REQUIRE(res.findings.size() == 1);
  CHECK(res.findings[0].worst_single < 0.005);
}

TEST_CASE("mixed-degree two-component pair splits via projection tests") {
  const std::vector<Poly2> phi{Poly2::monomial(2, 0).plus(Poly2::monomial(0, 3)),
                               Poly2::monomial(2, 3)};
  const std::vector<Poly2> psi{Poly2::monomial(1, 0).plus(Poly2::monomial(0, 1)),
                               Poly2::monomial(1, 1)};
  const auto res = tensor_split_check(phi, psi, 423, fast_opts());
  CHECK(res.verdict == SplitVerdict::split);
  CHECK(res.findings.size() == 22);  // 4! minus identity and block swap
  for (const auto& f : res.findings) CHECK(f.incompatible);
}

TEST_CASE("verdicts and distances are deterministic under a fixed seed") {
  const std::vector<Poly2> f{Poly2::monomial(1, 0)};
  const std::vector<Poly2> g{Poly2::monomial(2, 0, Complex(0.5, 0.0))};
  const auto a = tensor_split_check(f, g, 77, fast_opts());
  const auto b = tensor_split_check(f, g, 77, fast_opts());
  CHECK(a.verdict == b.verdict);
  REQUIRE(a.findings.size() == b.findings.size());
  for (std::size_t i = 0; i < a.findings.size(); ++i) {
    CHECK(a.findings[i].worst_single == b.findings[i].worst_single);
    CHECK(a.findings[i].worst_pair == b.findings[i].worst_pair);
    CHECK(a.findings[i].whole == b.findings[i].whole);
  }
}

TEST_CASE("component count mismatch is rejected") {
  const std::vector<Poly2> f{Poly2::monomial(1, 0)};
  const std::vector<Poly2> g{Poly2::monomial(1, 0), Poly2::monomial(1, 1)};
  CHECK_THROWS_AS(tensor_split_check(f, g, 1), std::invalid_argument);
}
