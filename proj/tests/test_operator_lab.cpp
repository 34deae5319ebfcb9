#include <doctest.h>

#include <cmath>

#include "twistvn/operator_lab.hpp"

using namespace twistvn;

TEST_CASE("multiplication matrices") {
  const auto one = mult_matrix(Poly2::monomial(0, 0), 4);
  CHECK((one.matrix - Eigen::MatrixXcd::Identity(16, 16)).norm() < 1e-14);

  TruncatedBergmanSpace space{2};
  const auto z1 = mult_matrix(Poly2::monomial(1, 0), 2);
  // shift entry from (0,q) to (1,q) carries sqrt((p+1)/(p+2)) = sqrt(1/2)
  CHECK(std::abs(z1.matrix(space.index(1, 0), space.index(0, 0)) -
                 Complex(std::sqrt(0.5), 0.0)) < 1e-14);
  CHECK(std::abs(z1.matrix(space.index(1, 1), space.index(0, 1)) -
                 Complex(std::sqrt(0.5), 0.0)) < 1e-14);

  const auto sum = mult_matrix(Poly2::monomial(1, 0).plus(Poly2::monomial(0, 1)), 6);
  const auto a = mult_matrix(Poly2::monomial(1, 0), 6);
  const auto b = mult_matrix(Poly2::monomial(0, 1), 6);
  CHECK((sum.matrix - a.matrix - b.matrix).norm() < 1e-14);

  CHECK_THROWS_AS(mult_matrix(Poly2::monomial(3, 3), 4), std::invalid_argument);
}

TEST_CASE("operator norm bounded by the sup of the symbol") {
  const auto sym = Poly2::monomial(1, 0).plus(Poly2::monomial(0, 1));
  const auto op = mult_matrix(sym, 8);
  double sup = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      sup = std::max(sup, std::abs(sym(std::polar(1.0, 2.0 * kPi * i / 64.0),
                                       std::polar(1.0, 2.0 * kPi * j / 64.0))));
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(op.matrix);
  CHECK(svd.singularValues()(0) <= sup + 1e-8);
}

TEST_CASE("compression of a product matches on the interior block") {
  const int N = 6;
  const auto z1 = mult_matrix(Poly2::monomial(1, 0), N).matrix;
  const auto z2 = mult_matrix(Poly2::monomial(0, 1), N).matrix;
  const auto z12 = mult_matrix(Poly2::monomial(1, 1), N).matrix;
  const Eigen::MatrixXcd prod = z1 * z2;
  TruncatedBergmanSpace space{N};
  for (int p = 0; p < N - 2; ++p)
    for (int q = 0; q < N - 2; ++q)
      for (int pp = 0; pp < N - 2; ++pp)
        for (int qq = 0; qq < N - 2; ++qq)
          CHECK(std::abs(prod(space.index(p, q), space.index(pp, qq)) -
                         z12(space.index(p, q), space.index(pp, qq))) < 1e-13);
}

TEST_CASE("commutant dimension for the diagonal pair") {
  const auto res = joint_commutant_dim(twisted_power_symbols(1, 1), 8);
  CHECK(res.dim == 2);
  CHECK(res.gap > 1e4);
  CHECK(!res.low_confidence);
  CHECK(res.basis.size() == 2);

  const auto ab = commutant_abelian_check(res.basis, abelian_check_depth(1, 1, 8), 8);
  CHECK(ab.abelian);
}

TEST_CASE("commutant dimension is stable in N and margin") {
  for (int N : {8, 10}) CHECK(joint_commutant_dim(twisted_power_symbols(1, 1), N).dim == 2);
  // widening the interior margin must not create new solutions
  const int d2 = joint_commutant_dim(twisted_power_symbols(1, 1), 10, 1e-8, 2).dim;
  const int d3 = joint_commutant_dim(twisted_power_symbols(1, 1), 10, 1e-8, 3).dim;
  const int d4 = joint_commutant_dim(twisted_power_symbols(1, 1), 10, 1e-8, 4).dim;
  CHECK(d2 == 2);
  CHECK(d3 <= d2);
  CHECK(d4 <= d3);
  CHECK(d4 == 2);
}

TEST_CASE("all three symbol conventions give the same commutant dimension") {
  for (auto conv : {Convention::power, Convention::elementary, Convention::homogeneous})
    CHECK(joint_commutant_dim(twisted_power_symbols(1, 1, conv), 8).dim == 2);
}

TEST_CASE("margin condition is enforced") {
  CHECK_THROWS_AS(joint_commutant_dim(twisted_power_symbols(2, 2), 8), std::invalid_argument);
}
