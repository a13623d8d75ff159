#include <doctest.h>

#include "interlace/matrix.hpp"
#include "interlace/rng.hpp"

using namespace interlace;

TEST_CASE("linear solve with partial pivoting") {
  RealMatrix a(3, 3);
  a(0, 0) = 1;  a(0, 1) = 2;  a(0, 2) = -3;
  a(1, 0) = 3;  a(1, 1) = -1; a(1, 2) = 1;
  a(2, 0) = 5;  a(2, 1) = 3;  a(2, 2) = -2;
  const auto x = solve_linear(a, {1.0, 5.0, 7.0});
  CHECK(x[0] == doctest::Approx(11.0 / 7.0));
  CHECK(x[1] == doctest::Approx(-2.0 / 7.0));
  CHECK(x[2] == doctest::Approx(0.0));
}

TEST_CASE("singular systems are rejected") {
  RealMatrix a(2, 2);
  a(0, 0) = 1; a(0, 1) = 2;
  a(1, 0) = 2; a(1, 1) = 4;
  CHECK_THROWS_AS(solve_linear(a, {1.0, 1.0}), Error);
  CHECK(determinant(a) == 0.0);
  CHECK(min_pivot(a) == 0.0);
}

TEST_CASE("determinant on random matrices matches cofactor expansion at n=2") {
  RandomSource rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    RealMatrix a(2, 2);
    for (auto& x : a.data()) x = rng.normal();
    const double expected = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    CHECK(determinant(a) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("adjoint and unitary defect") {
  ComplexMatrix q(2, 2);
  const double s = std::sqrt(0.5);
  q(0, 0) = {s, 0};  q(0, 1) = {0, s};
  q(1, 0) = {0, s};  q(1, 1) = {s, 0};
  CHECK(unitary_defect(q) < 1e-15);
  const auto qh = adjoint(q);
  CHECK(qh(0, 1).imag() == doctest::Approx(-s));
  CHECK(hermitian_defect(multiply(qh, q)) < 1e-15);
}
