#include <doctest.h>

#include "interlace/types.hpp"

using namespace interlace;

TEST_CASE("strict spectra must be strictly increasing") {
  CHECK_NOTHROW(OrderedSpectrum::strict({0.0, 1.0, 2.0}));
  CHECK_THROWS_WITH_AS(OrderedSpectrum::strict({0.0, 0.0, 1.0}),
                       doctest::Contains("DegenerateSpectrum"), Error);
  CHECK_THROWS_AS(OrderedSpectrum::strict({1.0, 0.0}), Error);
  CHECK_THROWS_AS(OrderedSpectrum::strict({}), Error);
}

TEST_CASE("weak spectra allow ties but not descents") {
  const auto s = OrderedSpectrum::weak({0.0, 0.0, 1.0});
  CHECK(s.size() == 3);
  CHECK(s.min_gap() == 0.0);
  CHECK_THROWS_AS(OrderedSpectrum::weak({1.0, 0.5}), Error);
}

TEST_CASE("spectrum summaries") {
  const auto s = OrderedSpectrum::strict({-1.0, 0.5, 3.0});
  CHECK(s.sum() == doctest::Approx(2.5));
  CHECK(s.sum_squares() == doctest::Approx(1.0 + 0.25 + 9.0));
  CHECK(s.spread() == doctest::Approx(4.0));
  CHECK(s.min_gap() == doctest::Approx(1.5));
}

TEST_CASE("field vectors keep real tags exact") {
  const auto v = FieldVector::make_real({-3.0, 4.0});
  CHECK(v.field() == Field::real);
  for (const auto& z : v.entries()) CHECK(z.imag() == 0.0);
  CHECK(v.norm_squared() == doctest::Approx(25.0));
  CHECK(v.real_entries()[0] == -3.0);

  const auto w = FieldVector::make_complex({{0.0, 3.0}, {-4.0, 0.0}});
  CHECK(w.field() == Field::complex);
  CHECK(w.magnitudes()[0] == doctest::Approx(3.0));
  CHECK_THROWS_AS(w.real_entries(), Error);
}

TEST_CASE("orthant vectors reject negative coordinates") {
  CHECK_NOTHROW(OrthantVector::coords({0.0, 1.5}));
  CHECK_THROWS_AS(OrthantVector::coords({-0.1, 1.0}), Error);
}

TEST_CASE("orthant basis must be unitary") {
  ComplexMatrix q(2, 2);
  q(0, 0) = 1.0;
  q(1, 1) = 1.0;
  CHECK_NOTHROW(OrthantVector::in_basis({1.0, 2.0}, q, 1e-10));
  q(0, 1) = 0.5;
  CHECK_THROWS_WITH_AS(OrthantVector::in_basis({1.0, 2.0}, q, 1e-10),
                       doctest::Contains("BasisNotUnitary"), Error);
}

TEST_CASE("bordered problem validation") {
  BorderedProblem good{OrderedSpectrum::strict({0.0}), FieldVector::make_real({1.0}), 0.5};
  CHECK_NOTHROW(validate(good));
  BorderedProblem bad{OrderedSpectrum::strict({0.0, 1.0}), FieldVector::make_real({1.0}), 0.5};
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("tolerance policy defaults scale tol_face with the spectrum") {
  const auto lambda = OrderedSpectrum::strict({0.0, 9.0});
  const auto tol = TolerancePolicy::for_spectrum(lambda);
  CHECK(tol.tol_face == doctest::Approx(1e-9 * 10.0));
  TolerancePolicy broken;
  broken.tol_res = 0.0;
  CHECK_THROWS_AS(broken.validate(), Error);
}
