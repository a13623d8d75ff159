#include <doctest.h>

#include <cmath>

#include "interlace/eigensolve.hpp"
#include "interlace/forward.hpp"
#include "interlace/interlacing.hpp"
#include "interlace/preimage.hpp"
#include "interlace/rng.hpp"
#include "interlace/secular.hpp"
#include "support/helpers.hpp"

using namespace interlace;
namespace itest = interlace::testing;

TEST_CASE("real preimage enumeration") {
  SUBCASE("interior target has 2^n sign choices") {
    const auto lambda = OrderedSpectrum::strict({0.0, 2.0});
    const auto mu = OrderedSpectrum::weak({1.0, 3.0});
    const auto pre = enumerate_real_preimages(lambda, mu, PerturbationMode::rank_one);
    CHECK(pre.k == 0);
    REQUIRE(pre.vectors.size() == 4);
    // Lexicographic: +1 before -1, first coordinate most significant.
    CHECK(pre.vectors[0].real_entries()[0] == doctest::Approx(std::sqrt(1.5)));
    CHECK(pre.vectors[0].real_entries()[1] == doctest::Approx(std::sqrt(0.5)));
    CHECK(pre.vectors[1].real_entries()[1] == doctest::Approx(-std::sqrt(0.5)));
    CHECK(pre.vectors[2].real_entries()[0] == doctest::Approx(-std::sqrt(1.5)));
    for (const auto& v : pre.vectors) {
      const auto image = forward_rank_one(lambda, v);
      CHECK(itest::max_abs_diff(image.values(), mu.values()) < 1e-12);
    }
  }
  SUBCASE("face contact halves the count and zeroes the sign") {
    const auto lambda = OrderedSpectrum::strict({0.0, 1.0, 2.0});
    const auto mu = OrderedSpectrum::weak({1.0, 1.5, 7.0});
    const auto pre = enumerate_real_preimages(lambda, mu, PerturbationMode::rank_one);
    CHECK(pre.k == 1);
    REQUIRE(pre.vectors.size() == 4);
    for (const auto& pattern : pre.patterns) CHECK(pattern.signs[1] == 0);
    for (const auto& v : pre.vectors) {
      CHECK(v.real_entries()[1] == 0.0);
      const auto image = forward_rank_one(lambda, v);
      CHECK(itest::max_abs_diff(image.values(), mu.values()) < 1e-12);
    }
  }
  SUBCASE("full contact leaves only the zero vector") {
    const auto lambda = OrderedSpectrum::strict({0.0, 2.0});
    const auto pre = enumerate_real_preimages(lambda, OrderedSpectrum::weak({0.0, 2.0}),
                                              PerturbationMode::rank_one);
    CHECK(pre.k == 2);
    REQUIRE(pre.vectors.size() == 1);
    CHECK(pre.vectors[0].real_entries() == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("bordered preimages reuse the sign freedom with c fixed") {
    const auto lambda = OrderedSpectrum::strict({0.0, 2.0});
    const auto mu = OrderedSpectrum::weak({-1.0, 1.0, 3.0});
    const auto pre = enumerate_real_preimages(lambda, mu, PerturbationMode::bordered);
    REQUIRE(pre.c.has_value());
    CHECK(*pre.c == doctest::Approx(1.0));
    REQUIRE(pre.vectors.size() == 4);
    for (const auto& v : pre.vectors) {
      const auto image = forward_bordered({lambda, v, *pre.c});
      CHECK(itest::max_abs_diff(image.values(), mu.values()) < 1e-12);
    }
  }
  SUBCASE("non-interlacing target rejected") {
    CHECK_THROWS_WITH_AS(enumerate_real_preimages(OrderedSpectrum::strict({0.0, 1.0}),
                                                  OrderedSpectrum::weak({1.5, 2.0}),
                                                  PerturbationMode::rank_one),
                         doctest::Contains("NotInterlacing"), Error);
  }
}

TEST_CASE("count law against classification, sphere law against the trace") {
  RandomSource rng(515);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    const auto lambda = itest::random_strict_spectrum(rng, n);
    auto p = itest::random_orthant_entries(rng, lambda);
    // Pin a random subset of coordinates to the boundary.
    for (double& x : p)
      if (rng.uniform01() < 0.3) x = 0.0;
    const auto mu = forward_rank_one(lambda, FieldVector::make_real(p));
    const auto profile = classify_faces(lambda, mu, PerturbationMode::rank_one);
    const auto pre = enumerate_real_preimages(lambda, mu, PerturbationMode::rank_one);
    CHECK(pre.k == profile.k);
    CHECK(pre.vectors.size() == (std::size_t{1} << (n - profile.k)));

    const double r2 = mu.sum() - lambda.sum();
    for (const auto& v : pre.vectors)
      CHECK(v.norm_squared() == doctest::Approx(r2).epsilon(1e-12));

    const auto count =
        preimage_count(lambda, mu, Field::real, PerturbationMode::rank_one);
    CHECK(count.real_count == pre.vectors.size());
    CHECK(count.r_squared == doctest::Approx(r2));
    const auto ccount =
        preimage_count(lambda, mu, Field::complex, PerturbationMode::rank_one);
    CHECK(ccount.torus_dimension == n - profile.k);
  }
}

TEST_CASE("brute-force completeness at small scale") {
  // Fixed instances; scan a sign-and-magnitude grid and confirm every
  // near-preimage lies next to an enumerated one.
  const auto lambda = OrderedSpectrum::strict({0.0, 1.0, 2.0});
  const auto targets = {OrderedSpectrum::weak({0.5, 1.7, 4.0}),
                        OrderedSpectrum::weak({1.0, 1.5, 7.0})};
  for (const auto& mu : targets) {
    const auto pre = enumerate_real_preimages(lambda, mu, PerturbationMode::rank_one);
    const double step = 0.05;
    const double vmax = 3.0;
    const int cells = static_cast<int>(2.0 * vmax / step);
    for (int a = 0; a <= cells; ++a)
      for (int b = 0; b <= cells; ++b)
        for (int c = 0; c <= cells; ++c) {
          const std::vector<double> v{-vmax + a * step, -vmax + b * step, -vmax + c * step};
          std::vector<double> w(3);
          for (int i = 0; i < 3; ++i) w[i] = v[i] * v[i];
          const auto image = secular_roots_rank_one({lambda, w, {}});
          if (itest::max_abs_diff(image.values(), mu.values()) > 2e-2) continue;
          double nearest = std::numeric_limits<double>::infinity();
          for (const auto& cand : pre.vectors)
            nearest = std::min(nearest, itest::max_abs_diff(cand.real_entries(), v));
          CHECK(nearest < 0.2);
        }
  }
}

TEST_CASE("complex phase sampling") {
  const auto lambda = OrderedSpectrum::strict({0.0, 2.0});
  const auto mu = OrderedSpectrum::weak({1.0, 3.0});

  SUBCASE("zero phases reproduce the orthant solution") {
    const auto v = sample_complex_preimage(lambda, mu, {{0.0, 0.0}},
                                           PerturbationMode::rank_one);
    CHECK(v.entries()[0].real() == doctest::Approx(std::sqrt(1.5)));
    CHECK(v.entries()[0].imag() == 0.0);
  }
  SUBCASE("pi phases give the all-negative real preimage") {
    const auto v = sample_complex_preimage(
        lambda, mu, {{3.141592653589793, 3.141592653589793}}, PerturbationMode::rank_one);
    CHECK(v.entries()[0].real() == doctest::Approx(-std::sqrt(1.5)));
    CHECK(std::abs(v.entries()[0].imag()) < 1e-15);
  }
  SUBCASE("arbitrary phases leave the spectrum unchanged (dense complex check)") {
    const auto v = sample_complex_preimage(lambda, mu, {{1.0471975511965976, 4.39822971502571}},
                                           PerturbationMode::rank_one);
    const auto dec = eig_hermitian(assemble_rank_one(lambda, v));
    CHECK(itest::max_abs_diff(dec.values.values(), mu.values()) < 1e-12);
  }
  SUBCASE("random phase assignments, bordered included") {
    RandomSource rng(161);
    const auto lambdab = OrderedSpectrum::strict({0.0, 1.0, 3.0});
    const auto mub = forward_bordered(
        {lambdab, FieldVector::make_real({0.9, 0.4, 1.1}), 0.7});
    for (int trial = 0; trial < 25; ++trial) {
      PhaseAssignment phases;
      phases.thetas = {rng.uniform(0.0, 6.28), rng.uniform(0.0, 6.28), rng.uniform(0.0, 6.28)};
      const auto v = sample_complex_preimage(lambdab, mub, phases, PerturbationMode::bordered);
      const double c = mub.sum() - lambdab.sum();
      const auto dec = eig_hermitian(assemble_arrowhead(lambdab, v, c));
      CHECK(itest::max_abs_diff(dec.values.values(), mub.values()) < 1e-11);
    }
  }
  SUBCASE("phases at frozen coordinates are rejected") {
    const auto lambda3 = OrderedSpectrum::strict({0.0, 1.0, 2.0});
    const auto mu3 = OrderedSpectrum::weak({1.0, 1.5, 7.0});
    PhaseAssignment bad;
    bad.thetas = {0.5, 0.5, 0.5};  // coordinate 1 is a face contact
    CHECK_THROWS_WITH_AS(
        sample_complex_preimage(lambda3, mu3, bad, PerturbationMode::rank_one),
        doctest::Contains("FrozenMismatch"), Error);
    PhaseAssignment ok;
    ok.thetas = {0.5, std::nullopt, 0.5};
    CHECK_NOTHROW(sample_complex_preimage(lambda3, mu3, ok, PerturbationMode::rank_one));
  }
}

TEST_CASE("preimage counts") {
  SUBCASE("interior real count with sphere radius") {
    const auto count = preimage_count(OrderedSpectrum::strict({0.0, 2.0}),
                                      OrderedSpectrum::weak({1.0, 3.0}), Field::real,
                                      PerturbationMode::rank_one);
    CHECK(count.real_count == 4);
    CHECK(count.r_squared == doctest::Approx(2.0));
    CHECK(count.k == 0);
  }
  SUBCASE("identity target is a single point") {
    const auto count = preimage_count(OrderedSpectrum::strict({0.0, 2.0}),
                                      OrderedSpectrum::weak({0.0, 2.0}), Field::real,
                                      PerturbationMode::rank_one);
    CHECK(count.real_count == 1);
    CHECK(count.r_squared == doctest::Approx(0.0));
  }
  SUBCASE("complex torus dimension counts nonzero coordinates") {
    const auto count = preimage_count(OrderedSpectrum::strict({0.0, 1.0, 2.0}),
                                      OrderedSpectrum::weak({1.0, 1.5, 7.0}), Field::complex,
                                      PerturbationMode::rank_one);
    CHECK(count.torus_dimension == 2);
    CHECK(count.k == 1);
  }
  SUBCASE("bordered sphere radius from the trace of squares") {
    const auto lambda = OrderedSpectrum::strict({0.0});
    const auto count = preimage_count(lambda, OrderedSpectrum::weak({-1.0, 2.0}), Field::real,
                                      PerturbationMode::bordered);
    // c = 1, ||v||^2 = 2.
    CHECK(count.r_squared == doctest::Approx(2.0));
  }
}
