#include <catch_amalgamated.hpp>

#include "susyrpm/riccati_series.hpp"

using namespace susyrpm;

namespace {
const std::vector<PolynomialPotential> kPotentials{PolynomialPotential::susy_minus(), PolynomialPotential::susy_plus(),
                                                   PolynomialPotential::quartic()};
}

TEST_CASE("first coefficients") {
  for (const auto& v : kPotentials) {
    auto even = series_coefficients(v, ParitySector::even(), Rational(7, 3), 4);
    auto odd = series_coefficients(v, ParitySector::odd(), Rational(7, 3), 4);
    CHECK(even[0] == 0);
    CHECK(odd[0] == 0);
    CHECK(even[1] == Rational(7, 3));
    CHECK(odd[1] == Rational(7, 9));
  }
  auto p = series_polynomials(PolynomialPotential::quartic(), ParitySector::even(), 3);
  CHECK(p[0].is_zero());
  CHECK(p[1] == RationalPolynomial::variable());
  auto plus = series_polynomials(PolynomialPotential::susy_plus(), ParitySector::odd(), 3);
  CHECK(plus[2] == RationalPolynomial::constant(Rational(-1, 2)));
}

TEST_CASE("exact ground state gives f = x^2") {
  auto f = series_coefficients(PolynomialPotential::susy_minus(), ParitySector::even(), Rational(0), 40);
  for (std::size_t j = 0; j < f.count(); ++j) CHECK(f[j] == (j == 2 ? 1 : 0));
  PrecisionScope scope(50);
  auto g = series_coefficients(PolynomialPotential::susy_minus(), ParitySector::even(), Real(0), 40);
  for (std::size_t j = 0; j < g.count(); ++j) CHECK(g[j] == (j == 2 ? 1 : 0));
}

TEST_CASE("recursion identity holds exactly in exact mode") {
  for (const auto& v : kPotentials)
    for (int s : {0, 1}) {
      const std::size_t count = 40;
      auto f = series_coefficients(v, ParitySector(s), Rational(13, 7), count);
      auto source = riccati_source(v, Rational(13, 7));
      for (std::size_t n = 0; n + 1 < count; ++n) {
        Rational conv = 0;
        for (std::size_t k = 0; k <= n; ++k) conv += f[k] * f[n - k];
        const Rational src = n < source.size() ? source[n] : Rational(0);
        CHECK(f[n + 1] * Rational(static_cast<long>(n + 1 + 2 * s)) - conv - src == 0);
      }
    }
}

TEST_CASE("recursion identity holds to a few ulp in numeric mode") {
  PrecisionScope scope(50);
  for (const auto& v : kPotentials)
    for (int s : {0, 1}) {
      const Real e("3.14159");
      auto f = series_coefficients(v, ParitySector(s), e, 30);
      auto source = riccati_source(v, e);
      for (std::size_t n = 0; n + 1 < 30; ++n) {
        Real conv = 0, scale = 0;
        for (std::size_t k = 0; k <= n; ++k) {
          conv += f[k] * f[n - k];
          scale += abs(f[k] * f[n - k]);
        }
        const Real src = n < source.size() ? source[n] : Real(0);
        const Real lhs = f[n + 1] * (n + 1 + 2 * s);
        scale = std::max({scale, abs(lhs), abs(src)});
        CHECK(abs(lhs - conv - src) <= 5 * (n + 1) * ulp(scale));
      }
    }
}

TEST_CASE("numeric and exact modes agree") {
  const std::vector<Rational> energies{Rational(0), Rational(1, 3), Rational(-5, 2), Rational(37, 4)};
  for (const auto& v : kPotentials)
    for (int s : {0, 1}) {
      auto exact = series_polynomials(v, ParitySector(s), 50);
      for (const auto& e : energies) {
        PrecisionScope scope(60);
        auto numeric = series_coefficients(v, ParitySector(s), Real(e), 50);
        for (std::size_t j = 0; j < 50; ++j) {
          const Real oracle(exact[j].evaluate(e));
          CHECK(abs(numeric[j] - oracle) <= 5 * j * ulp(std::max(abs(oracle), Real(1))));
        }
      }
    }
}

TEST_CASE("quartic f_5 from the recursion matches the exact polynomial") {
  auto p = series_polynomials(PolynomialPotential::quartic(), ParitySector::even(), 6);
  // f1 = E, f2 = 0, f3 = E^2/3, f4 = 0, 5 f5 = 2 f1 f3 + f2^2 - 1
  const Rational e(2, 5);
  const Rational f1 = e, f3 = e * e / 3;
  CHECK(p[2].is_zero());
  CHECK(p[4].is_zero());
  CHECK(p[5].evaluate(e) == (2 * f1 * f3 - 1) / 5);
  auto n = series_coefficients(PolynomialPotential::quartic(), ParitySector::even(), e, 6);
  CHECK(n[5] == p[5].evaluate(e));
}

TEST_CASE("polynomial degree grows at most like ceil(j/2)") {
  for (const auto& v : kPotentials)
    for (int s : {0, 1}) {
      auto f = series_polynomials(v, ParitySector(s), 61);
      for (int j = 0; j <= 60; ++j) CHECK(f[j].degree() <= (j + 1) / 2);
    }
}

TEST_CASE("exact series is capped") {
  CHECK_THROWS_AS(series_polynomials(PolynomialPotential::quartic(), ParitySector::even(), 81), Error);
  CHECK_NOTHROW(series_polynomials(PolynomialPotential::quartic(), ParitySector::even(), 90, 100));
  CHECK_THROWS_AS(series_coefficients(PolynomialPotential::quartic(), ParitySector::even(), Rational(1), 0), Error);
}
