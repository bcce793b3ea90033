#ifndef SUSYRPM_RICCATI_SERIES_HPP
#define SUSYRPM_RICCATI_SERIES_HPP

#include "susyrpm/potential.hpp"
#include "susyrpm/rational_polynomial.hpp"

#include <string>
#include <vector>

namespace susyrpm {

/// Taylor coefficients f_j of f(x) = s/x - psi'(x)/psi(x) about the origin.
/// f satisfies f' = f^2 - (2s/x) f + E - V(x); matching powers of x gives
///   (n + 1 + 2s) f_{n+1} = sum_{k=0}^{n} f_k f_{n-k} + source[n],  f_0 = 0.
template <typename Coefficient>
struct CoefficientSeries {
  int s = 0;
  PotentialLabel potential = PotentialLabel::custom;
  std::vector<Coefficient> values;

  std::size_t count() const { return values.size(); }
  const Coefficient& operator[](std::size_t j) const { return values.at(j); }
};

using NumericSeries = CoefficientSeries<Real>;
using ExactSeries = CoefficientSeries<RationalPolynomial>;

inline constexpr std::size_t kDefaultExactSeriesCap = 80;

/// Series at a fixed energy. T is Real for the production path or Rational
/// when an exact value at rational E is wanted.
template <typename T>
CoefficientSeries<T> series_coefficients(const PolynomialPotential& potential, ParitySector parity, const T& energy,
                                         std::size_t count) {
  if (count == 0) throw Error(ErrorKind::InvalidConfig, "series count must be positive");
  const int s = parity.s();
  auto source = riccati_source(potential, energy);
  std::vector<T> f(count, T(0));
  for (std::size_t n = 0; n + 1 < count; ++n) {
    T acc = n < source.size() ? source[n] : T(0);
    // f_0 = 0, so the convolution runs over k = 1..n-1, paired symmetrically
    for (std::size_t k = 1; 2 * k < n; ++k) acc += T(2) * f[k] * f[n - k];
    if (n >= 2 && n % 2 == 0) acc += f[n / 2] * f[n / 2];
    f[n + 1] = acc / T(static_cast<long>(n + 1 + 2 * s));
  }
  return {s, potential.label(), std::move(f)};
}

/// Same recursion over exact polynomials in E.
inline ExactSeries series_polynomials(const PolynomialPotential& potential, ParitySector parity, std::size_t count,
                                      std::size_t cap = kDefaultExactSeriesCap) {
  if (count == 0) throw Error(ErrorKind::InvalidConfig, "series count must be positive");
  if (count > cap) {
    throw Error(ErrorKind::ResourceLimit,
                "exact series limited to " + std::to_string(cap) + " coefficients, asked for " + std::to_string(count));
  }
  const int s = parity.s();
  std::vector<RationalPolynomial> source(potential.degree() + 1);
  source[0] = RationalPolynomial::variable();
  for (const auto& [k, c] : potential.coefficients()) source[k] += RationalPolynomial::constant(-c);

  std::vector<RationalPolynomial> f(count);
  for (std::size_t n = 0; n + 1 < count; ++n) {
    RationalPolynomial acc = n < source.size() ? source[n] : RationalPolynomial{};
    for (std::size_t k = 1; 2 * k < n; ++k) acc += (f[k] * f[n - k]) * Rational(2);
    if (n >= 2 && n % 2 == 0) acc += f[n / 2] * f[n / 2];
    f[n + 1] = acc * Rational(1, static_cast<long>(n + 1 + 2 * s));
  }
  return {s, potential.label(), std::move(f)};
}

/// Evaluates every exact coefficient at E.
template <typename T>
std::vector<T> evaluate_series(const ExactSeries& series, const T& energy) {
  std::vector<T> out;
  out.reserve(series.count());
  for (const auto& p : series.values) out.push_back(p.evaluate(energy));
  return out;
}

}  // namespace susyrpm

#endif  // SUSYRPM_RICCATI_SERIES_HPP
