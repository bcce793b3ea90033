#ifndef SUSYRPM_HANKEL_HPP
#define SUSYRPM_HANKEL_HPP

#include "susyrpm/linalg.hpp"
#include "susyrpm/riccati_series.hpp"

#include <string>
#include <vector>

namespace susyrpm {

using SignedLogValue = SignedLog<Real>;

/// Coefficients needed for H_D^d: indices up to 2D + d - 1.
inline std::size_t hankel_series_length(unsigned dimension, unsigned offset) { return 2 * dimension + offset; }

/// D x D matrix with entry (i, j) = f_{i+j+d-1}, i, j = 1..D.
template <typename T>
DenseMatrix<T> hankel_matrix(const std::vector<T>& f, unsigned dimension, unsigned offset) {
  if (dimension == 0) throw Error(ErrorKind::InvalidConfig, "Hankel dimension must be positive");
  if (f.size() < hankel_series_length(dimension, offset)) {
    throw Error(ErrorKind::InsufficientCoefficients, "need " + std::to_string(hankel_series_length(dimension, offset)) +
                                                         " coefficients for D=" + std::to_string(dimension) +
                                                         ", d=" + std::to_string(offset) + ", have " +
                                                         std::to_string(f.size()));
  }
  DenseMatrix<T> h(dimension);
  for (unsigned i = 0; i < dimension; ++i)
    for (unsigned j = 0; j < dimension; ++j) h(i, j) = f[i + j + offset + 1];
  return h;
}

/// Pivot threshold, relative to the largest entry, below which a Hankel
/// determinant counts as exactly zero: 10^(-digits+5).
inline Real hankel_zero_threshold(unsigned decimal_digits) {
  return pow(Real(10), -static_cast<int>(decimal_digits) + 5);
}

/// Expansion variable for the Hankel sequence. For an even potential f is odd
/// in x, f = x * sum_k g_k x^(2k), and the Hankel determinant over f
/// factorizes into two determinants over g of half the size; working with
/// g_k = f_{2k+1} directly doubles the effective dimension.
enum class HankelVariable { automatic, x, x_squared };

inline bool uses_x_squared(HankelVariable variable, const PolynomialPotential& potential) {
  if (variable == HankelVariable::x_squared && !potential.is_even())
    throw Error(ErrorKind::InvalidConfig, "x^2 expansion needs an even potential");
  return variable == HankelVariable::x_squared || (variable == HankelVariable::automatic && potential.is_even());
}

/// Number of f coefficients behind H_D^d in the chosen variable.
inline std::size_t required_series_length(unsigned dimension, unsigned offset, bool x_squared) {
  return x_squared ? 2 * hankel_series_length(dimension, offset) : hankel_series_length(dimension, offset);
}

/// g_k = f_{2k+1}.
template <typename T>
std::vector<T> odd_coefficients(const std::vector<T>& f) {
  std::vector<T> g;
  g.reserve(f.size() / 2);
  for (std::size_t k = 1; k < f.size(); k += 2) g.push_back(f[k]);
  return g;
}

/// Sign and log|det| of H_D^d by LU with full pivoting at the current precision.
inline SignedLogValue hankel_determinant(const std::vector<Real>& f, unsigned dimension, unsigned offset,
                                         const Real& zero_threshold) {
  return lu_signed_log_det(hankel_matrix(f, dimension, offset), zero_threshold);
}

inline SignedLogValue hankel_determinant(const NumericSeries& series, unsigned dimension, unsigned offset,
                                         unsigned decimal_digits) {
  PrecisionScope scope(decimal_digits);
  return hankel_determinant(series.values, dimension, offset, hankel_zero_threshold(decimal_digits));
}

/// H_D^d(E) as a plain number, correctly rounded in practice to the working
/// precision: the series and the elimination run with `guard_digits` extra
/// digits and only the final value is rounded. Cancellation in the
/// elimination costs digits that the guard absorbs.
/// E is taken as exact: a Rational is converted inside the guarded precision.
template <typename Energy>
Real hankel_value(const PolynomialPotential& potential, ParitySector parity, const Energy& energy, unsigned dimension,
                  unsigned offset, unsigned decimal_digits, unsigned guard_digits = 20) {
  Real wide;
  {
    const unsigned digits = decimal_digits + guard_digits;
    PrecisionScope scope(digits);
    auto series = series_coefficients(potential, parity, Real(energy), hankel_series_length(dimension, offset));
    const auto v = hankel_determinant(series.values, dimension, offset, hankel_zero_threshold(digits));
    wide = v.sign == 0 ? Real(0) : Real(v.sign * exp(v.log_magnitude));
  }
  PrecisionScope scope(decimal_digits);
  return Real(wide);
}

/// Exact H_D^d at rational E by fraction-free elimination.
inline Rational exact_hankel_determinant(const ExactSeries& series, unsigned dimension, unsigned offset,
                                         const Rational& energy) {
  return bareiss_determinant(hankel_matrix(evaluate_series(series, energy), dimension, offset));
}

}  // namespace susyrpm

#endif  // SUSYRPM_HANKEL_HPP
