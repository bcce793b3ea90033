#ifndef SUSYRPM_FORMAT_HPP
#define SUSYRPM_FORMAT_HPP

#include "susyrpm/precision.hpp"

#include <mpfr.h>

#include <string>

namespace susyrpm {

/// round(x * 10^decimals), ties to even, as an exact integer.
inline Integer scaled_round(const Real& x, unsigned decimals) {
  // enough bits to keep every integer digit of the scaled value exact
  const long bits = static_cast<long>(mpfr_get_prec(x.backend().data())) + 4 * static_cast<long>(decimals) + 64;
  mpfr_t scaled, ten;
  mpfr_init2(scaled, bits);
  mpfr_init2(ten, bits);
  mpfr_set_ui(ten, 10, MPFR_RNDN);
  mpfr_pow_ui(ten, ten, decimals, MPFR_RNDN);
  mpfr_mul(scaled, x.backend().data(), ten, MPFR_RNDN);
  mpfr_rint(scaled, scaled, MPFR_RNDN);  // RNDN breaks ties to even
  Integer out;
  mpfr_get_z(out.backend().data(), scaled, MPFR_RNDN);
  mpfr_clear(scaled);
  mpfr_clear(ten);
  return out;
}

/// Fixed-point rendering with `decimals` digits after the point, round half
/// to even, never scientific.
inline std::string format_fixed(const Real& x, unsigned decimals) {
  const Integer q = scaled_round(x, decimals);
  std::string digits = Integer(abs(q)).str();
  if (digits.size() <= decimals) digits.insert(0, decimals + 1 - digits.size(), '0');
  std::string out = q < 0 ? "-" : "";
  out += digits.substr(0, digits.size() - decimals);
  if (decimals > 0) out += "." + digits.substr(digits.size() - decimals);
  return out;
}

/// Digits after the decimal point of a printed number.
inline unsigned printed_decimals(const std::string& printed) {
  const auto dot = printed.find('.');
  return dot == std::string::npos ? 0 : static_cast<unsigned>(printed.size() - dot - 1);
}

/// Printed number as an integer in units of its last digit.
inline Integer printed_units(const std::string& printed) {
  std::string digits;
  for (char c : printed)
    if (c != '.') digits += c;
  return Integer(digits);
}

/// Distance, in units of the last printed digit, between a computed value
/// rounded to the printed length and the printed value.
inline Integer last_digit_distance(const Real& computed, const std::string& printed) {
  return Integer(abs(scaled_round(computed, printed_decimals(printed)) - printed_units(printed)));
}

inline bool matches_printed(const Real& computed, const std::string& printed, long slack = 1) {
  return last_digit_distance(computed, printed) <= slack;
}

/// Significant-digit rendering for reports: `digits` significant digits,
/// fixed notation.
inline std::string format_significant(const Real& x, unsigned digits) {
  if (x == 0) return "0";
  const long exponent = static_cast<long>(floor(log10(abs(x))).convert_to<long>());
  const long decimals = static_cast<long>(digits) - 1 - exponent;
  return format_fixed(x, decimals > 0 ? static_cast<unsigned>(decimals) : 0);
}

}  // namespace susyrpm

#endif  // SUSYRPM_FORMAT_HPP
