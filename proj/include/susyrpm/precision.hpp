#ifndef SUSYRPM_PRECISION_HPP
#define SUSYRPM_PRECISION_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace susyrpm {

/// Extended real with run-time selectable precision (MPFR backend).
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Exact rational (GMP backend).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Failure classes raised by the numerical layers.
enum class ErrorKind {
  IllConditioned,
  NoConvergence,
  InsufficientCoefficients,
  ResourceLimit,
  AmbiguousClassification,
  ReproductionFailure,
  InvalidConfig,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InsufficientCoefficients: return "InsufficientCoefficients";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::AmbiguousClassification: return "AmbiguousClassification";
    case ErrorKind::ReproductionFailure: return "ReproductionFailure";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Sets the default MPFR precision for newly created Real values and
/// restores the previous one on exit. The default precision is process
/// global, so scopes hold a recursive lock: computations at different
/// precisions on different threads are serialized, nested scopes on one
/// thread are fine.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned decimal_digits) : lock_(mutex()), saved_(Real::default_precision()) {
    Real::default_precision(decimal_digits);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  static std::recursive_mutex& mutex() {
    static std::recursive_mutex m;
    return m;
  }

  std::unique_lock<std::recursive_mutex> lock_;
  unsigned saved_;
};

/// Working precision and root tolerance shared by every solver.
struct PrecisionContext {
  static constexpr unsigned kMinDigits = 30;

  unsigned decimal_digits = 50;
  /// Absolute bisection tolerance on E, as a decimal literal ("1e-25").
  std::string root_tolerance = "1e-25";

  static PrecisionContext make(unsigned digits, std::string tolerance = "") {
    PrecisionContext ctx;
    ctx.decimal_digits = digits;
    if (!tolerance.empty()) {
      ctx.root_tolerance = std::move(tolerance);
    } else {
      // default: 10^-(digits/2), capped at 1e-25 when there is room for it
      int exponent = static_cast<int>(digits) / 2;
      if (exponent > 25) exponent = 25;
      ctx.root_tolerance = "1e-" + std::to_string(exponent);
    }
    ctx.validate();
    return ctx;
  }

  Real tolerance() const {
    PrecisionScope scope(decimal_digits);
    return Real(root_tolerance);
  }

  void validate() const {
    if (decimal_digits < kMinDigits) {
      throw Error(ErrorKind::InvalidConfig,
                  "decimal_digits must be >= " + std::to_string(kMinDigits) + ", got " +
                      std::to_string(decimal_digits));
    }
    PrecisionScope scope(decimal_digits + 10);
    Real tol;
    try {
      tol = Real(root_tolerance);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidConfig, "root_tolerance is not a number: " + root_tolerance);
    }
    if (!(tol > 0)) throw Error(ErrorKind::InvalidConfig, "root_tolerance must be positive");
    Real floor = pow(Real(10), -static_cast<int>(decimal_digits) + 10);
    if (tol < floor) {
      throw Error(ErrorKind::InvalidConfig,
                  "root_tolerance below 10^(-digits+10) for digits=" + std::to_string(decimal_digits));
    }
  }
};

/// Unit in the last place of x at the precision x carries.
inline Real ulp(const Real& x) {
  const long bits = static_cast<long>(mpfr_get_prec(x.backend().data()));
  if (x == 0) return ldexp(Real(1), -bits);
  int e = 0;
  frexp(x, &e);
  return ldexp(Real(1), e - bits);
}

/// Unit roundoff 2^(1-p) at the current default precision.
inline Real machine_epsilon() {
  Real one(1);
  const long bits = static_cast<long>(mpfr_get_prec(one.backend().data()));
  return ldexp(one, 1 - static_cast<int>(bits));
}

inline Real to_real(const Rational& q) { return Real(q); }

}  // namespace susyrpm

#endif  // SUSYRPM_PRECISION_HPP
