#ifndef SUSYRPM_RATIONAL_POLYNOMIAL_HPP
#define SUSYRPM_RATIONAL_POLYNOMIAL_HPP

#include "susyrpm/precision.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace susyrpm {

/// Dense polynomial in E with exact rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

  static RationalPolynomial constant(const Rational& v) { return RationalPolynomial({v}); }
  /// The monomial E.
  static RationalPolynomial variable() { return RationalPolynomial({Rational(0), Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }

  Rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  template <typename T>
  T evaluate(const T& x) const {
    T v(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + T(*it);
    return v;
  }

  RationalPolynomial& operator+=(const RationalPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }

  RationalPolynomial& operator*=(const Rational& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const Rational& s) { return a *= s; }

  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return RationalPolynomial(std::move(out));
  }

  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.c_ == b.c_; }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[k].str() + ")";
      if (k >= 1) out += "*E";
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

}  // namespace susyrpm

#endif  // SUSYRPM_RATIONAL_POLYNOMIAL_HPP
