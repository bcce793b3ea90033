#ifndef SUSYRPM_POTENTIAL_HPP
#define SUSYRPM_POTENTIAL_HPP

#include "susyrpm/precision.hpp"

#include <map>
#include <string>
#include <vector>

namespace susyrpm {

enum class PotentialLabel { susy_minus, susy_plus, quartic, custom };

inline const char* to_string(PotentialLabel label) {
  switch (label) {
    case PotentialLabel::susy_minus: return "susy-minus";
    case PotentialLabel::susy_plus: return "susy-plus";
    case PotentialLabel::quartic: return "quartic";
    case PotentialLabel::custom: return "custom";
  }
  return "custom";
}

/// V(x) = sum_k c_k x^k on x > 0 with exact rational coefficients.
class PolynomialPotential {
 public:
  /// x^4 - 2 g x, the partner whose ground state is exp(-x^3/3) at E = 0.
  static PolynomialPotential susy_minus(const Rational& g = 1) {
    return PolynomialPotential(PotentialLabel::susy_minus, {{4, Rational(1)}, {1, Rational(-2 * g)}}, g);
  }
  /// x^4 + 2 g x
  static PolynomialPotential susy_plus(const Rational& g = 1) {
    return PolynomialPotential(PotentialLabel::susy_plus, {{4, Rational(1)}, {1, Rational(2 * g)}}, g);
  }
  static PolynomialPotential quartic() {
    return PolynomialPotential(PotentialLabel::quartic, {{4, Rational(1)}}, Rational(1));
  }
  static PolynomialPotential custom(std::map<unsigned, Rational> coefficients) {
    return PolynomialPotential(PotentialLabel::custom, std::move(coefficients), Rational(1));
  }

  PotentialLabel label() const { return label_; }
  const Rational& coupling() const { return g_; }
  const std::map<unsigned, Rational>& coefficients() const { return coefficients_; }

  unsigned degree() const { return coefficients_.empty() ? 0 : coefficients_.rbegin()->first; }

  Rational coefficient(unsigned power) const {
    auto it = coefficients_.find(power);
    return it == coefficients_.end() ? Rational(0) : it->second;
  }

  /// True when V(-x) = V(x) as a polynomial (only even powers).
  bool is_even() const {
    for (const auto& [k, c] : coefficients_)
      if (k % 2 == 1 && c != 0) return false;
    return true;
  }

  Real operator()(const Real& x) const {
    Real v(0);
    Real xp(1);
    unsigned p = 0;
    for (const auto& [k, c] : coefficients_) {
      while (p < k) {
        xp *= x;
        ++p;
      }
      v += Real(c) * xp;
    }
    return v;
  }

 private:
  PolynomialPotential(PotentialLabel label, std::map<unsigned, Rational> coefficients, Rational g)
      : label_(label), coefficients_(std::move(coefficients)), g_(std::move(g)) {
    for (auto it = coefficients_.begin(); it != coefficients_.end();) {
      if (it->second == 0)
        it = coefficients_.erase(it);
      else
        ++it;
    }
    if (coefficients_.empty() || coefficients_.rbegin()->first == 0 || coefficients_.rbegin()->second <= 0) {
      throw Error(ErrorKind::InvalidConfig, "potential must be confining: leading power > 0 with positive coefficient");
    }
  }

  PotentialLabel label_;
  std::map<unsigned, Rational> coefficients_;
  Rational g_;
};

/// Even (s = 0: psi(0) != 0, psi'(0) = 0) or odd (s = 1: psi(0) = 0, psi'(0) != 0).
class ParitySector {
 public:
  static ParitySector even() { return ParitySector(0); }
  static ParitySector odd() { return ParitySector(1); }

  explicit ParitySector(int s) : s_(s) {
    if (s != 0 && s != 1) throw Error(ErrorKind::InvalidConfig, "parity s must be 0 or 1");
  }

  int s() const { return s_; }
  bool is_even() const { return s_ == 0; }
  const char* name() const { return s_ == 0 ? "even" : "odd"; }

  friend bool operator==(ParitySector, ParitySector) = default;

 private:
  int s_;
};

enum class Hamiltonian { H_minus, H_plus, quartic };

inline const char* to_string(Hamiltonian h) {
  switch (h) {
    case Hamiltonian::H_minus: return "H-";
    case Hamiltonian::H_plus: return "H+";
    case Hamiltonian::quartic: return "quartic";
  }
  return "?";
}

/// State label E_n of one Hamiltonian; parity follows the full-line index.
struct SpectrumLabel {
  Hamiltonian hamiltonian;
  unsigned n;

  ParitySector parity() const { return ParitySector(static_cast<int>(n % 2)); }

  friend bool operator==(const SpectrumLabel&, const SpectrumLabel&) = default;
};

/// Taylor coefficients of E - V(x): source[0] = E - c_0, source[k] = -c_k.
template <typename T>
std::vector<T> riccati_source(const PolynomialPotential& potential, const T& energy) {
  std::vector<T> source(potential.degree() + 1, T(0));
  source[0] = energy;
  for (const auto& [k, c] : potential.coefficients()) source[k] -= T(c);
  return source;
}

}  // namespace susyrpm

#endif  // SUSYRPM_POTENTIAL_HPP
