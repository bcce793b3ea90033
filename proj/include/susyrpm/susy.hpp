#ifndef SUSYRPM_SUSY_HPP
#define SUSYRPM_SUSY_HPP

#include "susyrpm/rayleigh_ritz.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace susyrpm {

enum class ValueSource { rpm, variational };

struct LabeledValue {
  Real value;
  std::optional<SpectrumLabel> label;  // empty: unclassified
  ValueSource source = ValueSource::rpm;
};

struct PairResidual {
  unsigned n;
  Real e_minus;
  Real e_plus_shifted;  // E_{n-1}^+
  Real residual;
};

struct LabeledSpectrum {
  std::vector<LabeledValue> entries;  // ascending
  std::vector<PairResidual> residuals;

  const LabeledValue* find(Hamiltonian h, unsigned n) const {
    for (const auto& e : entries)
      if (e.label && e.label->hamiltonian == h && e.label->n == n) return &e;
    return nullptr;
  }
};

namespace detail {

// Ordering of a single-parity run: E_s^- < E_s^+ < E_{s+2}^- < E_{s+2}^+ < ...
inline SpectrumLabel interleaved_label(int s, std::size_t position) {
  const unsigned n = static_cast<unsigned>(s) + 2 * static_cast<unsigned>(position / 2);
  return {position % 2 == 0 ? Hamiltonian::H_minus : Hamiltonian::H_plus, n};
}

inline std::size_t interleaved_position(int s, const SpectrumLabel& label) {
  return 2 * ((label.n - static_cast<unsigned>(s)) / 2) + (label.hamiltonian == Hamiltonian::H_plus ? 1 : 0);
}

inline const Real* variational_value(const SpectrumTable& table, unsigned n) { return table.state(n); }

inline void classify_list(const std::vector<Real>& roots, int s, const SpectrumTable& var_minus,
                          const SpectrumTable& var_plus, const Real& tol, std::vector<LabeledValue>& out) {
  std::size_t expected = 0;
  for (const auto& r : roots) {
    const Real slack = tol * (1 + abs(r));
    // proximity to variational upper bounds of the right parity
    std::vector<SpectrumLabel> near;
    for (Hamiltonian h : {Hamiltonian::H_minus, Hamiltonian::H_plus}) {
      const auto& table = h == Hamiltonian::H_minus ? var_minus : var_plus;
      for (unsigned n = static_cast<unsigned>(s); table.state(n); n += 2) {
        const Real& v = *table.state(n);
        if (v >= r - slack && v - r <= slack) near.push_back({h, n});
      }
    }
    const SpectrumLabel by_order = interleaved_label(s, expected);
    std::optional<SpectrumLabel> label;
    if (near.size() == 1) {
      label = near.front();
    } else if (near.size() > 1) {
      if (std::find(near.begin(), near.end(), by_order) == near.end())
        throw Error(ErrorKind::AmbiguousClassification,
                    "root " + r.str(20) + " lies within tolerance of several variational values");
      label = by_order;
    } else {
      // no variational value close enough: fall back on the ordering, as long
      // as the upper bound is not violated
      const auto& table = by_order.hamiltonian == Hamiltonian::H_minus ? var_minus : var_plus;
      const Real* v = variational_value(table, by_order.n);
      if (!v || *v >= r - slack) label = by_order;
    }
    out.push_back({r, label, ValueSource::rpm});
    if (label) expected = interleaved_position(s, *label) + 1;
  }
}

}  // namespace detail

/// Labels converged RPM roots of the even and odd runs as states of H- or
/// H+, using the variational upper bounds and the interleaved ordering.
inline LabeledSpectrum classify_roots(const std::vector<Real>& even_rpm, const std::vector<Real>& odd_rpm,
                                      const SpectrumTable& var_minus, const SpectrumTable& var_plus,
                                      const Real& tol) {
  LabeledSpectrum out;
  detail::classify_list(even_rpm, 0, var_minus, var_plus, tol, out.entries);
  detail::classify_list(odd_rpm, 1, var_minus, var_plus, tol, out.entries);
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const LabeledValue& a, const LabeledValue& b) { return a.value < b.value; });
  return out;
}

/// |E_n^- - E_{n-1}^+| for every n >= 1 with both partners labeled.
inline std::vector<PairResidual> degeneracy_report(const LabeledSpectrum& spectrum) {
  std::vector<PairResidual> out;
  unsigned top = 0;
  for (const auto& e : spectrum.entries)
    if (e.label) top = std::max(top, e.label->n);
  for (unsigned n = 1; n <= top; ++n) {
    const auto* minus = spectrum.find(Hamiltonian::H_minus, n);
    const auto* plus = spectrum.find(Hamiltonian::H_plus, n - 1);
    if (minus && plus) out.push_back({n, minus->value, plus->value, abs(minus->value - plus->value)});
  }
  return out;
}

inline Real max_residual(const std::vector<PairResidual>& pairs) {
  Real worst = 0;
  for (const auto& p : pairs) worst = std::max(worst, p.residual);
  return worst;
}

/// b_k = |odd[k] - even[k+1]| <= tol * (1 + |odd[k]|).
inline std::vector<bool> interleaving_check(const std::vector<Real>& even, const std::vector<Real>& odd,
                                            const Real& tol) {
  std::vector<bool> out;
  for (std::size_t k = 0; k < odd.size() && k + 1 < even.size(); ++k)
    out.push_back(abs(odd[k] - even[k + 1]) <= tol * (1 + abs(odd[k])));
  return out;
}

}  // namespace susyrpm

#endif  // SUSYRPM_SUSY_HPP
