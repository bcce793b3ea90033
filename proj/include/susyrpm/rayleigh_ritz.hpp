#ifndef SUSYRPM_RAYLEIGH_RITZ_HPP
#define SUSYRPM_RAYLEIGH_RITZ_HPP

#include "susyrpm/linalg.hpp"
#include "susyrpm/moments.hpp"
#include "susyrpm/potential.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace susyrpm {

/// Half-line basis x^j exp(-x^3/3). The even sector drops j = 1 because
/// x exp(-x^3/3) has nonzero slope at the origin.
class BasisSpec {
 public:
  BasisSpec(ParitySector parity, unsigned size) : parity_(parity) {
    if (size == 0) throw Error(ErrorKind::InvalidConfig, "basis size must be positive");
    if (parity.is_even()) {
      indices_.push_back(0);
      for (unsigned j = 2; j <= size; ++j) indices_.push_back(j);
    } else {
      for (unsigned j = 1; j <= size; ++j) indices_.push_back(j);
    }
  }

  ParitySector parity() const { return parity_; }
  unsigned size() const { return static_cast<unsigned>(indices_.size()); }
  const std::vector<unsigned>& indices() const { return indices_; }
  unsigned max_index() const { return indices_.back(); }

  /// Highest moment order needed for S and H with a potential of this degree.
  unsigned required_moment_order(unsigned potential_degree) const {
    return 2 * max_index() + std::max(4u, potential_degree);
  }

 private:
  ParitySector parity_;
  std::vector<unsigned> indices_;
};

inline void require_moments(const BasisSpec& basis, const MomentTable& moments, unsigned degree) {
  if (moments.n_max() < basis.required_moment_order(degree)) {
    throw Error(ErrorKind::InsufficientCoefficients,
                "moment table too short: need order " + std::to_string(basis.required_moment_order(degree)));
  }
}

/// S_ab = M(j_a + j_b)
inline SymmetricMatrix<Real> overlap_matrix(const BasisSpec& basis, const MomentTable& moments) {
  require_moments(basis, moments, 4);
  const auto& j = basis.indices();
  SymmetricMatrix<Real> s(j.size());
  for (std::size_t a = 0; a < j.size(); ++a)
    for (std::size_t b = a; b < j.size(); ++b) s(a, b) = moments[j[a] + j[b]];
  return s;
}

/// <phi_a | H phi_b> from the one-sided closed form, before symmetrization.
/// -phi_j'' = (-j(j-1) x^{j-2} + (2j+2) x^{j+1} - x^{j+4}) exp(-x^3/3).
inline DenseMatrix<Real> hamiltonian_one_sided(const PolynomialPotential& potential, const BasisSpec& basis,
                                               const MomentTable& moments) {
  require_moments(basis, moments, potential.degree());
  const auto& j = basis.indices();
  const std::size_t n = j.size();
  DenseMatrix<Real> h(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const unsigned sum = j[a] + j[b];
      const unsigned jb = j[b];
      Real v(0);
      if (jb >= 2) v -= Real(jb * (jb - 1)) * moments[sum - 2];
      v += Real(2 * jb + 2) * moments[sum + 1];
      // Fold the kinetic -x^{j+4} into the x^4 coefficient; for V = x^4 + ...
      // the quartic terms cancel exactly.
      const Rational quartic = potential.coefficient(4) - 1;
      if (quartic != 0) v += Real(quartic) * moments[sum + 4];
      for (const auto& [k, c] : potential.coefficients()) {
        if (k == 4) continue;
        v += Real(c) * moments[sum + k];
      }
      h(a, b) = v;
    }
  }
  return h;
}

struct HamiltonianAssembly {
  SymmetricMatrix<Real> matrix;
  /// max |H_ab - H_ba| / max(|H_ab|, 1) before averaging.
  Real asymmetry;
};

/// Assembles H, checks the emergent symmetry against 10^(-digits+8), then
/// averages. A violation means the moment table is inconsistent.
inline HamiltonianAssembly hamiltonian_matrix_checked(const PolynomialPotential& potential, const BasisSpec& basis,
                                                      const MomentTable& moments) {
  PrecisionScope scope(moments.decimal_digits());
  auto one_sided = hamiltonian_one_sided(potential, basis, moments);
  Real gap = asymmetry(one_sided);
  const Real bound = pow(Real(10), -static_cast<int>(moments.decimal_digits()) + 8);
  if (gap > bound) {
    throw Error(ErrorKind::IllConditioned, "Hamiltonian matrix is not symmetric to working precision (asymmetry " +
                                               gap.str(6, std::ios::scientific) + ")");
  }
  return {symmetrize(one_sided), gap};
}

inline SymmetricMatrix<Real> hamiltonian_matrix(const PolynomialPotential& potential, const BasisSpec& basis,
                                                const MomentTable& moments) {
  return hamiltonian_matrix_checked(potential, basis, moments).matrix;
}

struct SectorSolution {
  std::vector<Real> eigenvalues;
  double condition_log10 = 0;
};

inline SectorSolution solve_sector(const PolynomialPotential& potential, ParitySector parity, unsigned size,
                                   const PrecisionContext& ctx, int max_sweeps = 100) {
  PrecisionScope scope(ctx.decimal_digits);
  BasisSpec basis(parity, size);
  auto moments = moment_table(basis.required_moment_order(potential.degree()), ctx);
  auto s = overlap_matrix(basis, moments);
  auto h = hamiltonian_matrix(potential, basis, moments);
  auto sol = solve_generalized(h, s, machine_epsilon(), max_sweeps);
  return {std::move(sol.eigenvalues), sol.condition_log10};
}

/// How the even sector of V+ is obtained. `direct` diagonalizes V+ in the
/// even half-line basis. `partner` uses the odd sector of V- at the same
/// size: A = d/dx + x^2 maps odd eigenfunctions of H- onto even ones of H+
/// with the same energy, and this is the route the published V+ table follows.
enum class VariationalRoute { direct, partner };

inline SectorSolution solve_sector(const PolynomialPotential& potential, ParitySector parity, unsigned size,
                                   const PrecisionContext& ctx, VariationalRoute route) {
  if (route == VariationalRoute::partner && potential.label() == PotentialLabel::susy_plus && parity.is_even())
    return solve_sector(PolynomialPotential::susy_minus(potential.coupling()), ParitySector::odd(), size, ctx);
  return solve_sector(potential, parity, size, ctx);
}

/// Variational energies by basis size. Values are upper bounds at the given
/// size, nothing more: completeness of the basis is not established.
struct SpectrumTable {
  struct Entry {
    Real value;
    unsigned n;
    ParitySector parity;
  };

  PotentialLabel potential = PotentialLabel::custom;
  /// N -> merged ascending list with full-line index n
  std::map<unsigned, std::vector<Entry>> rows;
  /// N -> worst overlap condition estimate (log10) of the two sectors
  std::map<unsigned, double> condition_log10;

  const std::vector<Entry>& row(unsigned size) const {
    auto it = rows.find(size);
    if (it == rows.end()) throw Error(ErrorKind::InvalidConfig, "no row for N=" + std::to_string(size));
    return it->second;
  }

  unsigned largest_size() const { return rows.rbegin()->first; }

  /// Value of state n at the largest N that has it.
  const Real* state(unsigned n) const {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
      if (n < it->second.size()) return &it->second[n].value;
    return nullptr;
  }
};

/// Solves the even and odd sectors separately for each N and merges them in
/// ascending order, assigning full-line indices n = 0, 1, ...
inline SpectrumTable variational_table(const PolynomialPotential& potential, const std::vector<unsigned>& sizes,
                                       const PrecisionContext& ctx,
                                       VariationalRoute route = VariationalRoute::partner) {
  if (sizes.empty()) throw Error(ErrorKind::InvalidConfig, "N range is empty");
  PrecisionScope scope(ctx.decimal_digits);
  SpectrumTable table;
  table.potential = potential.label();
  for (unsigned size : sizes) {
    auto even = solve_sector(potential, ParitySector::even(), size, ctx, route);
    auto odd = solve_sector(potential, ParitySector::odd(), size, ctx, route);
    std::vector<SpectrumTable::Entry> merged;
    for (auto& v : even.eigenvalues) merged.push_back({v, 0, ParitySector::even()});
    for (auto& v : odd.eigenvalues) merged.push_back({v, 0, ParitySector::odd()});
    std::stable_sort(merged.begin(), merged.end(),
                     [](const auto& a, const auto& b) { return a.value < b.value; });
    for (unsigned n = 0; n < merged.size(); ++n) merged[n].n = n;
    table.rows[size] = std::move(merged);
    table.condition_log10[size] = std::max(even.condition_log10, odd.condition_log10);
  }
  return table;
}

inline std::vector<unsigned> size_range(unsigned first, unsigned last) {
  std::vector<unsigned> out;
  for (unsigned n = first; n <= last; ++n) out.push_back(n);
  return out;
}

}  // namespace susyrpm

#endif  // SUSYRPM_RAYLEIGH_RITZ_HPP
