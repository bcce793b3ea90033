// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include "susyrpm/hankel.hpp"
#include "susyrpm/reports.hpp"
#include "susyrpm/susy.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

using namespace susyrpm;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << detail << std::endl;
  if (!ok) ++failures;
}

std::string mismatch_summary(const TableReport& r) {
  std::ostringstream out;
  out << r.mismatches.size() << " mismatched cell(s), " << r.seconds << " s";
  for (const auto& m : r.mismatches) out << "; " << m.describe();
  return out.str();
}

std::string sci(const Real& x) { return x.str(3, std::ios_base::scientific); }

void variational_tables(const TableReport& t1, const TableReport& t2) {
  report(1, t1.ok() && t1.seconds < 10, "Table 1: " + mismatch_summary(t1));
  report(2, t2.ok() && t2.seconds < 10, "Table 2: " + mismatch_summary(t2));
}

// Criterion 5: partner degeneracy and interleaving from the Table 3 run.
LabeledSpectrum degeneracy(const TableReport& t3, const TableReport& t1, const TableReport& t2) {
  PrecisionScope scope(t3.decimal_digits);
  const auto even = t3.rpm[0].values();
  const auto odd = t3.rpm[1].values();
  LabeledSpectrum spectrum;
  try {
    spectrum = classify_roots(even, odd, *t1.variational, *t2.variational, Real("1e-6"));
  } catch (const Error& e) {
    report(5, false, std::string("classification failed: ") + e.what());
    return spectrum;
  }
  const auto pairs = degeneracy_report(spectrum);
  Real worst = 0;
  unsigned counted = 0;
  std::ostringstream detail;
  for (const auto& p : pairs) {
    if (p.n < 1 || p.n > 8) continue;
    ++counted;
    worst = std::max(worst, p.residual);
    detail << " n=" << p.n << ":" << sci(p.residual);
  }
  // the even list is 9 long and the odd list 8 long in the published table
  const std::size_t even_len = std::min<std::size_t>(even.size(), 9), odd_len = std::min<std::size_t>(odd.size(), 8);
  const auto b = interleaving_check(std::vector<Real>(even.begin(), even.begin() + even_len),
                                    std::vector<Real>(odd.begin(), odd.begin() + odd_len), Real("1e-15"));
  const bool interleaved = b.size() == 8 && std::all_of(b.begin(), b.end(), [](bool x) { return x; });
  report(5, counted == 8 && worst <= Real("1e-15") && interleaved,
         "max |E_n^- - E_{n-1}^+| over " + std::to_string(counted) + " pairs = " + sci(worst) +
             ", interleaving " + (interleaved ? "all true" : "not all true") + ";" + detail.str());
  return spectrum;
}

void exact_solution() {
  bool ok = true;
  std::ostringstream detail;
  const auto ctx = PrecisionContext::make(50);
  unsigned solved = 0, skipped = 0;
  {
    PrecisionScope scope(ctx.decimal_digits);
    const Real bound = pow(Real(10), -static_cast<int>(ctx.decimal_digits) + 10);
    for (unsigned n = 1; n <= 25; ++n) {
      try {
        const auto eig = solve_sector(PolynomialPotential::susy_minus(), ParitySector::even(), n, ctx).eigenvalues;
        ++solved;
        if (abs(eig[0]) > bound) {
          ok = false;
          detail << " N=" << n << " gives " << sci(eig[0]) << ";";
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::IllConditioned) throw;
        ++skipped;
      }
    }
  }
  auto series = series_polynomials(PolynomialPotential::susy_minus(), ParitySector::even(), 20);
  unsigned zeros = 0;
  for (unsigned d = 0; d <= 1; ++d)
    for (unsigned D = 3 - d; D <= 8; ++D) {
      if (exact_hankel_determinant(series, D, d, Rational(0)) == 0)
        ++zeros;
      else {
        ok = false;
        detail << " H_" << D << "^" << d << "(0) != 0;";
      }
    }
  report(6, ok && solved > 0,
         "E_0^- = 0 for " + std::to_string(solved) + " basis sizes (" + std::to_string(skipped) +
             " ill-conditioned), " + std::to_string(zeros) + " exact Hankel zeros;" + detail.str());
}

void oracle_equivalence() {
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> num(-1000, 40000), den(1, 997);
  const unsigned digits = 50;
  Real worst_ulps = 0;
  unsigned checked = 0;
  bool ok = true;
  for (const auto& v : {PolynomialPotential::susy_minus(), PolynomialPotential::susy_plus(),
                        PolynomialPotential::quartic()})
    for (int s : {0, 1}) {
      auto series = series_polynomials(v, ParitySector(s), 16);
      for (int trial = 0; trial < 20; ++trial) {
        const Rational e(num(rng), den(rng) * 1000);
        for (unsigned D = 1; D <= 6; ++D)
          for (unsigned d = 0; d <= 1; ++d) {
            const Rational exact = exact_hankel_determinant(series, D, d, e);
            const Real numeric = hankel_value(v, ParitySector(s), e, D, d, digits);
            PrecisionScope scope(digits);
            ++checked;
            if (exact == 0) {
              ok = ok && numeric == 0;
              continue;
            }
            const Real oracle(exact);
            const Real ulps = abs(numeric - oracle) / ulp(oracle);
            worst_ulps = std::max(worst_ulps, ulps);
          }
      }
    }
  PrecisionScope scope(digits);
  ok = ok && worst_ulps <= 5;
  report(7, ok, std::to_string(checked) + " determinants, worst " + worst_ulps.str(3) + " ulp at " +
                    std::to_string(digits) + " digits");
}

void properties(const TableReport& t1, const TableReport& t2, const TableReport& t4,
                const LabeledSpectrum& spectrum) {
  std::ostringstream detail;
  bool ok = true;

  // moments
  {
    const auto ctx = PrecisionContext::make(60);
    const auto m = moment_table(61, ctx);
    PrecisionScope scope(60);
    bool good = true;
    for (unsigned n = 0; n + 3 <= 60; ++n)
      good = good && abs(m[n + 3] - Real(n + 1) / 2 * m[n]) <= 8 * ulp(m[n + 3]);
    for (unsigned n = 1; n < 60; ++n) good = good && m[n] * m[n] <= m[n - 1] * m[n + 1];
    detail << "moments " << (good ? "ok" : "FAILED") << ";";
    ok = ok && good;
  }

  // emergent symmetry
  {
    bool good = true;
    Real worst = 0;
    for (unsigned digits : {50u, 80u}) {
      const auto ctx = PrecisionContext::make(digits);
      PrecisionScope scope(digits);
      const Real bound = pow(Real(10), -static_cast<int>(digits) + 8);
      for (const auto& v : {PolynomialPotential::susy_minus(), PolynomialPotential::susy_plus(),
                            PolynomialPotential::quartic()})
        for (int s : {0, 1})
          for (unsigned n = 1; n <= 12; ++n) {
            BasisSpec basis(ParitySector(s), n);
            auto m = moment_table(basis.required_moment_order(v.degree()), ctx);
            const Real gap = hamiltonian_matrix_checked(v, basis, m).asymmetry / bound;
            worst = std::max(worst, gap);
            good = good && gap <= 1;
          }
    }
    detail << " symmetry worst " << worst.str(3) << " of bound;";
    ok = ok && good;
  }

  // monotonicity in N per state and sector
  {
    bool good = true;
    const auto ctx = PrecisionContext::make(50);
    PrecisionScope scope(50);
    for (const auto& v : {PolynomialPotential::susy_minus(), PolynomialPotential::susy_plus(),
                          PolynomialPotential::quartic()})
      for (int s : {0, 1}) {
        std::vector<Real> previous;
        for (unsigned n = 1; n <= 12; ++n) {
          const auto eig = solve_sector(v, ParitySector(s), n, ctx).eigenvalues;
          for (std::size_t k = 0; k < previous.size(); ++k) good = good && eig[k] <= previous[k] + ulp(previous[k]);
          previous = eig;
        }
      }
    detail << " monotonicity " << (good ? "ok" : "FAILED") << ";";
    ok = ok && good;
  }

  // variational upper bounds over the RPM values
  {
    PrecisionScope scope(80);
    unsigned matched = 0;
    bool good = true;
    for (const auto& e : spectrum.entries) {
      if (!e.label) continue;
      const auto& table = e.label->hamiltonian == Hamiltonian::H_minus ? *t1.variational : *t2.variational;
      for (const auto& [size, row] : table.rows)
        if (e.label->n < row.size()) {
          ++matched;
          // slack covers the exact zero ground state, which the 50-digit
          // variational solve only reaches to rounding
          good = good && row[e.label->n].value >= e.value - Real("1e-40");
        }
    }
    std::vector<Real> quartic;
    for (const auto& run : t4.rpm)
      for (const auto& v : run.values()) quartic.push_back(v);
    std::sort(quartic.begin(), quartic.end());
    for (const auto& [size, row] : t4.variational->rows)
      for (std::size_t n = 0; n < row.size() && n < quartic.size(); ++n) {
        ++matched;
        good = good && row[n].value >= quartic[n];
      }
    detail << " upper bounds " << (good ? "ok" : "FAILED") << " for " << matched << " matched values";
    ok = ok && good && matched > 0;
  }
  report(8, ok, detail.str());
}

}  // namespace

int main() {
  const auto t1 = compute_table(1);
  const auto t2 = compute_table(2);
  variational_tables(t1, t2);

  const auto t3 = compute_table(3);
  report(3, t3.ok() && t3.seconds < 1800, "Table 3: " + mismatch_summary(t3));
  const auto t4 = compute_table(4);
  report(4, t4.ok(), "Table 4: " + mismatch_summary(t4));

  const auto spectrum = degeneracy(t3, t1, t2);
  exact_solution();
  oracle_equivalence();
  properties(t1, t2, t4, spectrum);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion(s) fail") << std::endl;
  return failures;
}
