#include <catch_amalgamated.hpp>

#include "susyrpm/reports.hpp"
#include "susyrpm/susy.hpp"

using namespace susyrpm;

namespace {
struct Fixture {
  PrecisionContext ctx = PrecisionContext::make(50);
  SpectrumTable minus = variational_table(PolynomialPotential::susy_minus(), size_range(2, 7), ctx);
  SpectrumTable plus = variational_table(PolynomialPotential::susy_plus(), size_range(2, 7), ctx);
  std::vector<Real> even, odd;

  Fixture() {
    PrecisionScope scope(50);
    const auto g = golden::table3();
    for (const auto& row : g.cells) {
      if (!row[0].empty()) even.emplace_back(row[0]);
      if (!row[1].empty()) odd.emplace_back(row[1]);
    }
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

std::vector<std::pair<Hamiltonian, unsigned>> labels(const std::vector<LabeledValue>& entries) {
  std::vector<std::pair<Hamiltonian, unsigned>> out;
  for (const auto& e : entries) {
    REQUIRE(e.label);
    out.emplace_back(e.label->hamiltonian, e.label->n);
  }
  return out;
}
}  // namespace

TEST_CASE("labels of the published even and odd columns") {
  const auto& f = fixture();
  PrecisionScope scope(50);
  const Real tol("1e-6");
  std::vector<Real> even(f.even.begin(), f.even.begin() + 4), odd(f.odd.begin(), f.odd.begin() + 3);
  auto e = classify_roots(even, {}, f.minus, f.plus, tol);
  using H = Hamiltonian;
  CHECK(labels(e.entries) == std::vector<std::pair<H, unsigned>>{{H::H_minus, 0}, {H::H_plus, 0}, {H::H_minus, 2},
                                                                  {H::H_plus, 2}});
  auto o = classify_roots({}, odd, f.minus, f.plus, tol);
  CHECK(labels(o.entries) ==
        std::vector<std::pair<H, unsigned>>{{H::H_minus, 1}, {H::H_plus, 1}, {H::H_minus, 3}});
  CHECK(classify_roots({}, {}, f.minus, f.plus, tol).entries.empty());
}

TEST_CASE("every published value is classified, consistently with parity") {
  const auto& f = fixture();
  PrecisionScope scope(50);
  auto spectrum = classify_roots(f.even, f.odd, f.minus, f.plus, Real("1e-6"));
  CHECK(spectrum.entries.size() == f.even.size() + f.odd.size());
  for (const auto& e : spectrum.entries) {
    REQUIRE(e.label);
    CHECK(e.label->parity().s() == static_cast<int>(e.label->n % 2));
  }
  CHECK(std::is_sorted(spectrum.entries.begin(), spectrum.entries.end(),
                       [](const auto& a, const auto& b) { return a.value < b.value; }));
}

TEST_CASE("classification is stable when tol changes tenfold") {
  const auto& f = fixture();
  PrecisionScope scope(50);
  auto base = labels(classify_roots(f.even, f.odd, f.minus, f.plus, Real("1e-6")).entries);
  CHECK(labels(classify_roots(f.even, f.odd, f.minus, f.plus, Real("1e-5")).entries) == base);
  CHECK(labels(classify_roots(f.even, f.odd, f.minus, f.plus, Real("1e-7")).entries) == base);
}

TEST_CASE("degeneracy of the published pairs") {
  const auto& f = fixture();
  PrecisionScope scope(50);
  auto spectrum = classify_roots(f.even, f.odd, f.minus, f.plus, Real("1e-6"));
  auto pairs = degeneracy_report(spectrum);
  REQUIRE(pairs.size() == 8);
  CHECK(pairs[0].n == 1);
  CHECK(pairs[0].residual == 0);
  CHECK(pairs[3].n == 4);
  CHECK(pairs[3].residual == 0);
  // the last pair is printed with fewer digits
  CHECK(max_residual(pairs) < Real("1e-14"));
  CHECK(degeneracy_report(LabeledSpectrum{}).empty());
}

TEST_CASE("interleaving of the published columns") {
  const auto& f = fixture();
  PrecisionScope scope(50);
  auto b = interleaving_check(f.even, f.odd, Real("1e-15"));
  REQUIRE(b.size() == 8);
  for (bool ok : b) CHECK(ok);
  CHECK(interleaving_check({Real(0)}, {}, Real("1e-15")).empty());

  auto perturbed = f.odd;
  perturbed[2] += Real("1e-6");
  auto c = interleaving_check(f.even, perturbed, Real("1e-15"));
  CHECK_FALSE(c[2]);
  CHECK(c[1]);
  CHECK(c[3]);
}

TEST_CASE("a root above both variational bounds is left unclassified") {
  const auto& f = fixture();
  PrecisionScope scope(50);
  // E_0^- bound is 0; a root at 1 in place of it violates the bound
  auto s = classify_roots({Real(1)}, {}, f.minus, f.plus, Real("1e-6"));
  REQUIRE(s.entries.size() == 1);
  CHECK_FALSE(s.entries[0].label);
}

TEST_CASE("two equally close partners with a contradicting order are ambiguous") {
  PrecisionScope scope(40);
  SpectrumTable minus, plus;
  // even states: E_0^- = 1, E_0^+ = 1 (identical bounds)
  minus.rows[1] = {{Real(1), 0, ParitySector::even()}};
  plus.rows[1] = {{Real(1), 0, ParitySector::even()}, {Real(3), 1, ParitySector::odd()}};
  // both roots see both candidates; the ordering settles each one
  auto ok = classify_roots({Real(1), Real(1)}, {}, minus, plus, Real("1e-6"));
  CHECK(ok.entries.size() == 2);
  // third root: the ordering expects E_2^-, but only E_0^- and E_0^+ are near
  minus.rows[1].push_back({Real(5), 1, ParitySector::odd()});
  minus.rows[1].push_back({Real(9), 2, ParitySector::even()});
  CHECK_THROWS_AS(classify_roots({Real(0), Real("0.5"), Real(1)}, {}, minus, plus, Real("1e-6")), Error);
}
