#ifndef SUSYRPM_REPORTS_HPP
#define SUSYRPM_REPORTS_HPP

#include "susyrpm/format.hpp"
#include "susyrpm/rayleigh_ritz.hpp"
#include "susyrpm/rpm.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace susyrpm {

/// Published table, cell by cell, exactly as printed. Empty strings are
/// blank cells.
struct GoldenTable {
  int id = 0;
  std::string caption;
  std::string row_header;
  std::vector<std::string> columns;
  std::vector<std::string> row_labels;
  std::vector<std::vector<std::string>> cells;
};

namespace golden {

inline GoldenTable table1() {
  return {1,
          "Eigenvalues E_n^- from the Rayleigh-Ritz method",
          "N",
          {"n=0", "n=1", "n=2", "n=3", "n=4", "n=5", "n=6", "n=7", "n=8"},
          {"2", "3", "4", "5", "6", "7"},
          {
              {"0", "1.970246841", "5.765408776", "9.488542554", "", "", "", "", ""},
              {"0", "1.970246137", "5.511879703", "9.488418664", "14.13007837", "19.48962926", "", "", ""},
              {"0", "1.969640134", "5.507908922", "9.406978612", "13.89266195", "19.02107688", "24.09989393",
               "33.11107172", ""},
              {"0", "1.969515816", "5.507440820", "9.394523525", "13.87435060", "18.66009505", "24.07406802",
               "29.81927599", "35.91298387"},
              {"0", "1.969507628", "5.507202146", "9.394324659", "13.85957259", "18.64895855", "23.84777162",
               "29.26028194", "35.65656448"},
              {"0", "1.969507538", "5.507178381", "9.394287127", "13.85838650", "18.64704858", "23.80790714",
               "29.25748454", "34.98577701"},
          }};
}

inline GoldenTable table2() {
  return {2,
          "Eigenvalues E_n^+ from the Rayleigh-Ritz method",
          "N",
          {"n=0", "n=1", "n=2", "n=3", "n=4", "n=5", "n=6", "n=7"},
          {"2", "3", "4", "5", "6", "7"},
          {
              {"1.970246841", "5.529040685", "9.488542554", "14.35721210", "", "", "", ""},
              {"1.970246137", "5.514418950", "9.488418664", "14.00103534", "19.48962926", "24.52838046", "", ""},
              {"1.969640134", "5.510107538", "9.406978612", "13.92544875", "19.02107688", "24.52809061",
               "33.11107172", "37.63335229"},
              {"1.969515816", "5.507493533", "9.394523525", "13.86389218", "18.66009505", "23.91353748",
               "29.81927599", "36.33167441"},
              {"1.969507628", "5.507185747", "9.394324659", "13.85851252", "18.64895855", "23.81074205",
               "29.26028194", "35.02577244"},
              {"1.969507538", "5.507178915", "9.394287127", "13.85851126", "18.64704858", "23.81074194",
               "29.25748454", "34.98424967"},
          }};
}

inline GoldenTable table3() {
  return {3,
          "Eigenvalues for the partner SUSY Hamiltonian operators from the Riccati-Pade method",
          "k",
          {"Even (s=0)", "Odd (s=1)"},
          {"0", "1", "2", "3", "4", "5", "6", "7", "8"},
          {
              {"0", "1.9695075137502948249"},
              {"1.9695075137502948249", "5.5071777771459699676"},
              {"5.5071777771459699676", "9.3942674378738914658"},
              {"9.3942674378738914658", "13.858371936541300147"},
              {"13.858371936541300147", "18.645975633988444799"},
              {"18.645975633988444799", "23.807185917985766918"},
              {"23.8071859179857669", "29.2325545506214961"},
              {"29.23255455062149608", "34.9463357188906106"},
              {"34.94633571889061", ""},
          }};
}

inline GoldenTable table4() {
  return {4,
          "Eigenvalues E_n for the quartic oscillator",
          "N",
          {"n=0", "n=1", "n=2", "n=3", "n=4", "n=5"},
          {"2", "3", "4", "5", "6", "7", "RPM"},
          {
              {"1.077335422", "3.804924324", "8.102531212", "11.86759677", "", ""},
              {"1.061889825", "3.802939362", "7.486487866", "11.77079816", "16.91718138", "21.92232689"},
              {"1.060417725", "3.800572274", "7.456738018", "11.67894913", "16.29307103", "21.79883488"},
              {"1.060362727", "3.799746874", "7.456540880", "11.64634787", "16.29029658", "21.28503933"},
              {"1.060362727", "3.799674368", "7.455826496", "11.64483615", "16.26577116", "21.24138553"},
              {"1.060362223", "3.799673299", "7.455703721", "11.64480669", "16.26191320", "21.24054440"},
              {"1.0603620904841828996", "3.7996730298013941688", "7.4556979379867383922", "11.644745511378162021",
               "16.261826018850225938", "21.238372918235940024"},
          }};
}

inline GoldenTable table(int id) {
  switch (id) {
    case 1: return table1();
    case 2: return table2();
    case 3: return table3();
    case 4: return table4();
  }
  throw Error(ErrorKind::InvalidConfig, "table id must be 1, 2, 3 or 4, got " + std::to_string(id));
}

}  // namespace golden

struct ReproduceOptions {
  unsigned variational_digits = 50;
  unsigned rpm_digits = 80;
  /// The quartic Hankel determinants in x^2 lose about twice as many digits
  /// by D = 30 as the SUSY ones.
  unsigned quartic_rpm_digits = 160;
  unsigned d_max = 30;
  RpmOptions rpm;
  std::string quartic_e_max = "25";
};

struct CellMismatch {
  std::string row, column, printed, computed;
  std::string describe() const {
    return "row " + row + ", " + column + ": printed " + printed + ", computed " + (computed.empty() ? "none" : computed);
  }
};

/// A computed table in the layout of its golden counterpart.
struct TableReport {
  GoldenTable golden;
  std::vector<std::vector<std::optional<Real>>> values;  // same shape as golden.cells
  std::vector<CellMismatch> mismatches;
  /// Cells that must be exactly zero (the exact ground state in the RPM table).
  std::vector<std::pair<std::size_t, std::size_t>> exact_zero_cells;
  unsigned decimal_digits = 0;
  double seconds = 0;
  /// Extra data kept for cross checks.
  std::optional<SpectrumTable> variational;
  std::vector<RpmSpectrum> rpm;

  bool ok() const { return mismatches.empty(); }

  /// Computed value rendered to the printed length of the golden cell.
  std::string rendered(std::size_t r, std::size_t c) const {
    const auto& v = values[r][c];
    if (!v) return "";
    const std::string& printed = golden.cells[r][c];
    if (printed.empty()) return format_significant(*v, 10);
    return format_fixed(*v, printed_decimals(printed));
  }

  std::string markdown() const {
    std::ostringstream out;
    out << "Table " << golden.id << ": " << golden.caption << "\n\n";
    out << "| " << golden.row_header;
    for (const auto& c : golden.columns) out << " | " << c;
    out << " |\n|---";
    for (std::size_t c = 0; c < golden.columns.size(); ++c) out << "|---";
    out << "|\n";
    for (std::size_t r = 0; r < golden.row_labels.size(); ++r) {
      out << "| " << golden.row_labels[r];
      for (std::size_t c = 0; c < golden.columns.size(); ++c) out << " | " << rendered(r, c);
      out << " |\n";
    }
    return out.str();
  }
};

namespace detail {

inline void compare(TableReport& report) {
  const auto& g = report.golden;
  PrecisionScope scope(std::max(report.decimal_digits, PrecisionContext::kMinDigits));
  for (std::size_t r = 0; r < g.cells.size(); ++r) {
    for (std::size_t c = 0; c < g.cells[r].size(); ++c) {
      const std::string& printed = g.cells[r][c];
      if (printed.empty()) continue;
      const auto& v = report.values[r][c];
      const bool exact = std::find(report.exact_zero_cells.begin(), report.exact_zero_cells.end(),
                                   std::make_pair(r, c)) != report.exact_zero_cells.end();
      const bool good = v && (exact ? *v == 0 : matches_printed(*v, printed));
      if (!good)
        report.mismatches.push_back(
            {g.row_labels[r], g.columns[c], printed, v ? format_fixed(*v, printed_decimals(printed) + 3) : ""});
    }
  }
}

inline void fill_variational_rows(TableReport& report, const SpectrumTable& table, std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r) {
    const unsigned size = static_cast<unsigned>(std::stoul(report.golden.row_labels[r]));
    const auto& row = table.row(size);
    for (std::size_t c = 0; c < report.golden.columns.size() && c < row.size(); ++c) report.values[r][c] = row[c].value;
  }
}

}  // namespace detail

/// Computes table `id` with the published parameters and compares it with
/// the printed values. Never throws on a mismatch; see reproduce_table.
inline TableReport compute_table(int id, const ReproduceOptions& opt = {}) {
  TableReport report;
  report.golden = golden::table(id);
  const auto& g = report.golden;
  report.values.assign(g.cells.size(), std::vector<std::optional<Real>>(g.columns.size()));
  const auto start = std::chrono::steady_clock::now();

  if (id == 1 || id == 2 || id == 4) {
    const auto ctx = PrecisionContext::make(opt.variational_digits);
    const auto potential = id == 1   ? PolynomialPotential::susy_minus()
                           : id == 2 ? PolynomialPotential::susy_plus()
                                     : PolynomialPotential::quartic();
    report.variational = variational_table(potential, size_range(2, 7), ctx);
    report.decimal_digits = opt.variational_digits;
    detail::fill_variational_rows(report, *report.variational, 6);
  }
  if (id == 3) {
    const auto ctx = PrecisionContext::make(opt.rpm_digits);
    report.decimal_digits = opt.rpm_digits;
    const auto potential = PolynomialPotential::susy_minus();
    for (int s : {0, 1}) {
      report.rpm.push_back(rpm_spectrum(potential, ParitySector(s), opt.d_max, {0, 1}, opt.rpm, ctx));
      const auto values = report.rpm.back().values();
      for (std::size_t r = 0; r < g.cells.size() && r < values.size(); ++r) report.values[r][s] = values[r];
    }
    report.exact_zero_cells.push_back({0, 0});
  }
  if (id == 4) {
    const auto ctx = PrecisionContext::make(opt.quartic_rpm_digits);
    report.decimal_digits = std::max(report.decimal_digits, opt.quartic_rpm_digits);
    RpmOptions rpm = opt.rpm;
    rpm.window.e_max = opt.quartic_e_max;
    std::vector<Real> pooled;
    for (int s : {0, 1}) {
      report.rpm.push_back(rpm_spectrum(PolynomialPotential::quartic(), ParitySector(s), opt.d_max, {0}, rpm, ctx));
      for (auto& v : report.rpm.back().values()) pooled.push_back(v);
    }
    PrecisionScope scope(ctx.decimal_digits);
    std::sort(pooled.begin(), pooled.end());
    const std::size_t row = g.cells.size() - 1;
    for (std::size_t c = 0; c < g.columns.size() && c < pooled.size(); ++c) report.values[row][c] = pooled[c];
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  detail::compare(report);
  return report;
}

/// compute_table, then ReproductionFailure listing every mismatched cell.
inline TableReport reproduce_table(int id, const ReproduceOptions& opt = {}) {
  auto report = compute_table(id, opt);
  if (!report.ok()) {
    std::string message = "table " + std::to_string(id) + " differs in " + std::to_string(report.mismatches.size()) +
                          " cell(s):";
    for (const auto& m : report.mismatches) message += "\n  " + m.describe();
    throw Error(ErrorKind::ReproductionFailure, message);
  }
  return report;
}

}  // namespace susyrpm

#endif  // SUSYRPM_REPORTS_HPP
