#ifndef SUSYRPM_TOOLS_CLI_APP_HPP
#define SUSYRPM_TOOLS_CLI_APP_HPP

#include "susyrpm/moments.hpp"
#include "susyrpm/reports.hpp"
#include "susyrpm/susy.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace susyrpm::cli {

using json = nlohmann::json;

enum ExitCode { kOk = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Settings after merging defaults, the config file and flags, all kept as
/// text until the subcommand converts them.
using Settings = std::map<std::string, std::string>;

inline const std::map<std::string, Settings>& defaults() {
  static const std::map<std::string, Settings> table = {
      {"moments", {{"nmax", "10"}, {"digits", "50"}}},
      {"variational",
       {{"potential", "susy-minus"}, {"nmin", "2"}, {"nmax", "7"}, {"digits", "50"}, {"format", "csv"},
        {"route", "partner"}}},
      {"rpm",
       {{"potential", "susy"}, {"s", "0"}, {"dmax", "30"}, {"d", "0"}, {"digits", "80"}, {"emin", "-1"},
        {"emax", "40"}, {"grid-step", "0.05"}, {"root-tolerance", ""}, {"format", "csv"}, {"variable", "auto"},
        {"dump-series", ""}}},
      {"susy-check",
       {{"dmax", "30"}, {"digits", "80"}, {"emin", "-1"}, {"emax", "40"}, {"grid-step", "0.05"},
        {"root-tolerance", ""}, {"tol", "1e-6"}, {"residual-bound", "1e-15"}, {"interleave-tol", "1e-15"}}},
      {"reproduce", {{"format", "md"}}},
  };
  return table;
}

inline unsigned to_unsigned(const Settings& s, const std::string& key, unsigned lo = 0, unsigned hi = 100000) {
  const std::string& text = s.at(key);
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text[0] == '-' || v < lo || v > hi)
    throw Error(ErrorKind::InvalidConfig, key + ": expected an integer in [" + std::to_string(lo) + ", " +
                                              std::to_string(hi) + "], got '" + text + "'");
  return static_cast<unsigned>(v);
}

inline std::string one_of(const Settings& s, const std::string& key, const std::vector<std::string>& allowed) {
  const std::string& v = s.at(key);
  for (const auto& a : allowed)
    if (v == a) return v;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
  throw Error(ErrorKind::InvalidConfig, key + ": expected one of " + list + ", got '" + v + "'");
}

inline PrecisionContext context_from(const Settings& s) {
  return PrecisionContext::make(to_unsigned(s, "digits", PrecisionContext::kMinDigits, 5000),
                                s.count("root-tolerance") ? s.at("root-tolerance") : "");
}

inline RpmOptions rpm_options_from(const Settings& s) {
  RpmOptions opt;
  opt.window.e_min = s.at("emin");
  opt.window.e_max = s.at("emax");
  opt.window.grid_step = s.at("grid-step");
  opt.window.validate();
  return opt;
}

/// Default decimals for printing a root: one per digit of the tolerance.
inline unsigned root_decimals(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.decimal_digits);
  const Real tol = ctx.tolerance();
  long decimals = -static_cast<long>(floor(log10(tol)).convert_to<long>());
  return decimals < 1 ? 1u : static_cast<unsigned>(decimals);
}

/// Values below 10^(-digits+10) are rounding residue of an exact zero.
inline Real snap_zero(const Real& x, const PrecisionContext& ctx) {
  return abs(x) < pow(Real(10), -static_cast<int>(ctx.decimal_digits) + 10) ? Real(0) : x;
}

/// Significant digits, fixed notation, trailing zeros dropped.
inline std::string format_value(const Real& x, unsigned digits) {
  std::string out = format_significant(x, digits);
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

inline std::string scientific(const Real& x, int digits = 6) {
  return x.str(digits, std::ios_base::scientific);
}

// ---------------------------------------------------------------- commands

inline int run_moments(const Settings& s, std::ostream& out) {
  const auto ctx = context_from(s);
  const unsigned n_max = to_unsigned(s, "nmax", 0, 100000);
  const auto table = moment_table(n_max, ctx);
  PrecisionScope scope(ctx.decimal_digits);
  out << "n,M(n)\n";
  for (unsigned n = 0; n <= n_max; ++n) out << n << "," << format_value(table[n], ctx.decimal_digits) << "\n";
  return kOk;
}

inline PolynomialPotential variational_potential(const Settings& s) {
  const auto name = one_of(s, "potential", {"susy-minus", "susy-plus", "quartic"});
  if (name == "susy-minus") return PolynomialPotential::susy_minus();
  if (name == "susy-plus") return PolynomialPotential::susy_plus();
  return PolynomialPotential::quartic();
}

inline int run_variational(const Settings& s, std::ostream& out) {
  const auto ctx = context_from(s);
  const auto potential = variational_potential(s);
  const unsigned n_min = to_unsigned(s, "nmin", 1, 1000);
  const unsigned n_max = to_unsigned(s, "nmax", n_min, 1000);
  const auto format = one_of(s, "format", {"csv", "json", "md"});
  const auto route =
      one_of(s, "route", {"partner", "direct"}) == "direct" ? VariationalRoute::direct : VariationalRoute::partner;
  const auto table = variational_table(potential, size_range(n_min, n_max), ctx, route);
  PrecisionScope scope(ctx.decimal_digits);
  const unsigned shown = ctx.decimal_digits - 5;

  if (format == "csv") {
    out << "N,n,parity,eigenvalue\n";
    for (const auto& [size, row] : table.rows)
      for (const auto& e : row)
        out << size << "," << e.n << "," << e.parity.name() << "," << format_value(snap_zero(e.value, ctx), shown)
            << "\n";
  } else if (format == "json") {
    json doc;
    doc["potential"] = to_string(potential.label());
    doc["digits"] = ctx.decimal_digits;
    doc["rows"] = json::array();
    for (const auto& [size, row] : table.rows)
      for (const auto& e : row)
        doc["rows"].push_back(
            {{"N", size},
             {"n", e.n},
             {"parity", e.parity.name()},
             {"eigenvalue", format_value(snap_zero(e.value, ctx), shown)}});
    out << doc.dump(2) << "\n";
  } else {
    std::size_t columns = 0;
    for (const auto& [size, row] : table.rows) columns = std::max(columns, row.size());
    out << "| N";
    for (std::size_t n = 0; n < columns; ++n) out << " | n=" << n;
    out << " |\n|---";
    for (std::size_t n = 0; n < columns; ++n) out << "|---";
    out << "|\n";
    for (const auto& [size, row] : table.rows) {
      out << "| " << size;
      for (std::size_t n = 0; n < columns; ++n)
        out << " | " << (n < row.size() ? format_value(snap_zero(row[n].value, ctx), 10) : "");
      out << " |\n";
    }
  }
  return kOk;
}

inline int run_rpm(const Settings& s, std::ostream& out) {
  const auto ctx = context_from(s);
  const auto name = one_of(s, "potential", {"susy", "quartic"});
  const auto potential = name == "susy" ? PolynomialPotential::susy_minus() : PolynomialPotential::quartic();
  const ParitySector parity(static_cast<int>(to_unsigned(s, "s", 0, 1)));
  const unsigned d_max = to_unsigned(s, "dmax", 3, 200);
  const unsigned offset = to_unsigned(s, "d", 0, 8);
  const auto format = one_of(s, "format", {"csv", "json", "md"});
  auto opt = rpm_options_from(s);
  const auto variable = one_of(s, "variable", {"auto", "x", "x2"});
  opt.variable = variable == "x" ? HankelVariable::x : variable == "x2" ? HankelVariable::x_squared
                                                                         : HankelVariable::automatic;
  const unsigned decimals = root_decimals(ctx);

  if (!s.at("dump-series").empty()) {
    PrecisionScope scope(ctx.decimal_digits);
    const Real energy(parse_decimal(s.at("dump-series")));
    const auto series = series_coefficients(potential, parity, energy, hankel_series_length(d_max, offset));
    out << "j,f_j\n";
    for (std::size_t j = 0; j < series.count(); ++j)
      out << j << "," << format_value(series[j], ctx.decimal_digits - 5) << "\n";
    return kOk;
  }

  const auto result = track_sequences(potential, parity, d_max, offset, opt, ctx);
  PrecisionScope scope(ctx.decimal_digits);
  if (format == "csv") {
    out << "sequence_id,D,root,error_estimate\n";
    for (std::size_t id = 0; id < result.sequences.size(); ++id) {
      const auto& seq = result.sequences[id];
      std::optional<Real> previous;
      for (const auto& [dim, root] : seq.roots) {
        out << id << "," << dim << "," << format_fixed(root, decimals) << ",";
        if (previous) out << scientific(abs(root - *previous), 3);
        out << "\n";
        previous = root;
      }
    }
    out << "\nsequence_id,converged,error_estimate,converged_ok\n";
    for (std::size_t id = 0; id < result.sequences.size(); ++id) {
      const auto& seq = result.sequences[id];
      out << id << "," << format_fixed(seq.converged, decimals) << "," << scientific(seq.error_estimate, 3) << ","
          << (seq.converged_ok ? "true" : "false") << "\n";
    }
  } else if (format == "json") {
    json doc;
    doc["potential"] = name;
    doc["s"] = parity.s();
    doc["d"] = offset;
    doc["dmax"] = d_max;
    doc["digits"] = ctx.decimal_digits;
    doc["sequences"] = json::array();
    for (std::size_t id = 0; id < result.sequences.size(); ++id) {
      const auto& seq = result.sequences[id];
      json roots = json::array();
      for (const auto& [dim, root] : seq.roots) roots.push_back({{"D", dim}, {"root", format_fixed(root, decimals)}});
      doc["sequences"].push_back({{"id", id},
                                  {"roots", roots},
                                  {"converged", format_fixed(seq.converged, decimals)},
                                  {"error_estimate", scientific(seq.error_estimate, 3)},
                                  {"converged_ok", seq.converged_ok}});
    }
    out << doc.dump(2) << "\n";
  } else {
    out << "| sequence | first D | converged | error estimate |\n|---|---|---|---|\n";
    for (std::size_t id = 0; id < result.sequences.size(); ++id) {
      const auto& seq = result.sequences[id];
      out << "| " << id << " | " << seq.first_dimension() << " | " << format_fixed(seq.converged, decimals) << " | "
          << scientific(seq.error_estimate, 3) << (seq.converged_ok ? "" : " (not converged)") << " |\n";
    }
  }
  return kOk;
}

inline int run_susy_check(const Settings& s, std::ostream& out) {
  const auto ctx = context_from(s);
  const unsigned d_max = to_unsigned(s, "dmax", 3, 200);
  const auto opt = rpm_options_from(s);
  const auto potential = PolynomialPotential::susy_minus();
  const auto even = rpm_spectrum(potential, ParitySector::even(), d_max, {0, 1}, opt, ctx);
  const auto odd = rpm_spectrum(potential, ParitySector::odd(), d_max, {0, 1}, opt, ctx);

  const auto var_ctx = PrecisionContext::make(50);
  const auto var_minus = variational_table(PolynomialPotential::susy_minus(), {7}, var_ctx);
  const auto var_plus = variational_table(PolynomialPotential::susy_plus(), {7}, var_ctx);

  PrecisionScope scope(ctx.decimal_digits);
  const Real tol(parse_decimal(s.at("tol")));
  const Real bound(parse_decimal(s.at("residual-bound")));
  const Real interleave_tol(parse_decimal(s.at("interleave-tol")));
  auto spectrum = classify_roots(even.values(), odd.values(), var_minus, var_plus, tol);
  spectrum.residuals.clear();
  const auto pairs = degeneracy_report(spectrum);
  const auto interleaving = interleaving_check(even.values(), odd.values(), interleave_tol);
  const bool interleaving_ok =
      !interleaving.empty() && std::all_of(interleaving.begin(), interleaving.end(), [](bool b) { return b; });
  const Real worst = max_residual(pairs);
  const unsigned decimals = root_decimals(ctx);

  json doc;
  doc["pairs"] = json::array();
  for (const auto& p : pairs)
    doc["pairs"].push_back({{"n", p.n},
                            {"e_minus", format_fixed(p.e_minus, decimals)},
                            {"e_plus_shifted", format_fixed(p.e_plus_shifted, decimals)},
                            {"residual", scientific(p.residual, 3)}});
  doc["max_residual"] = scientific(worst, 3);
  doc["interleaving_ok"] = interleaving_ok;
  out << doc.dump(2) << "\n";
  return (!pairs.empty() && worst <= bound && interleaving_ok) ? kOk : kNumericalFailure;
}

inline int run_reproduce(int id, const Settings& s, std::ostream& out) {
  const auto format = one_of(s, "format", {"md", "csv", "json"});
  golden::table(id);  // validates the id
  const auto report = compute_table(id);
  if (format == "md") {
    out << report.markdown();
    out << "\n" << (report.ok() ? "all cells match" : std::to_string(report.mismatches.size()) + " mismatched cell(s)")
        << "\n";
    for (const auto& m : report.mismatches) out << "- " << m.describe() << "\n";
  } else if (format == "csv") {
    out << "row,column,printed,computed,match\n";
    for (std::size_t r = 0; r < report.golden.cells.size(); ++r)
      for (std::size_t c = 0; c < report.golden.columns.size(); ++c) {
        if (report.golden.cells[r][c].empty()) continue;
        bool bad = false;
        for (const auto& m : report.mismatches)
          if (m.row == report.golden.row_labels[r] && m.column == report.golden.columns[c]) bad = true;
        out << report.golden.row_labels[r] << "," << report.golden.columns[c] << "," << report.golden.cells[r][c]
            << "," << report.rendered(r, c) << "," << (bad ? "false" : "true") << "\n";
      }
  } else {
    json doc;
    doc["table"] = id;
    doc["caption"] = report.golden.caption;
    doc["ok"] = report.ok();
    doc["mismatches"] = json::array();
    for (const auto& m : report.mismatches) doc["mismatches"].push_back(m.describe());
    json rows = json::array();
    for (std::size_t r = 0; r < report.golden.cells.size(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < report.golden.columns.size(); ++c) row.push_back(report.rendered(r, c));
      rows.push_back({{"label", report.golden.row_labels[r]}, {"cells", row}});
    }
    doc["rows"] = rows;
    out << doc.dump(2) << "\n";
  }
  return report.ok() ? kOk : kNumericalFailure;
}

// ------------------------------------------------------------------ driver

inline void merge_config_file(const std::string& path, const std::string& command, Settings& settings) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot read config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, "config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::InvalidConfig, "config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!settings.count(key))
      throw Error(ErrorKind::InvalidConfig, "unknown key '" + key + "' for subcommand " + command);
    if (value.is_string())
      settings[key] = value.get<std::string>();
    else if (value.is_number() || value.is_boolean())
      settings[key] = value.dump();
    else
      throw Error(ErrorKind::InvalidConfig, "config key '" + key + "' must be a string or a number");
  }
}

/// Parses argv and runs one subcommand. Precedence: flag > config file >
/// default.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"High-precision spectra of the x^4 -+ 2|x| SUSY partners and the quartic oscillator", "susyrpm"};
  app.require_subcommand(1);

  struct Bound {
    Settings given;
    std::map<std::string, CLI::Option*> options;
  };
  std::map<std::string, Bound> bound;
  std::map<std::string, CLI::App*> commands;
  std::string config_path, output_path;
  int table_id = 0;

  const std::map<std::string, std::string> help = {
      {"moments", "half-line moments M(n) as CSV"},
      {"variational", "Rayleigh-Ritz eigenvalues by basis size"},
      {"rpm", "Hankel root sequences of one parity sector"},
      {"susy-check", "partner degeneracy and interleaving report (JSON)"},
      {"reproduce", "recompute a published table and diff it"},
  };
  for (const auto& [name, defs] : defaults()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    commands[name] = sub;
    auto& b = bound[name];
    for (const auto& [key, value] : defs) {
      b.given[key] = value;
      b.options[key] = sub->add_option("--" + key, b.given[key], key);
    }
    sub->add_option("--config", config_path, "JSON file with flag names as keys");
    sub->add_option("--output,-o", output_path, "write to this file instead of stdout");
    if (name == "reproduce") sub->add_option("table", table_id, "table number 1-4")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  std::string command;
  for (const auto& [name, sub] : commands)
    if (sub->parsed()) command = name;

  try {
    Settings settings = defaults().at(command);
    if (!config_path.empty()) merge_config_file(config_path, command, settings);
    for (const auto& [key, option] : bound[command].options)
      if (option->count() > 0) settings[key] = bound[command].given[key];

    std::ostringstream buffer;
    int code = kOk;
    if (command == "moments") code = run_moments(settings, buffer);
    if (command == "variational") code = run_variational(settings, buffer);
    if (command == "rpm") code = run_rpm(settings, buffer);
    if (command == "susy-check") code = run_susy_check(settings, buffer);
    if (command == "reproduce") code = run_reproduce(table_id, settings, buffer);

    if (output_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(output_path, std::ios::binary);
      if (!file) throw Error(ErrorKind::InvalidConfig, "cannot write '" + output_path + "'");
      file << buffer.str();
    }
    return code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidConfig ? kUsageError : kNumericalFailure;
  }
}

}  // namespace susyrpm::cli

#endif  // SUSYRPM_TOOLS_CLI_APP_HPP
