#ifndef SUSYRPM_RPM_HPP
#define SUSYRPM_RPM_HPP

#include "susyrpm/hankel.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace susyrpm {

/// Exact value of a decimal literal such as "-1", "0.05" or "2.5e-3".
inline Rational parse_decimal(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
  Integer mantissa = 0;
  long exponent = 0;
  bool digits = false, point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (point) --exponent;
      digits = true;
    } else if (c == '.' && !point) {
      point = true;
    } else {
      break;
    }
  }
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    try {
      std::size_t used = 0;
      exponent += std::stol(text.substr(pos + 1), &used);
      pos += used + 1;
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
  }
  if (!digits || pos != text.size()) throw Error(ErrorKind::InvalidConfig, "not a decimal number: '" + text + "'");
  Rational value(mantissa);
  Integer power = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  value = exponent < 0 ? value / Rational(power) : value * Rational(power);
  return negative ? Rational(-value) : value;
}

/// Energy window and grid for the sign scan. Grid points are exact decimals,
/// so values such as E = 0 are hit exactly.
struct RootWindow {
  std::string e_min = "-1";
  std::string e_max = "40";
  std::string grid_step = "0.05";

  void validate() const {
    if (!(parse_decimal(e_min) < parse_decimal(e_max)))
      throw Error(ErrorKind::InvalidConfig, "window requires e_min < e_max");
    if (!(parse_decimal(grid_step) > 0)) throw Error(ErrorKind::InvalidConfig, "grid_step must be positive");
  }

  std::vector<Rational> grid() const {
    validate();
    const Rational lo = parse_decimal(e_min), hi = parse_decimal(e_max), step = parse_decimal(grid_step);
    std::vector<Rational> points;
    for (Rational e = lo; e < hi; e += step) points.push_back(e);
    points.push_back(hi);
    return points;
  }
};

struct RpmOptions {
  RootWindow window;
  HankelVariable variable = HankelVariable::automatic;
  /// Cells with a sign change or a dip in |det| are subdivided until they are
  /// narrower than this before bisection (find_roots only). Hankel
  /// determinants carry clusters of real roots around each eigenvalue.
  std::string cluster_resolution = "1e-12";
  unsigned subdivisions = 8;
  /// Look for pairs of nearly coincident roots where |det| dips on the grid
  /// without a sign change.
  bool detect_close_pairs = true;
  unsigned d_start = 3;
  unsigned persistence = 5;
  std::string min_tracking_window = "1e-3";
  /// Sequences whose final step exceeds this are flagged as not converged.
  std::string convergence_bound = "1e-6";
  /// Bisection tolerance for the coarse roots that seed new sequences.
  std::string seed_tolerance = "1e-8";
  /// Resolve the root clusters at the last two dimensions of every surviving
  /// sequence and keep the pair that agrees best. Nearest-neighbour
  /// continuation can drift onto a spurious branch inside a cluster.
  bool polish_tail = true;
  std::string polish_floor = "1e-12";
};

namespace detail {

/// Evaluates H_D^d(E) for a fixed potential, parity and offset.
class HankelEvaluator {
 public:
  HankelEvaluator(const PolynomialPotential& potential, ParitySector parity, unsigned offset, unsigned digits,
                  HankelVariable variable = HankelVariable::automatic)
      : potential_(potential), parity_(parity), offset_(offset), digits_(digits),
        x_squared_(uses_x_squared(variable, potential)), zero_(hankel_zero_threshold(digits)) {}

  SignedLogValue operator()(const Real& energy, unsigned dimension) const {
    ++evaluations_;
    return hankel_determinant(coefficients(energy, dimension), dimension, offset_, zero_);
  }

  /// All dimensions in one pass over a shared series.
  std::vector<SignedLogValue> all(const Real& energy, const std::vector<unsigned>& dimensions) const {
    const unsigned largest = *std::max_element(dimensions.begin(), dimensions.end());
    const auto f = coefficients(energy, largest);
    std::vector<SignedLogValue> out;
    out.reserve(dimensions.size());
    for (unsigned dim : dimensions) out.push_back(hankel_determinant(f, dim, offset_, zero_));
    evaluations_ += dimensions.size();
    return out;
  }

  unsigned long evaluations() const { return evaluations_; }
  bool x_squared() const { return x_squared_; }

  /// Hankel entries at E: f itself, or g_k = f_{2k+1} in the x^2 variable.
  std::vector<Real> coefficients(const Real& energy, unsigned dimension) const {
    auto series =
        series_coefficients(potential_, parity_, energy, required_series_length(dimension, offset_, x_squared_));
    return x_squared_ ? odd_coefficients(series.values) : std::move(series.values);
  }

 private:
  const PolynomialPotential& potential_;
  ParitySector parity_;
  unsigned offset_;
  unsigned digits_;
  bool x_squared_;
  Real zero_;
  mutable unsigned long evaluations_ = 0;
};

struct Sample {
  Real e;
  SignedLogValue v;
};

inline Real bisect(const HankelEvaluator& det, unsigned dimension, Real lo, Real hi, int sign_lo, const Real& tol) {
  while (hi - lo > tol) {
    Real mid = (lo + hi) / 2;
    const int sm = det(mid, dimension).sign;
    if (sm == 0) return mid;
    if (sm == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

// Golden-section search for the minimum of sigma*det on [lo, hi]; stops at the
// first point where the sign departs from sigma.
inline std::optional<Sample> find_sign_departure(const HankelEvaluator& det, unsigned dimension, Real lo, Real hi,
                                                 int sigma, const Real& tol) {
  const Real ratio = (sqrt(Real(5)) - 1) / 2;
  auto oriented = [&](const Real& e) { return sigma > 0 ? det(e, dimension) : det(e, dimension).negated(); };
  Real x1 = hi - ratio * (hi - lo);
  Real x2 = lo + ratio * (hi - lo);
  auto f1 = oriented(x1);
  auto f2 = oriented(x2);
  for (;;) {
    if (f1.sign <= 0) return Sample{x1, sigma > 0 ? f1 : f1.negated()};
    if (f2.sign <= 0) return Sample{x2, sigma > 0 ? f2 : f2.negated()};
    if (hi - lo <= tol) return std::nullopt;
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = oriented(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = oriented(x2);
    }
  }
}

inline bool is_dip(const std::vector<Sample>& s, std::size_t i) {
  return i > 0 && i + 1 < s.size() && s[i].v.sign != 0 && s[i - 1].v.sign == s[i].v.sign &&
         s[i + 1].v.sign == s[i].v.sign && s[i].v.log_magnitude < s[i - 1].v.log_magnitude &&
         s[i].v.log_magnitude < s[i + 1].v.log_magnitude;
}

// Roots inside [a, b] (endpoint samples given), resolving clusters by
// recursive subdivision of cells that change sign or hold a dip.
inline void resolve_cell(const HankelEvaluator& det, unsigned dimension, const Sample& a, const Sample& b,
                         const RpmOptions& opt, const Real& resolution, const Real& tol, std::vector<Real>& roots,
                         int depth = 0) {
  const bool change = a.v.sign != 0 && b.v.sign != 0 && a.v.sign != b.v.sign;
  if (b.e - a.e <= resolution || depth > 64) {
    if (change) roots.push_back(bisect(det, dimension, a.e, b.e, a.v.sign, tol));
    return;
  }
  std::vector<Sample> s{a};
  const unsigned parts = std::max(2u, opt.subdivisions);
  for (unsigned k = 1; k < parts; ++k) {
    Real e = a.e + (b.e - a.e) * k / parts;
    auto v = det(e, dimension);
    s.push_back({std::move(e), v});
  }
  s.push_back(b);
  // Inside a cell already under suspicion, an endpoint lower than its inner
  // neighbour may hide a close pair just beside it.
  auto low = [&](std::size_t i) {
    if (!opt.detect_close_pairs || s[i].v.sign == 0) return false;
    if (i == 0) return s[1].v.sign == s[0].v.sign && s[0].v.log_magnitude < s[1].v.log_magnitude;
    if (i + 1 == s.size()) return s[i - 1].v.sign == s[i].v.sign && s[i].v.log_magnitude < s[i - 1].v.log_magnitude;
    return is_dip(s, i);
  };
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (i > 0 && s[i].v.sign == 0) roots.push_back(s[i].e);
    const bool sub_change = s[i].v.sign != 0 && s[i + 1].v.sign != 0 && s[i].v.sign != s[i + 1].v.sign;
    const bool dip_here = low(i) || low(i + 1);
    if (sub_change || dip_here) resolve_cell(det, dimension, s[i], s[i + 1], opt, resolution, tol, roots, depth + 1);
  }
}

inline std::vector<Sample> grid_samples(const std::vector<Real>& points, const std::vector<SignedLogValue>& values) {
  std::vector<Sample> s;
  s.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) s.push_back({points[i], values[i]});
  return s;
}

// Coarse roots: exact zeros on grid points, sign changes bisected, and close
// pairs hidden inside dips.
inline std::vector<Real> coarse_roots(const HankelEvaluator& det, unsigned dimension, const std::vector<Sample>& s,
                                      const RpmOptions& opt, const Real& tol) {
  std::vector<Real> roots;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].v.sign == 0) {
      const bool isolated = (i == 0 || s[i - 1].v.sign != 0) && (i + 1 == s.size() || s[i + 1].v.sign != 0);
      if (isolated) roots.push_back(s[i].e);
      continue;
    }
    if (i + 1 < s.size() && s[i + 1].v.sign != 0 && s[i + 1].v.sign != s[i].v.sign)
      roots.push_back(bisect(det, dimension, s[i].e, s[i + 1].e, s[i].v.sign, tol));
    if (opt.detect_close_pairs && is_dip(s, i)) {
      if (auto hit = find_sign_departure(det, dimension, s[i - 1].e, s[i + 1].e, s[i].v.sign, tol)) {
        if (hit->v.sign == 0) {
          roots.push_back(hit->e);
        } else {
          roots.push_back(bisect(det, dimension, s[i - 1].e, hit->e, s[i].v.sign, tol));
          roots.push_back(bisect(det, dimension, hit->e, s[i + 1].e, hit->v.sign, tol));
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline std::vector<Real> to_reals(const std::vector<Rational>& points) {
  std::vector<Real> out;
  out.reserve(points.size());
  for (const auto& q : points) out.emplace_back(q);
  return out;
}

}  // namespace detail

/// Real roots of H_D^d(E) in the window. Grid cells that change sign or hold a
/// dip in |det| are subdivided down to cluster_resolution and then bisected to
/// the root tolerance, so the tight clusters of roots that Hankel
/// determinants develop around eigenvalues are resolved. Roots of even
/// multiplicity that leave no dip on any level are missed.
namespace detail {

inline std::vector<Real> resolved_roots(const HankelEvaluator& det, unsigned dimension, const std::vector<Real>& points,
                                        const RpmOptions& opt, const Real& resolution, const Real& tol) {
  std::vector<Sample> s;
  for (const auto& e : points) s.push_back({e, det(e, dimension)});

  std::vector<Real> roots;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].v.sign == 0) roots.push_back(s[i].e);
    if (i + 1 == s.size()) break;
    const bool change = s[i].v.sign != 0 && s[i + 1].v.sign != 0 && s[i].v.sign != s[i + 1].v.sign;
    const bool dip = opt.detect_close_pairs && (is_dip(s, i) || is_dip(s, i + 1));
    if (change || dip) resolve_cell(det, dimension, s[i], s[i + 1], opt, resolution, tol, roots);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(), [&](const Real& x, const Real& y) { return y - x <= tol; }),
              roots.end());
  return roots;
}

}  // namespace detail

inline std::vector<Real> find_roots(const PolynomialPotential& potential, ParitySector parity, unsigned dimension,
                                    unsigned offset, const RpmOptions& opt, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.decimal_digits);
  const Real tol = ctx.tolerance();
  const Real resolution = std::max(Real(parse_decimal(opt.cluster_resolution)), tol);
  detail::HankelEvaluator det(potential, parity, offset, ctx.decimal_digits, opt.variable);
  return detail::resolved_roots(det, dimension, detail::to_reals(opt.window.grid()), opt, resolution, tol);
}

/// Roots E^[D,d] followed across D.
struct RootSequence {
  unsigned d = 0;
  std::map<unsigned, Real> roots;
  Real converged;
  Real error_estimate;
  bool converged_ok = false;
  std::optional<SpectrumLabel> label;

  unsigned first_dimension() const { return roots.begin()->first; }
  unsigned last_dimension() const { return roots.rbegin()->first; }
};

struct TrackingResult {
  unsigned d = 0;
  int s = 0;
  std::vector<RootSequence> sequences;
  unsigned long determinant_evaluations = 0;
};

namespace detail {

// Nearest root to `center` on each side, found by sampling outward at
// offsets inner * sqrt(2)^k up to `reach`, then bisecting the nearer bracket.
inline std::optional<Real> nearest_root(const HankelEvaluator& det, unsigned dimension, const Real& center,
                                        const Real& inner, const Real& reach, const Real& tol) {
  const auto at_center = det(center, dimension);
  if (at_center.sign == 0) {
    // A multiple root sinks below working precision over a small interval
    // (about 1e-20 wide around E = 0 at D = 30, 80 digits). It counts when the
    // determinant comes back on both sides within reach; a wider plateau says
    // nothing about where the root is.
    auto returns = [&](int direction) {
      for (Real offset = inner; offset < reach; offset *= 10)
        if (det(center + direction * offset, dimension).sign != 0) return true;
      return det(center + direction * reach, dimension).sign != 0;
    };
    if (!returns(-1) || !returns(+1)) return std::nullopt;
    return center;
  }
  const Real growth = sqrt(Real(2));

  struct Bracket {
    Real near, far;
    int sign_near;
  };
  auto walk = [&](int direction) -> std::optional<Bracket> {
    Real previous = center;
    int previous_sign = at_center.sign;
    for (Real offset = inner; offset <= reach * growth; offset *= growth) {
      Real e = center + direction * std::min(offset, reach);
      const int sign = det(e, dimension).sign;
      if (sign == 0) {
        if (det(e + direction * inner, dimension).sign == 0) return std::nullopt;
        return Bracket{e, e, 0};
      }
      if (sign != previous_sign) return Bracket{previous, e, previous_sign};
      previous = std::move(e);
      previous_sign = sign;
      if (offset >= reach) break;
    }
    return std::nullopt;
  };
  auto left = walk(-1);
  auto right = walk(+1);
  const Bracket* pick = nullptr;
  if (left && right)
    pick = (center - left->far) <= (right->far - center) ? &*left : &*right;
  else if (left)
    pick = &*left;
  else if (right)
    pick = &*right;
  if (!pick) return std::nullopt;
  if (pick->sign_near == 0) return pick->near;
  const Real lo = std::min(pick->near, pick->far), hi = std::max(pick->near, pick->far);
  const int sign_lo = (lo == pick->near) ? pick->sign_near : -pick->sign_near;
  return bisect(det, dimension, lo, hi, sign_lo, tol);
}

}  // namespace detail

namespace detail {

// Replaces the last two roots of a sequence by the closest pair among the
// fully resolved roots of H_{d_max-1} and H_{d_max} near them.
inline void polish_tail(const HankelEvaluator& det, RootSequence& seq, unsigned d_max, const RpmOptions& opt,
                        const Real& floor, const Real& tol) {
  const Real last = seq.roots.at(d_max);
  const Real previous = seq.roots.at(d_max - 1);
  const Real half_width = std::max(Real(100 * abs(last - previous)), floor);
  if (half_width > Real(parse_decimal(opt.min_tracking_window))) return;
  const Real centre = (last + previous) / 2;
  std::vector<Real> points;
  const unsigned cells = 40;
  for (unsigned k = 0; k <= cells; ++k) points.push_back(centre - half_width + 2 * half_width * k / cells);
  const auto upper = resolved_roots(det, d_max, points, opt, tol, tol);
  const auto lower = resolved_roots(det, d_max - 1, points, opt, tol, tol);
  // A tight pair beside a simple root can hide from the scan at one dimension
  // while showing at the other, so each resolved root is also followed to the
  // other dimension by a fine outward search.
  std::optional<std::pair<Real, Real>> best;
  auto consider = [&](const Real& a, const Real& b) {
    if (!best || abs(a - b) < abs(best->first - best->second)) best = std::make_pair(a, b);
  };
  for (const auto& a : upper) {
    for (const auto& b : lower) consider(a, b);
    if (auto b = nearest_root(det, d_max - 1, a, tol, half_width, tol)) consider(a, *b);
  }
  for (const auto& b : lower)
    if (auto a = nearest_root(det, d_max, b, tol, half_width, tol)) consider(*a, b);
  if (best && abs(best->first - best->second) <= abs(last - previous)) {
    seq.roots[d_max] = best->first;
    seq.roots[d_max - 1] = best->second;
  }
}

}  // namespace detail

/// Root sequences for D = d_start..d_max. New sequences are seeded from the
/// coarse grid roots; each live sequence is continued at the next D by the
/// nearest root to its last value, searched within the tracking window
/// max(10 * last step, min_tracking_window). Sequences that do not reach
/// d_max or are shorter than the persistence threshold are dropped.
inline TrackingResult track_sequences(const PolynomialPotential& potential, ParitySector parity, unsigned d_max,
                                      unsigned offset, const RpmOptions& opt, const PrecisionContext& ctx) {
  if (d_max < 3) throw Error(ErrorKind::InvalidConfig, "d_max must be at least 3");
  if (opt.d_start > d_max) throw Error(ErrorKind::InvalidConfig, "d_start exceeds d_max");
  PrecisionScope scope(ctx.decimal_digits);
  const Real tol = ctx.tolerance();
  const Real seed_tol = std::max(Real(parse_decimal(opt.seed_tolerance)), tol);
  const Real min_window(parse_decimal(opt.min_tracking_window));
  const Real grid_step(parse_decimal(opt.window.grid_step));
  const Real bound(parse_decimal(opt.convergence_bound));
  detail::HankelEvaluator det(potential, parity, offset, ctx.decimal_digits, opt.variable);

  // Sequences born after this dimension cannot meet the persistence threshold.
  const unsigned last_seed_dim = d_max + 1 >= opt.persistence ? d_max + 1 - opt.persistence : opt.d_start;
  std::vector<unsigned> seed_dims;
  for (unsigned dim = opt.d_start; dim <= std::max(opt.d_start, last_seed_dim); ++dim) seed_dims.push_back(dim);

  const auto points = detail::to_reals(opt.window.grid());
  std::vector<std::vector<SignedLogValue>> grid_values(seed_dims.size());
  for (const auto& e : points) {
    auto v = det.all(e, seed_dims);
    for (std::size_t k = 0; k < seed_dims.size(); ++k) grid_values[k].push_back(std::move(v[k]));
  }

  struct Live {
    RootSequence seq;
    std::optional<Real> step;
  };
  std::vector<Live> live;

  for (unsigned dim = opt.d_start; dim <= d_max; ++dim) {
    // continue live sequences
    std::vector<Live> next;
    for (auto& l : live) {
      const Real& last = l.seq.roots.rbegin()->second;
      const Real step = l.step ? *l.step : grid_step;
      const Real window = std::max(Real(10 * step), min_window);
      const Real inner = std::max(Real(step / 4096), tol);
      auto root = detail::nearest_root(det, dim, last, inner, window, tol);
      if (!root || abs(*root - last) > window) continue;
      l.step = abs(*root - last);
      l.seq.roots[dim] = *root;
      next.push_back(std::move(l));
    }
    // two sequences landing on the same root: keep the older one
    std::stable_sort(next.begin(), next.end(),
                     [](const Live& a, const Live& b) { return a.seq.roots.size() > b.seq.roots.size(); });
    std::vector<Live> kept;
    for (auto& l : next) {
      const Real& r = l.seq.roots.rbegin()->second;
      bool duplicate = false;
      for (const auto& k : kept)
        if (abs(k.seq.roots.rbegin()->second - r) <= 10 * tol) duplicate = true;
      if (!duplicate) kept.push_back(std::move(l));
    }
    live = std::move(kept);

    // seed from the coarse grid
    const auto it = std::find(seed_dims.begin(), seed_dims.end(), dim);
    if (it != seed_dims.end() && dim <= last_seed_dim) {
      const auto samples = detail::grid_samples(points, grid_values[it - seed_dims.begin()]);
      for (auto& r : detail::coarse_roots(det, dim, samples, opt, seed_tol)) {
        bool covered = false;
        for (const auto& l : live)
          if (abs(l.seq.roots.rbegin()->second - r) <= min_window) covered = true;
        if (covered) continue;
        Live fresh;
        fresh.seq.d = offset;
        fresh.seq.roots[dim] = r;
        live.push_back(std::move(fresh));
      }
    }
  }

  const Real polish_floor(parse_decimal(opt.polish_floor));
  TrackingResult result;
  result.d = offset;
  result.s = parity.s();
  for (auto& l : live) {
    auto& seq = l.seq;
    if (seq.last_dimension() != d_max || seq.roots.size() < opt.persistence) continue;
    if (opt.polish_tail) detail::polish_tail(det, seq, d_max, opt, polish_floor, tol);
    seq.converged = seq.roots.rbegin()->second;
    seq.error_estimate = abs(seq.converged - std::prev(seq.roots.end(), 2)->second);
    seq.converged_ok = seq.error_estimate <= bound;
    result.sequences.push_back(std::move(seq));
  }
  std::sort(result.sequences.begin(), result.sequences.end(),
            [](const RootSequence& x, const RootSequence& y) { return x.converged < y.converged; });
  result.determinant_evaluations = det.evaluations();
  return result;
}

/// One value per distinct eigenvalue from several sequence sets (e.g. d = 0
/// and d = 1): sequences whose converged values agree within
/// max(10 * their error estimates, floor) are merged, keeping the one with
/// the smallest error estimate.
inline std::vector<RootSequence> merge_converged(const std::vector<const TrackingResult*>& runs, const Real& floor) {
  std::vector<RootSequence> all;
  for (const auto* run : runs)
    for (const auto& seq : run->sequences) all.push_back(seq);
  std::sort(all.begin(), all.end(),
            [](const RootSequence& x, const RootSequence& y) { return x.converged < y.converged; });
  std::vector<RootSequence> merged;
  for (auto& seq : all) {
    if (!merged.empty()) {
      auto& last = merged.back();
      const Real gap = abs(seq.converged - last.converged);
      const Real allowed = std::max({Real(10 * seq.error_estimate), Real(10 * last.error_estimate), floor});
      if (gap <= allowed) {
        if (seq.error_estimate < last.error_estimate) last = seq;
        continue;
      }
    }
    merged.push_back(seq);
  }
  return merged;
}

/// Converged spectrum of one parity sector, pooled over several offsets d.
struct RpmSpectrum {
  int s = 0;
  unsigned d_max = 0;
  unsigned decimal_digits = 0;
  std::vector<TrackingResult> runs;
  std::vector<RootSequence> merged;

  std::vector<Real> values() const {
    std::vector<Real> out;
    for (const auto& seq : merged) out.push_back(seq.converged);
    return out;
  }
};

/// Tracks every offset in `offsets` and merges the sequences whose error
/// estimate is within the convergence bound.
inline RpmSpectrum rpm_spectrum(const PolynomialPotential& potential, ParitySector parity, unsigned d_max,
                                const std::vector<unsigned>& offsets, const RpmOptions& opt,
                                const PrecisionContext& ctx, const std::string& merge_floor = "1e-3") {
  if (offsets.empty()) throw Error(ErrorKind::InvalidConfig, "no Hankel offsets given");
  RpmSpectrum out;
  out.s = parity.s();
  out.d_max = d_max;
  out.decimal_digits = ctx.decimal_digits;
  for (unsigned d : offsets) out.runs.push_back(track_sequences(potential, parity, d_max, d, opt, ctx));
  PrecisionScope scope(ctx.decimal_digits);
  std::vector<TrackingResult> good;
  for (const auto& run : out.runs) {
    TrackingResult kept = run;
    kept.sequences.clear();
    for (const auto& seq : run.sequences)
      if (seq.converged_ok) kept.sequences.push_back(seq);
    good.push_back(std::move(kept));
  }
  std::vector<const TrackingResult*> pointers;
  for (const auto& run : good) pointers.push_back(&run);
  out.merged = merge_converged(pointers, Real(parse_decimal(merge_floor)));
  return out;
}

/// Leading significant digits on which two values agree.
inline int agreeing_digits(const Real& a, const Real& b) {
  if (a == b) return std::numeric_limits<int>::max();
  const Real scale = std::max({abs(a), abs(b), Real(1)});
  const Real rel = abs(a - b) / scale;
  return static_cast<int>(floor(-log10(rel)).convert_to<long>());
}

/// Runs at the requested precision and again at twice the digits; when any
/// converged value disagrees within the first `digits_required` digits, the
/// higher-precision result is returned (and the check repeats once more).
inline RpmSpectrum rpm_spectrum_checked(const PolynomialPotential& potential, ParitySector parity, unsigned d_max,
                                        const std::vector<unsigned>& offsets, const RpmOptions& opt,
                                        PrecisionContext ctx, int digits_required = 25, int escalations = 2) {
  auto current = rpm_spectrum(potential, parity, d_max, offsets, opt, ctx);
  for (int round = 0; round < escalations; ++round) {
    PrecisionContext wider = PrecisionContext::make(2 * ctx.decimal_digits, ctx.root_tolerance);
    auto check = rpm_spectrum(potential, parity, d_max, offsets, opt, wider);
    PrecisionScope scope(wider.decimal_digits);
    bool agree = check.merged.size() == current.merged.size();
    for (std::size_t k = 0; agree && k < check.merged.size(); ++k)
      agree = agreeing_digits(check.merged[k].converged, current.merged[k].converged) >= digits_required;
    if (agree) return current;
    current = std::move(check);
    ctx = wider;
  }
  return current;
}

}  // namespace susyrpm

#endif  // SUSYRPM_RPM_HPP
