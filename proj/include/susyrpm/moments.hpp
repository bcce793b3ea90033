#ifndef SUSYRPM_MOMENTS_HPP
#define SUSYRPM_MOMENTS_HPP

#include "susyrpm/precision.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace susyrpm {

/// M(n) = \int_0^\infty x^n exp(-2x^3/3) dx for n = 0..n_max.
class MomentTable {
 public:
  MomentTable(std::vector<Real> values, unsigned decimal_digits)
      : values_(std::move(values)), digits_(decimal_digits) {}

  const Real& operator[](std::size_t n) const { return values_.at(n); }
  std::size_t size() const { return values_.size(); }
  unsigned n_max() const { return static_cast<unsigned>(values_.size()) - 1; }
  unsigned decimal_digits() const { return digits_; }
  const std::vector<Real>& values() const { return values_; }

 private:
  std::vector<Real> values_;
  unsigned digits_;
};

namespace detail {

// Seeds M(0), M(1) from Gamma(1/3), Gamma(2/3); M(2) = 1/2 exactly.
// Every M(n) is seed[n mod 3] times the exact rational prod (m+1)/2 over
// m = n mod 3, n mod 3 + 3, ..., n - 3, so each entry carries at most two
// roundings beyond the seed.
inline std::vector<Real> compute_moments(unsigned n_max, unsigned digits) {
  PrecisionScope scope(digits);
  std::vector<Real> seeds(3);
  const Real three(3);
  for (int r = 0; r < 2; ++r) {
    const Real a = Real(r + 1) / three;
    seeds[r] = pow(Real(3) / Real(2), a) * tgamma(a) / three;
  }
  seeds[2] = Real(1) / Real(2);

  std::vector<Real> values(n_max + 1);
  Rational factor[3] = {Rational(1), Rational(1), Rational(1)};
  for (unsigned n = 0; n <= n_max; ++n) {
    const unsigned r = n % 3;
    if (n >= 3) factor[r] *= Rational(n - 2, 2);  // (m+1)/2 with m = n-3
    values[n] = (n < 3) ? seeds[r] : seeds[r] * Real(factor[r]);
  }
  return values;
}

class MomentCache {
 public:
  static MomentCache& instance() {
    static MomentCache cache;
    return cache;
  }

  // Longest table computed so far at this precision; entries are
  // independent of n_max so a prefix is bit-identical to a fresh table.
  std::vector<Real> get(unsigned n_max, unsigned digits) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& stored = tables_[digits];
    if (stored.size() < n_max + 1) stored = compute_moments(std::max<unsigned>(n_max, 2 * stored.size()), digits);
    return std::vector<Real>(stored.begin(), stored.begin() + n_max + 1);
  }

 private:
  std::mutex mutex_;
  std::map<unsigned, std::vector<Real>> tables_;
};

}  // namespace detail

inline MomentTable moment_table(unsigned n_max, const PrecisionContext& ctx) {
  return MomentTable(detail::MomentCache::instance().get(n_max, ctx.decimal_digits), ctx.decimal_digits);
}

inline Real moment(unsigned n, const PrecisionContext& ctx) { return moment_table(n, ctx)[n]; }

}  // namespace susyrpm

#endif  // SUSYRPM_MOMENTS_HPP
