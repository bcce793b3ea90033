#ifndef SUSYRPM_LINALG_HPP
#define SUSYRPM_LINALG_HPP

#include "susyrpm/precision.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace susyrpm {

/// Row-major dense square matrix.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, const T& fill = T(0)) : n_(n), data_(n * n, fill) {}

  std::size_t dimension() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < n_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Symmetric matrix; only the upper triangle is stored (packed by rows).
template <typename T>
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * (n + 1) / 2, T(0)) {}

  std::size_t dimension() const { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[index(i, j)]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }

  DenseMatrix<T> to_dense() const {
    DenseMatrix<T> m(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  static SymmetricMatrix diagonal(const std::vector<T>& d) {
    SymmetricMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + j;
  }

  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Largest |a_ij - a_ji| / max(|a_ij|, 1) over the off-diagonal pairs.
template <typename T>
T asymmetry(const DenseMatrix<T>& a) {
  using std::abs;
  using std::max;
  T worst(0);
  for (std::size_t i = 0; i < a.dimension(); ++i)
    for (std::size_t j = i + 1; j < a.dimension(); ++j) {
      T scale = max(T(abs(a(i, j))), T(1));
      worst = max(worst, T(abs(a(i, j) - a(j, i)) / scale));
    }
  return worst;
}

/// (A + A^T) / 2
template <typename T>
SymmetricMatrix<T> symmetrize(const DenseMatrix<T>& a) {
  SymmetricMatrix<T> s(a.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i)
    for (std::size_t j = i; j < a.dimension(); ++j) s(i, j) = (a(i, j) + a(j, i)) / T(2);
  return s;
}

template <typename T>
struct CholeskyFactor {
  DenseMatrix<T> lower;
  /// log10 of (max pivot / min pivot)^2, a cheap estimate of cond(S).
  double condition_log10 = 0;
};

/// S = L L^T. Throws IllConditioned when a pivot is not safely positive at
/// the working precision.
template <typename T>
CholeskyFactor<T> cholesky(const SymmetricMatrix<T>& s, const T& epsilon) {
  using std::log10;
  using std::sqrt;
  const std::size_t n = s.dimension();
  DenseMatrix<T> l(n);
  T max_diag(0);
  for (std::size_t i = 0; i < n; ++i)
    if (s(i, i) > max_diag) max_diag = s(i, i);

  T min_pivot(0), max_pivot(0);
  for (std::size_t j = 0; j < n; ++j) {
    T d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > T(n) * epsilon * max_diag)) {
      throw Error(ErrorKind::IllConditioned,
                  "Cholesky pivot " + std::to_string(j) + " not positive at working precision; raise decimal_digits");
    }
    const T root = sqrt(d);
    l(j, j) = root;
    if (j == 0 || root < min_pivot) min_pivot = root;
    if (j == 0 || root > max_pivot) max_pivot = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      T v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / root;
    }
  }
  CholeskyFactor<T> out{std::move(l), 0};
  if (n > 0) out.condition_log10 = static_cast<double>(T(2) * log10(max_pivot / min_pivot));
  return out;
}

/// C = L^{-1} H L^{-T}, symmetric by construction up to rounding.
template <typename T>
SymmetricMatrix<T> congruence_reduce(const SymmetricMatrix<T>& h, const DenseMatrix<T>& l) {
  const std::size_t n = h.dimension();
  // X = L^{-1} H by forward substitution on each column of H.
  DenseMatrix<T> x(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      T v = h(i, c);
      for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * x(k, c);
      x(i, c) = v / l(i, i);
    }
  }
  // C = X L^{-T}, i.e. C^T = L^{-1} X^T; solve row by row.
  DenseMatrix<T> cmat(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      T v = x(r, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(j, k) * cmat(r, k);
      cmat(r, j) = v / l(j, j);
    }
  }
  return symmetrize(cmat);
}

/// Cyclic Jacobi eigenvalues of a symmetric matrix, ascending.
template <typename T>
std::vector<T> jacobi_eigenvalues(SymmetricMatrix<T> a, const T& epsilon, int max_sweeps = 100) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = a.dimension();
  auto off_norm = [&] {
    T s(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return s;
  };
  auto full_norm = [&] {
    T s(0);
    for (std::size_t i = 0; i < n; ++i) {
      s += a(i, i) * a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) s += T(2) * a(i, j) * a(i, j);
    }
    return s;
  };

  const T total = full_norm();
  const T threshold = epsilon * epsilon * total;
  int sweep = 0;
  while (off_norm() > threshold) {
    if (++sweep > max_sweeps) {
      throw Error(ErrorKind::NoConvergence, "Jacobi exceeded " + std::to_string(max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a(p, q);
        if (apq == 0) continue;
        const T app = a(p, p);
        const T aqq = a(q, q);
        const T theta = (aqq - app) / (T(2) * apq);
        T t = T(1) / (abs(theta) + sqrt(theta * theta + T(1)));
        if (theta < 0) t = -t;
        const T c = T(1) / sqrt(t * t + T(1));
        const T s = t * c;
        const T tau = s / (T(1) + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = T(0);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const T arp = a(r, p);
          const T arq = a(r, q);
          a(r, p) = arp - s * (arq + tau * arp);
          a(r, q) = arq + s * (arp - tau * arq);
        }
      }
    }
  }
  std::vector<T> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

template <typename T>
struct GeneralizedSolution {
  std::vector<T> eigenvalues;
  double condition_log10 = 0;
};

/// All eigenvalues of H c = E S c via Cholesky of S and Jacobi on the
/// reduced standard problem.
template <typename T>
GeneralizedSolution<T> solve_generalized(const SymmetricMatrix<T>& h, const SymmetricMatrix<T>& s,
                                         const T& epsilon, int max_sweeps = 100) {
  if (h.dimension() != s.dimension()) {
    throw Error(ErrorKind::InvalidConfig, "H and S dimensions differ");
  }
  auto chol = cholesky(s, epsilon);
  auto reduced = congruence_reduce(h, chol.lower);
  return {jacobi_eigenvalues(std::move(reduced), epsilon, max_sweeps), chol.condition_log10};
}

/// Sign and natural log of |value|; log_magnitude is meaningless when sign == 0.
template <typename T>
struct SignedLog {
  int sign = 0;
  T log_magnitude = T(0);

  /// Total order on the represented real values.
  friend bool operator<(const SignedLog& a, const SignedLog& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.sign == 0) return false;
    return a.sign > 0 ? a.log_magnitude < b.log_magnitude : a.log_magnitude > b.log_magnitude;
  }

  SignedLog negated() const { return {-sign, log_magnitude}; }
};

/// Determinant by LU with full pivoting. A pivot whose magnitude falls below
/// zero_threshold times the largest |entry| makes the result exactly zero.
template <typename T>
SignedLog<T> lu_signed_log_det(DenseMatrix<T> a, const T& zero_threshold) {
  using std::abs;
  using std::log;
  const std::size_t n = a.dimension();
  T scale(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (abs(a(i, j)) > scale) scale = abs(a(i, j));
  if (scale == 0) return {0, T(0)};

  int sign = 1;
  T log_mag(0);
  const T cutoff = zero_threshold * scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    T best(0);
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        const T v = abs(a(i, j));
        if (v > best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (best <= cutoff) return {0, T(0)};
    if (pr != k) {
      a.swap_rows(pr, k);
      sign = -sign;
    }
    if (pc != k) {
      a.swap_cols(pc, k);
      sign = -sign;
    }
    const T pivot = a(k, k);
    if (pivot < 0) sign = -sign;
    log_mag += log(abs(pivot));
    for (std::size_t i = k + 1; i < n; ++i) {
      const T m = a(i, k) / pivot;
      if (m == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  return {sign, log_mag};
}

/// Same algorithm on MPFR values, updating entries in place to avoid the
/// temporaries of the generic version; this is the inner loop of every RPM scan.
inline SignedLog<Real> lu_signed_log_det(DenseMatrix<Real> a, const Real& zero_threshold) {
  const std::size_t n = a.dimension();
  auto raw = [&](std::size_t i, std::size_t j) { return a(i, j).backend().data(); };
  Real scale(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (mpfr_cmpabs(raw(i, j), scale.backend().data()) > 0) mpfr_abs(scale.backend().data(), raw(i, j), MPFR_RNDN);
  if (scale == 0) return {0, Real(0)};

  int sign = 1;
  Real log_mag(0), factor, product, magnitude;
  const Real cutoff = zero_threshold * scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (mpfr_cmpabs(raw(i, j), raw(pr, pc)) > 0) {
          pr = i;
          pc = j;
        }
    if (mpfr_cmpabs(raw(pr, pc), cutoff.backend().data()) <= 0) return {0, Real(0)};
    if (pr != k) {
      a.swap_rows(pr, k);
      sign = -sign;
    }
    if (pc != k) {
      a.swap_cols(pc, k);
      sign = -sign;
    }
    if (mpfr_sgn(raw(k, k)) < 0) sign = -sign;
    mpfr_abs(magnitude.backend().data(), raw(k, k), MPFR_RNDN);
    mpfr_log(magnitude.backend().data(), magnitude.backend().data(), MPFR_RNDN);
    log_mag += magnitude;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (mpfr_zero_p(raw(i, k))) continue;
      mpfr_div(factor.backend().data(), raw(i, k), raw(k, k), MPFR_RNDN);
      for (std::size_t j = k + 1; j < n; ++j) {
        mpfr_mul(product.backend().data(), factor.backend().data(), raw(k, j), MPFR_RNDN);
        mpfr_sub(raw(i, j), raw(i, j), product.backend().data(), MPFR_RNDN);
      }
    }
  }
  return {sign, log_mag};
}

/// Exact determinant by fraction-free (Bareiss) elimination over a field
/// with exact division, e.g. Rational.
template <typename T>
T bareiss_determinant(DenseMatrix<T> a) {
  const std::size_t n = a.dimension();
  if (n == 0) return T(1);
  T sign(1);
  T previous(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return T(0);
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace susyrpm

#endif  // SUSYRPM_LINALG_HPP
