#ifndef HYPTESS_LINALG_HPP
#define HYPTESS_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hyptess/constants.hpp"

// Small dense vector helpers for dimensions 2..8. Points and directions are
// plain std::vector<double>; everything here is allocation-light and d is a
// runtime parameter.
namespace hyptess {

using Vec = std::vector<double>;

inline constexpr int kMaxDim = 8;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return dot(a, a); }
inline double norm(std::span<const double> a) { return std::sqrt(norm2(a)); }

inline double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double dist(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(dist2(a, b));
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec scaled(const Vec& a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

inline void normalize(Vec& a) {
  const double n = norm(a);
  for (double& x : a) x /= n;
}

inline Vec normalized(Vec a) {
  normalize(a);
  return a;
}

// Solves the n x n system A x = b by Gaussian elimination with partial
// pivoting; A is row-major and clobbered. Returns false when the scaled
// pivot drops below tol::kSingularPivot.
inline bool solve_dense(double* A, double* b, int n) {
  double scale = 0.0;
  for (int i = 0; i < n * n; ++i) scale = std::max(scale, std::fabs(A[i]));
  if (scale == 0.0) return false;
  const double min_pivot = tol::kSingularPivot * scale;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(A[r * n + col]) > std::fabs(A[piv * n + col])) piv = r;
    if (std::fabs(A[piv * n + col]) < min_pivot) return false;
    if (piv != col) {
      for (int c = col; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    const double inv = 1.0 / A[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r * n + col] * inv;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= A[r * n + c] * b[c];
    b[r] = s / A[r * n + r];
  }
  return true;
}

// Determinant by Gaussian elimination with partial pivoting; A is row-major
// and clobbered.
inline double det_dense(double* A, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(A[r * n + col]) > std::fabs(A[piv * n + col])) piv = r;
    if (A[piv * n + col] == 0.0) return 0.0;
    if (piv != col) {
      for (int c = col; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
      det = -det;
    }
    det *= A[col * n + col];
    const double inv = 1.0 / A[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r * n + col] * inv;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
    }
  }
  return det;
}

// Gram-Schmidt with pivoting: returns an orthonormal basis of the span of
// the given vectors (each of dimension d), dropping near-dependent ones.
inline std::vector<Vec> orthonormal_basis(const std::vector<Vec>& vs, double drop_tol = 1e-10) {
  std::vector<Vec> basis;
  for (const Vec& v : vs) {
    Vec w = v;
    for (const Vec& b : basis) {
      const double c = dot(w, b);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
    }
    // second pass for numerical orthogonality
    for (const Vec& b : basis) {
      const double c = dot(w, b);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
    }
    const double n = norm(w);
    if (n > drop_tol) {
      for (double& x : w) x /= n;
      basis.push_back(std::move(w));
    }
  }
  return basis;
}

}  // namespace hyptess

#endif
