// SPDX-License-Identifier: Apache-2.0
//
// wideband-outage: outage exponents of wideband slow-fading parallel channels
// Copyright (C) 2026 The wideband-outage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Small dense complex matrices and a cyclic complex Jacobi eigensolver for
// Hermitian input (dim <= 64).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wideband/errors.hpp"

namespace wideband {

using cplx = std::complex<double>;

/// Square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}
  CMatrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n)
      throw invalid_param("matrix needs " + std::to_string(n * n) + " entries, got " +
                          std::to_string(a_.size()));
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Real symmetric 2x2 [[1, r], [r, 1]] scaled by `scale`.
  static CMatrix two_by_two(double r, double scale = 1.0) {
    return CMatrix(2, {scale, scale * r, scale * r, scale});
  }

  std::size_t dim() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<cplx>& data() const { return a_; }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  CMatrix adjoint() const {
    CMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    if (x.n_ != y.n_) throw invalid_param("matrix product dimension mismatch");
    CMatrix r(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        const cplx xik = x(i, k);
        if (xik == cplx{}) continue;
        for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }

  friend CMatrix operator+(CMatrix x, const CMatrix& y) {
    if (x.n_ != y.n_) throw invalid_param("matrix sum dimension mismatch");
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }

  friend CMatrix operator*(cplx s, CMatrix x) {
    for (auto& z : x.a_) z *= s;
    return x;
  }

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

/// Kronecker product a (x) b.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  CMatrix r(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return r;
}

/// A CMatrix checked to be conjugate-symmetric (to 1e-12, relative to its
/// largest entry when that exceeds 1).
class HermitianMatrix {
 public:
  static constexpr std::size_t kMaxDim = 64;

  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {
    const std::size_t n = m_.dim();
    if (n == 0) throw invalid_param("empty matrix");
    if (n > kMaxDim)
      throw invalid_param("matrix dimension " + std::to_string(n) + " exceeds " +
                          std::to_string(kMaxDim));
    double scale = 1.0;
    for (const auto& z : m_.data()) scale = std::max(scale, std::abs(z));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (std::abs(m_(i, j) - std::conj(m_(j, i))) > 1e-12 * scale)
          throw not_hermitian("matrix is not conjugate-symmetric at (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
    // Symmetrise exactly so downstream rotations see a clean input.
    for (std::size_t i = 0; i < n; ++i) {
      m_(i, i) = m_(i, i).real();
      for (std::size_t j = i + 1; j < n; ++j) {
        const cplx avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
        m_(i, j) = avg;
        m_(j, i) = std::conj(avg);
      }
    }
  }

  std::size_t dim() const { return m_.dim(); }
  const CMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  CMatrix m_;
};

struct EigResult {
  std::vector<double> eigenvalues;  // descending
  int sweep_count = 0;
};

/// Eigenvalues (descending) and orthonormal eigenvectors as columns.
struct EigDecomposition {
  std::vector<double> eigenvalues;
  CMatrix vectors;
  int sweep_count = 0;
};

namespace detail {

inline double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline EigDecomposition jacobi(const HermitianMatrix& input, bool want_vectors) {
  constexpr int kMaxSweeps = 100;
  CMatrix a = input.matrix();
  const std::size_t n = a.dim();
  CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix{};
  const double stop = 1e-13 * a.frobenius_norm();

  int sweeps = 0;
  while (off_diagonal_norm(a) > stop) {
    if (++sweeps > kMaxSweeps) throw numeric_failure("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double h = std::abs(a(p, q));
        if (h == 0.0) continue;

        // Phase step: scale row/column q so a(p, q) becomes real positive.
        const cplx w = a(p, q) / h;
        const cplx wc = std::conj(w);
        for (std::size_t k = 0; k < n; ++k) a(k, q) *= wc;
        for (std::size_t k = 0; k < n; ++k) a(q, k) *= w;
        a(q, q) = a(q, q).real();
        if (want_vectors)
          for (std::size_t k = 0; k < n; ++k) v(k, q) *= wc;

        // Real rotation annihilating a(p, q).
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * h);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = app - t * h;
        a(q, q) = aqq + t * h;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p);
            const cplx vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigDecomposition out;
  out.sweep_count = sweeps;
  out.eigenvalues.reserve(n);
  for (auto i : order) out.eigenvalues.push_back(a(i, i).real());
  if (want_vectors) {
    out.vectors = CMatrix(n);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, order[col]);
  }
  return out;
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Terminates when the off-diagonal Frobenius norm is <= 1e-13 ||M||_F.
inline EigResult hermitian_eigenvalues(const HermitianMatrix& m) {
  auto d = detail::jacobi(m, false);
  return {std::move(d.eigenvalues), d.sweep_count};
}

inline EigDecomposition hermitian_eigen(const HermitianMatrix& m) { return detail::jacobi(m, true); }

/// Clips eigenvalues in [-1e-10, 0) to zero; anything more negative means
/// the matrix is not PSD.
inline void clip_psd_spectrum(std::vector<double>& eigenvalues, const char* what) {
  for (auto& mu : eigenvalues) {
    if (mu < -1e-10)
      throw invariant_violation(std::string(what) + " is not positive semi-definite (eigenvalue " +
                                std::to_string(mu) + ")");
    if (mu < 0.0) mu = 0.0;
  }
}

/// Principal square root of a PSD Hermitian matrix.
inline CMatrix psd_sqrt(const HermitianMatrix& m, const char* what = "matrix") {
  auto d = hermitian_eigen(m);
  clip_psd_spectrum(d.eigenvalues, what);
  const std::size_t n = m.dim();
  CMatrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(d.eigenvalues[k]);
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = root * d.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(d.vectors(j, k));
    }
  }
  return r;
}

}  // namespace wideband
