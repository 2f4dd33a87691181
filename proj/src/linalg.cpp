#include "surrogate/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "surrogate/errors.hpp"

namespace surrogate::linalg {

PackedSymMatrix::PackedSymMatrix(std::size_t n, std::vector<double> packed)
    : n_(n), data_(std::move(packed)) {
  if (data_.size() != packed_size(n)) {
    throw DimensionMismatch("packed storage length", packed_size(n), data_.size());
  }
}

PackedSymMatrix PackedSymMatrix::identity(std::size_t n) {
  PackedSymMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) m.at_lower(j, j) = 1.0;
  return m;
}

PackedSymMatrix PackedSymMatrix::from_dense(const Matrix& dense) {
  if (dense.rows() != dense.cols()) {
    throw DimensionMismatch("square matrix columns", dense.rows(), dense.cols());
  }
  const std::size_t n = dense.rows();
  PackedSymMatrix m(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i) m.at_lower(i, j) = dense(i, j);
  return m;
}

Matrix PackedSymMatrix::to_dense() const {
  Matrix out(n_, n_);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = j; i < n_; ++i) {
      const double v = data_[index(i, j)];
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

PackedSymMatrix PackedSymMatrix::without(std::size_t k) const {
  if (k >= n_) throw std::out_of_range("PackedSymMatrix::without: index out of range");
  const std::size_t m = n_ - 1;
  std::vector<double> out;
  out.reserve(packed_size(m));
  for (std::size_t j = 0; j < n_; ++j) {
    if (j == k) continue;
    auto col = column(j);
    if (k < j) {
      out.insert(out.end(), col.begin(), col.end());
    } else {
      // rows j..k-1, then k+1..n-1
      out.insert(out.end(), col.begin(), col.begin() + static_cast<std::ptrdiff_t>(k - j));
      out.insert(out.end(), col.begin() + static_cast<std::ptrdiff_t>(k - j + 1), col.end());
    }
  }
  return PackedSymMatrix(m, std::move(out));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

CholeskyFactor cholesky_factor(PackedSymMatrix a) {
  const std::size_t n = a.order();
  auto packed = a.packed();
  double* base = packed.data();

  // Right-looking outer-product form: every inner loop is a contiguous axpy
  // down a packed column.
  for (std::size_t j = 0; j < n; ++j) {
    double* cj = base + PackedSymMatrix::column_start(n, j);
    const double pivot = cj[0];
    if (!(pivot > 0.0) || !std::isfinite(pivot)) throw NotPositiveDefinite(j, pivot);
    const double d = std::sqrt(pivot);
    cj[0] = d;
    const double inv = 1.0 / d;
    const std::size_t len = n - j;
    for (std::size_t i = 1; i < len; ++i) cj[i] *= inv;

    for (std::size_t k = j + 1; k < n; ++k) {
      const double lkj = cj[k - j];
      if (lkj == 0.0) continue;
      double* __restrict ck = base + PackedSymMatrix::column_start(n, k);
      const double* __restrict src = cj + (k - j);
      const std::size_t m = n - k;
      for (std::size_t i = 0; i < m; ++i) ck[i] -= lkj * src[i];
    }
  }
  return CholeskyFactor(std::move(a));
}

void CholeskyFactor::forward_substitute(std::span<double> b) const {
  const std::size_t n = order();
  if (b.size() != n) throw DimensionMismatch("right-hand side length", n, b.size());
  // Column-oriented: after fixing b[j], eliminate it from the rows below.
  for (std::size_t j = 0; j < n; ++j) {
    auto col = l_.column(j);
    b[j] /= col[0];
    const double bj = b[j];
    for (std::size_t i = 1; i < col.size(); ++i) b[j + i] -= col[i] * bj;
  }
}

void CholeskyFactor::back_substitute(std::span<double> y) const {
  const std::size_t n = order();
  if (y.size() != n) throw DimensionMismatch("right-hand side length", n, y.size());
  // Row j of L' is column j of L.
  for (std::size_t jj = n; jj-- > 0;) {
    auto col = l_.column(jj);
    double s = y[jj];
    for (std::size_t i = 1; i < col.size(); ++i) s -= col[i] * y[jj + i];
    y[jj] = s / col[0];
  }
}

std::vector<double> CholeskyFactor::solve(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  forward_substitute(x);
  back_substitute(x);
  return x;
}

Matrix CholeskyFactor::reconstruct() const {
  const std::size_t n = order();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k <= j; ++k) s += l_(i, k) * l_(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

std::vector<double> solve_direct(const PackedSymMatrix& a, std::span<const double> v) {
  if (v.size() != a.order()) throw DimensionMismatch("right-hand side length", a.order(), v.size());
  return cholesky_factor(a).solve(v);
}

void matvec_into(const PackedSymMatrix& a, std::span<const double> p, std::span<double> y) {
  const std::size_t n = a.order();
  if (p.size() != n) throw DimensionMismatch("vector length", n, p.size());
  if (y.size() != n) throw DimensionMismatch("output length", n, y.size());
  std::fill(y.begin(), y.end(), 0.0);
  const double* base = a.packed().data();
  // Single pass over the packed array: column j contributes a(i,j) p_j to
  // y_i and, mirrored, a(i,j) p_i to y_j.
  for (std::size_t j = 0; j < n; ++j) {
    const double* __restrict col = base + PackedSymMatrix::column_start(n, j);
    const double pj = p[j];
    double acc = col[0] * pj;
    double* __restrict yt = y.data() + j;
    const double* __restrict pt = p.data() + j;
    const std::size_t len = n - j;
    for (std::size_t i = 1; i < len; ++i) {
      yt[i] += col[i] * pj;
      acc += col[i] * pt[i];
    }
    y[j] += acc;
  }
}

std::vector<double> matvec(const PackedSymMatrix& a, std::span<const double> p) {
  std::vector<double> y(a.order());
  matvec_into(a, p, y);
  return y;
}

void CgConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("CG epsilon must be positive");
  if (max_iter < 1) throw std::invalid_argument("CG max_iter must be at least 1");
}

CgResult cg_solve(const PackedSymMatrix& a, std::span<const double> v, const CgConfig& cfg,
                  std::optional<std::span<const double>> u0) {
  cfg.validate();
  const std::size_t n = a.order();
  if (v.size() != n) throw DimensionMismatch("right-hand side length", n, v.size());

  CgResult res;
  res.u.assign(n, 0.0);
  if (u0) {
    if (u0->size() != n) throw DimensionMismatch("initial guess length", n, u0->size());
    std::copy(u0->begin(), u0->end(), res.u.begin());
  }

  std::vector<double> r(v.begin(), v.end());
  std::vector<double> ap(n);
  if (u0) {
    matvec_into(a, res.u, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] -= ap[i];
  }
  std::vector<double> p = r;
  double rr = dot(r, r);
  res.residual_history.push_back(std::sqrt(rr));
  res.final_residual_norm = std::sqrt(rr);

  // An exact initial guess needs no iterations (alpha would be 0/0).
  if (res.final_residual_norm < cfg.epsilon) {
    res.converged = true;
    return res;
  }

  for (std::size_t k = 0;; ++k) {
    matvec_into(a, p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) throw BreakdownError(k, pap);
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < n; ++i) {
      res.u[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_next = dot(r, r);
    const double beta = rr_next / rr;
    rr = rr_next;
    res.iterations = k + 1;
    res.final_residual_norm = std::sqrt(rr);
    res.residual_history.push_back(res.final_residual_norm);

    if (res.final_residual_norm < cfg.epsilon) {
      res.converged = true;
      break;
    }
    if (res.iterations >= cfg.max_iter) break;

    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  return res;
}

}  // namespace surrogate::linalg
