#pragma once

// Dense symmetric positive-definite linear algebra on packed storage.
//
// Packing: the lower triangle is stored column by column (LAPACK 'L' packed
// layout). Element (i, j) with i >= j lives at
//
//     j * (2n - j - 1) / 2 + i
//
// so column j occupies the contiguous range [start(j), start(j) + n - j),
// beginning with its diagonal entry.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "surrogate/matrix.hpp"

namespace surrogate::linalg {

class PackedSymMatrix {
 public:
  PackedSymMatrix() = default;
  explicit PackedSymMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(packed_size(n), fill) {}
  /// Takes ownership of an already packed lower triangle.
  PackedSymMatrix(std::size_t n, std::vector<double> packed);

  static PackedSymMatrix identity(std::size_t n);
  /// Packs the lower triangle of a square dense matrix; the upper triangle is ignored.
  static PackedSymMatrix from_dense(const Matrix& dense);

  static constexpr std::size_t packed_size(std::size_t n) noexcept { return n * (n + 1) / 2; }
  static constexpr std::size_t column_start(std::size_t n, std::size_t j) noexcept {
    return j * (2 * n - j - 1) / 2 + j;
  }

  std::size_t order() const noexcept { return n_; }

  /// Symmetric element access; either triangle may be addressed.
  double operator()(std::size_t i, std::size_t j) const {
    return i >= j ? data_[index(i, j)] : data_[index(j, i)];
  }
  double& at_lower(std::size_t i, std::size_t j) { return data_[index(i, j)]; }

  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return column_start(n_, j) + (i - j);
  }

  /// Column j from the diagonal down (length n - j).
  std::span<const double> column(std::size_t j) const {
    return {data_.data() + column_start(n_, j), n_ - j};
  }
  std::span<double> column(std::size_t j) {
    return {data_.data() + column_start(n_, j), n_ - j};
  }

  std::span<const double> packed() const noexcept { return data_; }
  std::span<double> packed() noexcept { return data_; }

  Matrix to_dense() const;

  /// The matrix with row and column `k` removed.
  PackedSymMatrix without(std::size_t k) const;

  friend bool operator==(const PackedSymMatrix&, const PackedSymMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Lower-triangular Cholesky factor stored in the same packed layout.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(PackedSymMatrix lower) : l_(std::move(lower)) {}

  std::size_t order() const noexcept { return l_.order(); }
  const PackedSymMatrix& lower() const noexcept { return l_; }
  double operator()(std::size_t i, std::size_t j) const { return i >= j ? l_(i, j) : 0.0; }

  /// Solves L y = b in place.
  void forward_substitute(std::span<double> b) const;
  /// Solves L' x = y in place.
  void back_substitute(std::span<double> y) const;
  /// Solves (L L') x = b.
  std::vector<double> solve(std::span<const double> b) const;

  /// L L' expanded to dense form.
  Matrix reconstruct() const;

 private:
  PackedSymMatrix l_;
};

struct CgConfig {
  double epsilon = 1e-8;
  std::size_t max_iter = 1000;

  void validate() const;

  friend bool operator==(const CgConfig&, const CgConfig&) = default;
};

struct CgResult {
  std::vector<double> u;
  std::size_t iterations = 0;
  double final_residual_norm = 0.0;
  bool converged = false;
  /// Recurrence residual norm after each iteration, starting with ||r0||.
  std::vector<double> residual_history;
};

/// Throws NotPositiveDefinite on the first pivot that is not strictly positive.
CholeskyFactor cholesky_factor(PackedSymMatrix a);

std::vector<double> solve_direct(const PackedSymMatrix& a, std::span<const double> v);

std::vector<double> matvec(const PackedSymMatrix& a, std::span<const double> p);
/// y = A p without allocating; y must have length n.
void matvec_into(const PackedSymMatrix& a, std::span<const double> p, std::span<double> y);

/// Conjugate gradient for A u = v. Stops when the recurrence residual norm
/// drops below epsilon or after max_iter iterations, whichever comes first.
CgResult cg_solve(const PackedSymMatrix& a, std::span<const double> v, const CgConfig& cfg,
                  std::optional<std::span<const double>> u0 = std::nullopt);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace surrogate::linalg
