#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "surrogate/dataset.hpp"
#include "surrogate/linalg.hpp"

namespace testing_support {

inline surrogate::linalg::PackedSymMatrix packed(const oracle::Dense& a) {
  surrogate::Matrix m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
  return surrogate::linalg::PackedSymMatrix::from_dense(m);
}

inline std::vector<std::vector<double>> rows(const surrogate::Matrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

/// n uniform points in [0,1]^d with a smooth response.
inline surrogate::Dataset smooth_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  surrogate::Matrix x(n, d);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t m = 0; m < d; ++m) {
      x(i, m) = u(rng);
      s += std::sin(3.0 * x(i, m) + static_cast<double>(m));
    }
    y[i] = s;
  }
  return surrogate::Dataset::from_columns(std::move(x), std::move(y));
}

}  // namespace testing_support
