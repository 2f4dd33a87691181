#include "surrogate/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "surrogate/errors.hpp"

namespace surrogate::kernels {

void Hyperparameters::validate() const {
  if (!(sigma_f > 0.0) || !std::isfinite(sigma_f)) throw std::invalid_argument("sigma_f must be positive");
  if (!(sigma_n >= 0.0) || !std::isfinite(sigma_n)) throw std::invalid_argument("sigma_n must be non-negative");
  for (double l : length_scales) {
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("length scales must be positive");
  }
}

void Hyperparameters::validate(std::size_t d) const {
  if (length_scales.size() != d) throw DimensionMismatch("length scale count", d, length_scales.size());
  validate();
}

void TaperSpec::validate() const {
  if (kind == TaperKind::wendland1 && !(theta > 0.0)) {
    throw std::invalid_argument("taper range theta must be positive");
  }
}

namespace {

// Squared weighted distance. Assembly and cross-covariance both go through
// here so a query equal to a training row reproduces its matrix column bit
// for bit.
double squared_distance(std::span<const double> xi, std::span<const double> xj,
                        std::span<const double> length_scales) {
  double s = 0.0;
  for (std::size_t m = 0; m < xi.size(); ++m) {
    const double t = (xi[m] - xj[m]) / length_scales[m];
    s += t * t;
  }
  return s;
}

double tapered_offdiag(double sq_dist, double sf2, const TaperSpec& taper) {
  double v = sf2 * std::exp(-0.5 * sq_dist);
  if (taper.kind == TaperKind::wendland1) v *= wendland1_taper(std::sqrt(sq_dist), taper.theta);
  return v;
}

}  // namespace

double weighted_distance(std::span<const double> xi, std::span<const double> xj,
                         std::span<const double> length_scales) {
  if (xi.size() != xj.size()) throw DimensionMismatch("point dimension", xi.size(), xj.size());
  if (length_scales.size() != xi.size()) {
    throw DimensionMismatch("length scale count", xi.size(), length_scales.size());
  }
  return std::sqrt(squared_distance(xi, xj, length_scales));
}

double sq_exp_cov(double dist, const Hyperparameters& hp, bool same_point) {
  const double k = hp.sigma_f * hp.sigma_f * std::exp(-0.5 * dist * dist);
  return same_point ? k + hp.sigma_n * hp.sigma_n : k;
}

double wendland1_taper(double dist, double theta) {
  const double t = dist / theta;
  if (t >= 1.0) return 0.0;
  const double a = 1.0 - t;
  const double a2 = a * a;
  return a2 * a2 * (1.0 + 4.0 * t);
}

double cross_covariance(std::span<const double> x_star, std::span<const double> x_row,
                        const Hyperparameters& hp, const TaperSpec& taper) {
  if (taper.kind == TaperKind::block) {
    throw std::invalid_argument("block taper has no cross-covariance for unassigned queries");
  }
  if (x_star.size() != x_row.size()) throw DimensionMismatch("point dimension", x_row.size(), x_star.size());
  if (hp.length_scales.size() != x_row.size()) {
    throw DimensionMismatch("length scale count", x_row.size(), hp.length_scales.size());
  }
  return tapered_offdiag(squared_distance(x_star, x_row, hp.length_scales), hp.sigma_f * hp.sigma_f,
                         taper);
}

linalg::PackedSymMatrix assemble_covariance(const Matrix& features, const Hyperparameters& hp,
                                            const TaperSpec& taper) {
  const std::size_t n = features.rows();
  const std::size_t d = features.cols();
  hp.validate(d);
  taper.validate();
  if (taper.kind == TaperKind::block && taper.blocks.size() != n) {
    throw DimensionMismatch("block assignment length", n, taper.blocks.size());
  }

  const double sf2 = hp.sigma_f * hp.sigma_f;
  const double sn2 = hp.sigma_n * hp.sigma_n;
  linalg::PackedSymMatrix c(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto col = c.column(j);
    col[0] = sf2 + sn2;
    auto xj = features.row(j);
    for (std::size_t i = j + 1; i < n; ++i) {
      if (taper.kind == TaperKind::block && taper.blocks[i] != taper.blocks[j]) {
        col[i - j] = 0.0;
        continue;
      }
      col[i - j] = tapered_offdiag(squared_distance(features.row(i), xj, hp.length_scales), sf2, taper);
    }
  }
  return c;
}

}  // namespace surrogate::kernels
