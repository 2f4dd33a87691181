#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "surrogate/linalg.hpp"
#include "surrogate/matrix.hpp"

namespace surrogate::kernels {

/// sigma_f, sigma_n and one length scale per input dimension.
///
/// The length scale of dimension m is the combined ratio l / w_m; distances
/// divide each coordinate difference by it, so the squared-exponential
/// exponent reduces to -D^2 / 2.
struct Hyperparameters {
  double sigma_f = 1.0;
  double sigma_n = 0.0;
  std::vector<double> length_scales;

  std::size_t dimension() const noexcept { return length_scales.size(); }
  /// Throws std::invalid_argument unless sigma_f > 0, sigma_n >= 0 and every length scale > 0.
  void validate() const;
  /// validate() plus a dimension check.
  void validate(std::size_t d) const;

  friend bool operator==(const Hyperparameters&, const Hyperparameters&) = default;
};

enum class TaperKind { none, wendland1, block };

struct TaperSpec {
  TaperKind kind = TaperKind::none;
  /// Taper range, used when kind == wendland1.
  double theta = 0.0;
  /// Block id per training row, used when kind == block.
  std::vector<std::size_t> blocks;

  static TaperSpec none() { return {}; }
  static TaperSpec wendland1(double theta) { return {TaperKind::wendland1, theta, {}}; }
  static TaperSpec block(std::vector<std::size_t> assignment) {
    return {TaperKind::block, 0.0, std::move(assignment)};
  }

  void validate() const;

  friend bool operator==(const TaperSpec&, const TaperSpec&) = default;
};

double weighted_distance(std::span<const double> xi, std::span<const double> xj,
                         std::span<const double> length_scales);

/// sigma_f^2 exp(-dist^2 / 2), plus sigma_n^2 on the diagonal.
double sq_exp_cov(double dist, const Hyperparameters& hp, bool same_point);

/// Wendland-1 taper (1 - D/theta)_+^4 (1 + 4 D/theta); zero for D >= theta.
double wendland1_taper(double dist, double theta);

/// Covariance between a query and training row `row`, including the taper.
/// Block tapers are not defined for queries and are rejected.
double cross_covariance(std::span<const double> x_star, std::span<const double> x_row,
                        const Hyperparameters& hp, const TaperSpec& taper);

linalg::PackedSymMatrix assemble_covariance(const Matrix& features, const Hyperparameters& hp,
                                            const TaperSpec& taper);

}  // namespace surrogate::kernels
