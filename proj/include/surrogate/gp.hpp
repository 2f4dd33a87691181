#pragma once

// Zero-mean Gaussian-process regression with a squared-exponential kernel.
//
// Inputs are min-max scaled to [0, 1] with the dataset domain before any
// kernel evaluation; outputs stay in their original units. The weight vector
// alpha = C^-1 y is solved once at fit time and reused by every mean
// prediction; each variance prediction needs one more solve against c_*.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surrogate/dataset.hpp"
#include "surrogate/errors.hpp"
#include "surrogate/kernels.hpp"
#include "surrogate/linalg.hpp"

namespace surrogate::gp {

using kernels::Hyperparameters;
using kernels::TaperSpec;

enum class SolverKind { direct, cg };

struct SolverConfig {
  SolverKind kind = SolverKind::direct;
  linalg::CgConfig cg;
  TaperSpec taper;
  /// When false, fit() throws CgNotConverged if the CG iteration hits its cap.
  bool accept_unconverged = false;

  static SolverConfig direct(TaperSpec taper = {}) { return {SolverKind::direct, {}, std::move(taper), false}; }
  static SolverConfig conjugate_gradient(linalg::CgConfig cg, TaperSpec taper = {}) {
    return {SolverKind::cg, cg, std::move(taper), false};
  }

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

class CgNotConverged : public NumericalError {
 public:
  explicit CgNotConverged(linalg::CgResult result);
  const linalg::CgResult& result() const noexcept { return result_; }

 private:
  linalg::CgResult result_;
};

/// Maps a raw value into [0, 1]; constant ranges map to 0.5.
double scale_value(double value, const FeatureRange& range);
std::vector<double> scale_point(std::span<const double> raw, std::span<const FeatureRange> domain);
Matrix scale_features(const Dataset& ds);

struct VariancePrediction {
  double variance = 0.0;  // clamped at zero
  double raw = 0.0;       // c_** - c_*' C^-1 c_* before clamping
  bool clamped = false;
};

class GpModel {
 public:
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  const std::string& output_name() const noexcept { return output_name_; }
  const std::vector<FeatureRange>& domain() const noexcept { return domain_; }
  const Matrix& scaled_features() const noexcept { return scaled_; }
  const std::vector<double>& outputs() const noexcept { return outputs_; }
  const Hyperparameters& hyperparameters() const noexcept { return hp_; }
  const SolverConfig& solver() const noexcept { return solver_; }
  const std::vector<double>& alpha() const noexcept { return alpha_; }
  const std::optional<linalg::CholeskyFactor>& factor() const noexcept { return factor_; }
  /// CG diagnostics of the alpha solve (cg mode only).
  const std::optional<linalg::CgResult>& fit_diagnostics() const noexcept { return cg_fit_; }
  std::size_t size() const noexcept { return scaled_.rows(); }
  std::size_t dimension() const noexcept { return scaled_.cols(); }

  /// Rebuilds a model from exported state; the factor (direct mode) or the
  /// covariance (cg mode) is recomputed from the training data, alpha is kept.
  static GpModel restore(std::vector<std::string> names, std::string output_name,
                         std::vector<FeatureRange> domain, Matrix scaled, std::vector<double> outputs,
                         Hyperparameters hp, SolverConfig solver, std::vector<double> alpha);

 private:
  friend GpModel fit(const Dataset&, const Hyperparameters&, const SolverConfig&);
  friend VariancePrediction predict_variance_detailed(const GpModel&, std::span<const double>);

  std::vector<std::string> feature_names_;
  std::string output_name_;
  std::vector<FeatureRange> domain_;
  Matrix scaled_;
  std::vector<double> outputs_;
  Hyperparameters hp_;
  SolverConfig solver_;
  std::vector<double> alpha_;
  std::optional<linalg::CholeskyFactor> factor_;
  std::optional<linalg::PackedSymMatrix> covariance_;
  std::optional<linalg::CgResult> cg_fit_;
};

/// Throws NotPositiveDefinite (naming a duplicate pair when there is one) or
/// CgNotConverged unless solver.accept_unconverged is set.
GpModel fit(const Dataset& ds, const Hyperparameters& hp, const SolverConfig& cfg);

/// Query in raw (unscaled) units.
double predict_mean(const GpModel& m, std::span<const double> x_star);
double predict_variance(const GpModel& m, std::span<const double> x_star);
VariancePrediction predict_variance_detailed(const GpModel& m, std::span<const double> x_star);

struct LooPoint {
  std::size_t index = 0;
  double actual = 0.0;
  double predicted = 0.0;
  std::optional<double> variance;
};

struct LooOptions {
  bool with_variance = false;
  /// Record folds whose covariance is not positive definite and move on,
  /// instead of failing the whole evaluation.
  bool skip_failed_folds = false;
  /// Rows to hold out; empty means every row. The remaining rows always
  /// form the training set of each fold.
  std::vector<std::size_t> eval_indices;
};

struct LooReport {
  double mae = 0.0;
  std::vector<LooPoint> per_point;
  double wall_time = 0.0;
  double cpu_time = 0.0;
  std::size_t folds_skipped = 0;
  std::size_t cg_unconverged = 0;
  std::size_t variance_clamped = 0;
  std::size_t model_builds = 0;
};

/// Leave-one-out: one (N-1)-point model per held-out row.
LooReport loo_evaluate(const Dataset& ds, const Hyperparameters& hp, const SolverConfig& cfg,
                       const LooOptions& options = {});

}  // namespace surrogate::gp
