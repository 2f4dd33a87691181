#include "surrogate/gp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "surrogate/errors.hpp"
#include "surrogate/timing.hpp"

namespace surrogate::gp {

CgNotConverged::CgNotConverged(linalg::CgResult result)
    : NumericalError("conjugate gradient did not converge after " + std::to_string(result.iterations) +
                     " iterations (residual " + std::to_string(result.final_residual_norm) + ")"),
      result_(std::move(result)) {}

double scale_value(double value, const FeatureRange& range) {
  const double width = range.max - range.min;
  if (!(width > 0.0)) return 0.5;
  return (value - range.min) / width;
}

std::vector<double> scale_point(std::span<const double> raw, std::span<const FeatureRange> domain) {
  if (raw.size() != domain.size()) throw DimensionMismatch("query dimension", domain.size(), raw.size());
  std::vector<double> out(raw.size());
  for (std::size_t m = 0; m < raw.size(); ++m) out[m] = scale_value(raw[m], domain[m]);
  return out;
}

Matrix scale_features(const Dataset& ds) {
  Matrix out(ds.size(), ds.dimension());
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t m = 0; m < ds.dimension(); ++m) out(i, m) = scale_value(ds.features(i, m), ds.domain[m]);
  return out;
}

namespace {

std::string describe_duplicate(const Matrix& x) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = i + 1; j < x.rows(); ++j) {
      auto a = x.row(i);
      auto b = x.row(j);
      if (std::equal(a.begin(), a.end(), b.begin())) {
        return "duplicate training points " + std::to_string(i) + " and " + std::to_string(j);
      }
    }
  }
  return {};
}

std::vector<double> cross_vector(const Matrix& scaled, std::span<const double> x_scaled,
                                 const Hyperparameters& hp, const TaperSpec& taper) {
  std::vector<double> c(scaled.rows());
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    c[i] = kernels::cross_covariance(x_scaled, scaled.row(i), hp, taper);
  return c;
}

}  // namespace

GpModel fit(const Dataset& ds, const Hyperparameters& hp, const SolverConfig& cfg) {
  ds.validate();
  hp.validate(ds.dimension());
  if (ds.size() < 1) throw DataError("cannot fit a GP to an empty dataset");
  if (cfg.kind == SolverKind::cg) cfg.cg.validate();

  GpModel m;
  m.feature_names_ = ds.feature_names;
  m.output_name_ = ds.output_name;
  m.domain_ = ds.domain;
  m.scaled_ = scale_features(ds);
  m.outputs_ = ds.outputs;
  m.hp_ = hp;
  m.solver_ = cfg;

  auto c = kernels::assemble_covariance(m.scaled_, hp, cfg.taper);
  if (cfg.kind == SolverKind::direct) {
    try {
      m.factor_.emplace(linalg::cholesky_factor(std::move(c)));
    } catch (const NotPositiveDefinite& e) {
      throw NotPositiveDefinite(e.pivot(), e.value(), describe_duplicate(m.scaled_));
    }
    m.alpha_ = m.factor_->solve(m.outputs_);
  } else {
    auto res = linalg::cg_solve(c, m.outputs_, cfg.cg);
    if (!res.converged && !cfg.accept_unconverged) throw CgNotConverged(std::move(res));
    m.alpha_ = res.u;
    m.cg_fit_ = std::move(res);
    m.covariance_ = std::move(c);
  }
  return m;
}

GpModel GpModel::restore(std::vector<std::string> names, std::string output_name,
                         std::vector<FeatureRange> domain, Matrix scaled, std::vector<double> outputs,
                         Hyperparameters hp, SolverConfig solver, std::vector<double> alpha) {
  if (alpha.size() != scaled.rows()) throw DimensionMismatch("alpha length", scaled.rows(), alpha.size());
  if (outputs.size() != scaled.rows()) throw DimensionMismatch("output count", scaled.rows(), outputs.size());
  if (domain.size() != scaled.cols()) throw DimensionMismatch("domain length", scaled.cols(), domain.size());
  hp.validate(scaled.cols());
  GpModel m;
  m.feature_names_ = std::move(names);
  m.output_name_ = std::move(output_name);
  m.domain_ = std::move(domain);
  m.scaled_ = std::move(scaled);
  m.outputs_ = std::move(outputs);
  m.hp_ = std::move(hp);
  m.solver_ = std::move(solver);
  m.alpha_ = std::move(alpha);
  auto c = kernels::assemble_covariance(m.scaled_, m.hp_, m.solver_.taper);
  if (m.solver_.kind == SolverKind::direct) {
    m.factor_.emplace(linalg::cholesky_factor(std::move(c)));
  } else {
    m.covariance_ = std::move(c);
  }
  return m;
}

double predict_mean(const GpModel& m, std::span<const double> x_star) {
  const auto xs = scale_point(x_star, m.domain());
  const auto c = cross_vector(m.scaled_features(), xs, m.hyperparameters(), m.solver().taper);
  return linalg::dot(c, m.alpha());
}

VariancePrediction predict_variance_detailed(const GpModel& m, std::span<const double> x_star) {
  const auto xs = scale_point(x_star, m.domain());
  auto c = cross_vector(m.scaled_, xs, m.hp_, m.solver_.taper);
  const double c_star_star = m.hp_.sigma_f * m.hp_.sigma_f + m.hp_.sigma_n * m.hp_.sigma_n;

  double quad = 0.0;
  if (m.factor_) {
    // c' C^-1 c = |L^-1 c|^2
    m.factor_->forward_substitute(c);
    quad = linalg::dot(c, c);
  } else {
    auto cfg = m.solver_.cg;
    auto res = linalg::cg_solve(*m.covariance_, c, cfg);
    quad = linalg::dot(c, res.u);
  }
  VariancePrediction out;
  out.raw = c_star_star - quad;
  out.clamped = out.raw < 0.0;
  out.variance = out.clamped ? 0.0 : out.raw;
  return out;
}

double predict_variance(const GpModel& m, std::span<const double> x_star) {
  return predict_variance_detailed(m, x_star).variance;
}

LooReport loo_evaluate(const Dataset& ds, const Hyperparameters& hp, const SolverConfig& cfg,
                       const LooOptions& options) {
  ds.validate();
  hp.validate(ds.dimension());
  const std::size_t n = ds.size();
  if (n < 2) throw DataError("leave-one-out needs at least two instances");
  if (cfg.kind == SolverKind::cg) cfg.cg.validate();

  Stopwatch clock;
  std::vector<std::size_t> held_out = options.eval_indices;
  if (held_out.empty()) {
    held_out.resize(n);
    for (std::size_t i = 0; i < n; ++i) held_out[i] = i;
  }

  const Matrix scaled = scale_features(ds);
  // Every fold's covariance is the full matrix minus one row and column.
  const auto full = kernels::assemble_covariance(scaled, hp, cfg.taper);

  LooReport report;
  report.per_point.reserve(held_out.size());
  std::vector<double> rhs(n - 1);
  std::vector<double> cross(n - 1);
  double abs_sum = 0.0;

  for (std::size_t k : held_out) {
    if (k >= n) throw std::out_of_range("leave-one-out index out of range");
    for (std::size_t i = 0, r = 0; i < n; ++i) {
      if (i == k) continue;
      rhs[r] = ds.outputs[i];
      cross[r] = full(i, k);
      ++r;
    }
    auto sub = full.without(k);
    ++report.model_builds;

    LooPoint pt;
    pt.index = k;
    pt.actual = ds.outputs[k];
    const double c_star_star = full(k, k);

    if (cfg.kind == SolverKind::direct) {
      std::optional<linalg::CholeskyFactor> factor;
      try {
        factor.emplace(linalg::cholesky_factor(std::move(sub)));
      } catch (const NotPositiveDefinite&) {
        if (!options.skip_failed_folds) throw;
        ++report.folds_skipped;
        continue;
      }
      const auto alpha = factor->solve(rhs);
      pt.predicted = linalg::dot(cross, alpha);
      if (options.with_variance) {
        std::vector<double> v = cross;
        factor->forward_substitute(v);
        pt.variance = c_star_star - linalg::dot(v, v);
      }
    } else {
      auto res = linalg::cg_solve(sub, rhs, cfg.cg);
      if (!res.converged) ++report.cg_unconverged;
      pt.predicted = linalg::dot(cross, res.u);
      if (options.with_variance) {
        auto vres = linalg::cg_solve(sub, cross, cfg.cg);
        if (!vres.converged) ++report.cg_unconverged;
        pt.variance = c_star_star - linalg::dot(cross, vres.u);
      }
    }
    if (pt.variance && *pt.variance < 0.0) {
      pt.variance = 0.0;
      ++report.variance_clamped;
    }
    abs_sum += std::abs(pt.predicted - pt.actual);
    report.per_point.push_back(pt);
  }

  report.mae = report.per_point.empty() ? std::numeric_limits<double>::infinity()
                                        : abs_sum / static_cast<double>(report.per_point.size());
  const auto t = clock.elapsed();
  report.wall_time = t.wall;
  report.cpu_time = t.cpu;
  return report;
}

}  // namespace surrogate::gp
