#include "surrogate/hyperopt.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>

#include "surrogate/errors.hpp"
#include "surrogate/timing.hpp"

namespace surrogate::hyperopt {

design::Domain default_space(const Dataset& ds) {
  double s = standard_deviation(ds.outputs);
  if (!(s > 0.0)) s = 1.0;
  design::Domain dom;
  dom.dims.push_back({"sigma_f", 1e-2 * s, 1e1 * s, std::nullopt});
  dom.dims.push_back({"sigma_n", 1e-6 * s, 1e-1 * s, std::nullopt});
  for (std::size_t m = 0; m < ds.dimension(); ++m) {
    dom.dims.push_back({"lambda_" + std::to_string(m + 1), 0.05, 2.0, std::nullopt});
  }
  return dom;
}

Hyperparameters default_hyperparameters(const Dataset& ds) {
  double s = standard_deviation(ds.outputs);
  if (!(s > 0.0)) s = 1.0;
  return Hyperparameters{s, 1e-3 * s, std::vector<double>(ds.dimension(), 1.0)};
}

Hyperparameters to_hyperparameters(std::span<const double> row) {
  if (row.size() < 3) throw DimensionMismatch("hyperparameter row length", 3, row.size());
  return Hyperparameters{row[0], row[1], std::vector<double>(row.begin() + 2, row.end())};
}

std::vector<Hyperparameters> candidate_list(const SearchConfig& cfg) {
  if (cfg.r < 1) throw std::invalid_argument("random search needs R >= 1");
  const auto set = design::hyperparam_candidates(cfg.space, cfg.r, cfg.seed, cfg.candidates_per_step);
  std::vector<Hyperparameters> out;
  out.reserve(set.points.rows());
  for (std::size_t i = 0; i < set.points.rows(); ++i) out.push_back(to_hyperparameters(set.points.row(i)));
  return out;
}

std::size_t argmin_first(std::span<const double> maes) {
  if (maes.empty()) throw std::invalid_argument("argmin of an empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < maes.size(); ++i) {
    if (maes[i] < maes[best]) best = i;
  }
  return best;
}

SearchResult random_search(const Dataset& ds, const SearchConfig& cfg) {
  return random_search(ds, cfg, candidate_list(cfg));
}

SearchResult random_search(const Dataset& ds, const SearchConfig& cfg,
                           const std::vector<Hyperparameters>& candidates,
                           const gp::LooOptions& loo_options) {
  if (ds.size() < 3) throw DataError("random search needs at least three instances");
  if (candidates.empty()) throw std::invalid_argument("random search needs at least one candidate");

  Stopwatch clock;
  gp::SolverConfig solver = cfg.solver;
  // Non-convergence is reported per candidate; the returned iterate still scores.
  solver.accept_unconverged = true;
  const std::size_t folds = loo_options.eval_indices.empty() ? ds.size() : loo_options.eval_indices.size();

  SearchResult result;
  auto& trace = result.trace;
  trace.candidates.reserve(candidates.size());
  std::vector<double> maes;
  maes.reserve(candidates.size());

  for (const auto& hp : candidates) {
    CandidateRecord rec;
    rec.hp = hp;
    Stopwatch one;
    try {
      const auto report = gp::loo_evaluate(ds, hp, solver, loo_options);
      rec.mae = report.mae;
      rec.cg_unconverged = report.cg_unconverged;
      if (maes.empty() || report.mae < maes[argmin_first(maes)]) trace.best_report = report;
      if (report.cg_unconverged > 0) {
        rec.diagnostic = std::to_string(report.cg_unconverged) + " CG solves hit the iteration cap";
      }
    } catch (const NumericalError& e) {
      // NotPositiveDefinite or CG breakdown: rank last, keep searching.
      rec.mae = std::numeric_limits<double>::infinity();
      rec.diagnostic = e.what();
    }
    const auto t = one.elapsed();
    rec.wall_time = t.wall;
    rec.cpu_time = t.cpu;
    trace.model_builds += folds;
    maes.push_back(rec.mae);
    trace.candidates.push_back(std::move(rec));
  }
  trace.best_index = argmin_first(maes);
  result.best = trace.best().hp;

  if (cfg.with_variance_finals) {
    gp::LooOptions finals = loo_options;
    finals.with_variance = true;
    finals.skip_failed_folds = true;
    try {
      trace.default_report = gp::loo_evaluate(ds, default_hyperparameters(ds), solver, finals);
    } catch (const NumericalError&) {
    }
    trace.model_builds += folds;
    if (std::isfinite(trace.best().mae)) {
      try {
        trace.optimum_report = gp::loo_evaluate(ds, result.best, solver, finals);
      } catch (const NumericalError&) {
      }
      trace.model_builds += folds;
    }
  }

  const auto t = clock.elapsed();
  trace.total_time = t.wall;
  trace.total_cpu_time = t.cpu;
  return result;
}

void write_trace_csv(const SearchTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  const std::size_t d = trace.candidates.empty() ? 0 : trace.candidates.front().hp.dimension();
  out << "index,sigma_f,sigma_n";
  for (std::size_t m = 0; m < d; ++m) out << ",lambda_" << (m + 1);
  out << ",mae,time,cg_unconverged,best\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < trace.candidates.size(); ++i) {
    const auto& c = trace.candidates[i];
    out << i << ',' << c.hp.sigma_f << ',' << c.hp.sigma_n;
    for (double l : c.hp.length_scales) out << ',' << l;
    out << ',' << c.mae << ',' << c.wall_time << ',' << c.cg_unconverged << ','
        << (i == trace.best_index ? 1 : 0) << '\n';
  }
}

}  // namespace surrogate::hyperopt
