#pragma once

// Random-search hyperparameter optimization scored by leave-one-out MAE.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surrogate/dataset.hpp"
#include "surrogate/design.hpp"
#include "surrogate/gp.hpp"

namespace surrogate::hyperopt {

using gp::Hyperparameters;

struct SearchConfig {
  design::Domain space;  // (sigma_f, sigma_n, lambda_1..lambda_d)
  std::size_t r = 100;
  gp::SolverConfig solver;
  std::uint64_t seed = 0;
  std::size_t candidates_per_step = design::kDefaultCandidates;
  /// Run the two variance-bearing LOO passes (default and optimum) after the search.
  bool with_variance_finals = false;
};

struct CandidateRecord {
  Hyperparameters hp;
  double mae = 0.0;  // +inf when the covariance was not positive definite
  double wall_time = 0.0;
  double cpu_time = 0.0;
  std::size_t cg_unconverged = 0;
  std::string diagnostic;
};

struct SearchTrace {
  std::vector<CandidateRecord> candidates;
  std::size_t best_index = 0;
  double total_time = 0.0;
  double total_cpu_time = 0.0;
  std::size_t model_builds = 0;
  /// LOO report of the selected candidate, kept from the search itself.
  gp::LooReport best_report;
  std::optional<gp::LooReport> default_report;
  std::optional<gp::LooReport> optimum_report;

  const CandidateRecord& best() const { return candidates.at(best_index); }
};

struct SearchResult {
  Hyperparameters best;
  SearchTrace trace;
};

/// Box bracketing typical optima: sigma_f in [1e-2, 1e1] * std(y),
/// sigma_n in [1e-6, 1e-1] * std(y), lambda in [0.05, 2.0].
design::Domain default_space(const Dataset& ds);

/// sigma_f = std(y), sigma_n = 1e-3 * std(y), every lambda = 1.
Hyperparameters default_hyperparameters(const Dataset& ds);

Hyperparameters to_hyperparameters(std::span<const double> row);
std::vector<Hyperparameters> candidate_list(const SearchConfig& cfg);

/// Argmin of `maes` with first-occurrence tie-break.
std::size_t argmin_first(std::span<const double> maes);

SearchResult random_search(const Dataset& ds, const SearchConfig& cfg);
/// Search over an explicit candidate list, e.g. one shared between the
/// full-data run and every block.
SearchResult random_search(const Dataset& ds, const SearchConfig& cfg,
                           const std::vector<Hyperparameters>& candidates,
                           const gp::LooOptions& loo_options = {});

/// One row per candidate: sigma_f, sigma_n, lambda_1..lambda_d, mae, time.
void write_trace_csv(const SearchTrace& trace, const std::string& path);

}  // namespace surrogate::hyperopt
