#pragma once

// Space-filling experiment designs over an axis-aligned box.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "surrogate/matrix.hpp"

namespace surrogate::design {

struct DomainDim {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  /// Stratification levels; required by stratified_sample only.
  std::optional<std::size_t> levels;

  friend bool operator==(const DomainDim&, const DomainDim&) = default;
};

struct Domain {
  std::vector<DomainDim> dims;

  std::size_t dimension() const noexcept { return dims.size(); }
  std::vector<std::string> names() const;
  /// Throws std::invalid_argument unless min < max and levels >= 1 everywhere.
  void validate() const;
  bool contains(std::span<const double> x) const;

  /// Power, speed, beam size and absorptivity ranges with 7, 10, 3, 2 levels.
  static Domain eagar_tsai_table();
};

enum class SampleMethod { stratified, best_candidate };

struct SampleSet {
  Matrix points;
  std::uint64_t seed = 0;
  SampleMethod method = SampleMethod::stratified;
};

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(Rng& rng);

/// One uniform point inside every cell of the levels grid, cells visited in
/// row-major order (last dimension fastest).
SampleSet stratified_sample(const Domain& dom, std::uint64_t seed);

constexpr std::size_t kDefaultCandidates = 32;

/// Index of the candidate with the largest minimum distance to `accepted`
/// (first wins on ties). All coordinates are unit-box coordinates.
std::size_t select_best_candidate(const Matrix& candidates, const Matrix& accepted);

/// Mitchell's best-candidate sampling. Distances are measured in the
/// unit-scaled box; `existing` points (raw units) repel new ones but are not
/// part of the result.
SampleSet best_candidate_sample(const Domain& dom, std::size_t n, std::size_t k, std::uint64_t seed,
                                const SampleSet* existing = nullptr);

/// Best-candidate sample of a (sigma_f, sigma_n, lambda_1..lambda_d) box with
/// both sigmas drawn in log space. Columns follow that order.
SampleSet hyperparam_candidates(const Domain& space, std::size_t r, std::uint64_t seed,
                                std::size_t k = kDefaultCandidates);

/// Uniform points in the box (baseline for dispersion comparisons).
Matrix uniform_sample(const Domain& dom, std::size_t n, Rng& rng);

/// Smallest pairwise Euclidean distance among rows.
double min_pairwise_distance(const Matrix& points);

}  // namespace surrogate::design
