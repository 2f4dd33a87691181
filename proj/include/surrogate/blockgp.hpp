#pragma once

// Independent-block GP.
//
// The dataset is cut into B non-overlapping blocks along one or two input
// dimensions with count-balanced (quantile) splits. Every block gets its own
// hyperparameter search and its own GP; a query is answered by the block
// whose interval contains it. Solving B systems of size N/B instead of one of
// size N cuts the cubic factorization work by B^2 per model.

#include <cstddef>
#include <string>
#include <vector>

#include "surrogate/dataset.hpp"
#include "surrogate/errors.hpp"
#include "surrogate/gp.hpp"
#include "surrogate/hyperopt.hpp"
#include "surrogate/timing.hpp"

namespace surrogate::blockgp {

struct BlockSpec {
  std::vector<std::size_t> dims;    // 1 or 2 feature indices
  std::vector<std::size_t> counts;  // blocks per split dimension
  /// Fraction of a block's value range by which it is widened, for fitting only.
  double overlap_fraction = 0.0;

  std::size_t block_count() const noexcept;
  void validate(std::size_t dimension) const;
};

struct Partition {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> counts;
  /// Per split dimension, the counts-1 split values. A split value is the
  /// smallest value of the block above it (intervals are closed below).
  std::vector<std::vector<double>> boundaries;
  std::vector<std::size_t> assignment;
  std::vector<std::size_t> block_sizes;

  std::size_t block_count() const noexcept { return block_sizes.size(); }
  std::vector<std::size_t> members(std::size_t block) const;
  /// Index of the block along each split dimension.
  std::vector<std::size_t> coordinates(std::size_t block) const;
};

/// Throws EmptyBlock when ties or the 2-D crossing leave a block without points.
Partition partition(const Dataset& ds, const BlockSpec& spec);

/// Block containing the query; coordinates outside the data range clamp to
/// the first or last block.
std::size_t route(const Partition& p, std::span<const double> x_star);

class BlockFailure : public NumericalError {
 public:
  BlockFailure(std::size_t block, const std::string& what)
      : NumericalError("block " + std::to_string(block) + ": " + what), block_(block) {}
  std::size_t block() const noexcept { return block_; }

 private:
  std::size_t block_;
};

struct BlockResult {
  std::vector<std::size_t> members;   // rows of the parent dataset owned by the block
  std::vector<std::size_t> training;  // members plus overlap neighbors, ascending
  hyperopt::SearchTrace trace;
  gp::Hyperparameters hp;
  gp::LooReport loo;  // LOO over the members at the selected hyperparameters
  gp::GpModel model;
  Elapsed time;
};

struct BlockGpModel {
  BlockSpec spec;
  Partition partition;
  std::vector<std::string> feature_names;
  std::vector<BlockResult> blocks;
  Elapsed total_time;  // summed over blocks
};

/// Runs the shared candidate list on every block and fits the winner.
BlockGpModel fit_blocks(const Dataset& ds, const BlockSpec& spec, const Partition& p,
                        const hyperopt::SearchConfig& search,
                        const std::vector<gp::Hyperparameters>& candidates);

struct BlockPrediction {
  double mean = 0.0;
  double variance = 0.0;
  std::size_t block = 0;
};

BlockPrediction predict_block(const BlockGpModel& m, std::span<const double> x_star);

struct SpeedupRow {
  std::string block_variable;
  std::string block_number;  // one digit per input: 0 = not split, 1.. = position along it
  std::size_t size = 0;
  double time = 0.0;
  gp::Hyperparameters hp;
  double mae = 0.0;
};

struct SpeedupReport {
  std::vector<SpeedupRow> rows;
  double full_time = 0.0;
  double full_mae = 0.0;
  double total_block_time = 0.0;      // wall
  double total_block_cpu_time = 0.0;  // summed CPU
  double speedup = 0.0;               // full_time / total_block_time
  double cubic_ops_blocks = 0.0;      // sum of size_b^3
  double cubic_ops_bound = 0.0;       // N^3 / B^2
};

SpeedupReport speedup_report(const hyperopt::SearchTrace& full, std::size_t full_size,
                             const BlockGpModel& blocks);

/// Plain-text table: block variable, block number, time, sigma_f, sigma_n,
/// l/w_1..l/w_d, MAE, followed by the totals.
std::string format_table(const SpeedupReport& r);

/// For each input dimension, the mean within-block output standard deviation
/// when splitting into `count` blocks along it, relative to the overall
/// standard deviation. Lower keeps similar outputs together.
std::vector<double> blocking_spread_scores(const Dataset& ds, std::size_t count);

}  // namespace surrogate::blockgp
