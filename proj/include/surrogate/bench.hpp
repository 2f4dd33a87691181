#pragma once

// Timing comparison of full-data, blocked and CG hyperparameter searches over
// one shared candidate list.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "surrogate/dataset.hpp"
#include "surrogate/hyperopt.hpp"
#include "surrogate/linalg.hpp"

namespace surrogate::bench {

enum class EntryKind { full, block, cg };

struct BenchEntry {
  EntryKind kind = EntryKind::full;
  std::size_t blocks = 0;  // block
  linalg::CgConfig cg;     // cg
  std::string label;

  /// "full", "block:B" or "cg:eps:cap".
  static BenchEntry parse(const std::string& text);
};

/// Comma-separated list of entries.
std::vector<BenchEntry> parse_compare(const std::string& text);

struct BenchRow {
  std::string config;
  double time = 0.0;  // wall seconds for the whole search
  double cpu_time = 0.0;
  /// LOO MAE at the selected optimum; for block entries the member-weighted
  /// mean over blocks.
  double mae = 0.0;
  std::size_t best_index = 0;  // full and cg entries
  std::size_t cg_unconverged = 0;
  std::vector<double> block_maes;
  std::optional<double> speedup;  // full time / this time, when a full entry ran
};

/// Runs every entry with the candidates of `base` (space, r, seed). Block
/// entries split along `block_dim`, which is required only when a block entry
/// is present; direct solves are used for full and block.
std::vector<BenchRow> run_bench(const Dataset& ds, const hyperopt::SearchConfig& base,
                                const std::vector<BenchEntry>& entries, std::optional<std::size_t> block_dim);

void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path);

}  // namespace surrogate::bench
