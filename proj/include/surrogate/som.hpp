#pragma once

// Batch Map self-organizing map on a hexagonal grid.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surrogate/dataset.hpp"
#include "surrogate/matrix.hpp"

namespace surrogate::som {

/// Node (r, c) sits at x = c + 0.5 * (r mod 2), y = r * sqrt(3) / 2, so each
/// interior node has six neighbors at distance 1. Index = r * nx + c.
struct HexGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  Matrix coords;  // (nx * ny) x 2

  static HexGrid make(std::size_t nx, std::size_t ny);
  std::size_t size() const noexcept { return nx * ny; }
  std::size_t row_of(std::size_t node) const noexcept { return node / nx; }
  std::size_t col_of(std::size_t node) const noexcept { return node % nx; }
  double distance(std::size_t a, std::size_t b) const;
  /// Nodes at grid distance 1 (within rounding) of `node`.
  std::vector<std::size_t> adjacent(std::size_t node) const;
};

struct SomConfig {
  double r_max = 8.0;
  double r_min = 1.0;
  std::size_t r_iter = 100;
  std::size_t iter_max = 120;
  /// Multipliers on per-dimension differences; empty means all ones.
  std::vector<double> dist_weights;
  std::uint64_t seed = 0;

  void validate() const;
  double radius_delta() const { return (r_max - r_min) / static_cast<double>(r_iter); }
  /// Radius used in iteration t (0-based).
  double radius_at(std::size_t t) const;

  static SomConfig preset_30x30() { return {20.0, 1.0, 150, 200, {}, 0}; }
  static SomConfig preset_10x10() { return {8.0, 1.0, 100, 120, {}, 0}; }
};

struct IterationRecord {
  double radius = 0.0;
  double metric = 0.0;  // convergence metric after the update
};

struct SomModel {
  HexGrid grid;
  Matrix weights;  // (nx * ny) x d
  SomConfig config;
  double initial_metric = 0.0;
  std::vector<IterationRecord> history;

  std::size_t dimension() const noexcept { return weights.cols(); }
};

double weighted_distance(std::span<const double> a, std::span<const double> b, std::span<const double> weights);

/// Reference node of an instance; the lowest index wins ties.
std::size_t find_reference(std::span<const double> x, const SomModel& model);

SomModel batch_train(const Matrix& features, const HexGrid& grid, const SomConfig& cfg);

/// Mean distance of each instance to its reference node.
double convergence_metric(const SomModel& model, const Matrix& features);

struct NodeStats {
  std::size_t node = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t count = 0;
  std::optional<double> mean_output;  // absent for empty nodes
  std::size_t in_range = 0;
  std::vector<double> weights;

  friend bool operator==(const NodeStats&, const NodeStats&) = default;
};

struct NodeStatsTable {
  std::vector<std::string> feature_names;
  std::optional<std::pair<double, double>> range;
  std::vector<NodeStats> nodes;
  std::size_t nx = 0;
  std::size_t ny = 0;

  friend bool operator==(const NodeStatsTable&, const NodeStatsTable&) = default;
};

/// `features` are the (scaled) inputs the model was trained on, row-aligned with ds.
NodeStatsTable node_stats(const SomModel& model, const Matrix& features, const Dataset& ds,
                          std::optional<std::pair<double, double>> range = std::nullopt);

/// Min-max scaling of every column to [0, 1] with the dataset domain.
Matrix scale_for_som(const Dataset& ds);

/// Mean distance between weight vectors of adjacent nodes, restricted to `dims`.
double adjacent_discontinuity(const SomModel& model, std::span<const std::size_t> dims);

}  // namespace surrogate::som
