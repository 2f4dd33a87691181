#pragma once

// Inverse-problem workflow: dataset I/O, dense prediction sweeps, target-range
// filtering and static plot exports (SVG, each with a lossless CSV companion).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surrogate/blockgp.hpp"
#include "surrogate/dataset.hpp"
#include "surrogate/design.hpp"
#include "surrogate/gp.hpp"
#include "surrogate/som.hpp"

namespace surrogate::explore {

struct DatasetSchema {
  /// Input columns in order; empty means every column except the output.
  std::vector<std::string> inputs;
  /// Output column; empty means the last column.
  std::string output;
  /// Per-input scaling range overriding the observed min/max.
  std::map<std::string, FeatureRange> domain;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based file line of each row
};

/// Comma-separated, header row first, blank lines skipped.
CsvTable read_csv(const std::string& path);

/// Throws ParseError (with line), MissingColumn or NonFiniteValue.
Dataset load_dataset(const std::string& path, const DatasetSchema& schema = {});

/// Inputs then output, 17 significant digits so a reload is exact.
void write_dataset(const Dataset& ds, const std::string& path);

/// Stand-in forward model for melt-pool depth.
///
///   depth [um] = 1e3 * 1e-4 * eta * P / (sqrt(v) * sqrt(sigma_b))
///
/// with P in W, v in mm/s, sigma_b the beam size in metres (the argument is
/// in micrometres and converted) and the 1e-4 form evaluating to millimetres.
/// Linear in P and eta, proportional to v^-1/2 and sigma_b^-1/2.
double synthetic_forward(double power, double speed, double beam_size_um, double absorptivity);
double synthetic_forward(std::span<const double> x);

/// N points over the Eagar-Tsai box with synthetic_forward outputs plus
/// Gaussian noise of standard deviation `noise` (micrometres).
Dataset synthetic_dataset(std::size_t n, std::uint64_t seed, double noise,
                          design::SampleMethod method = design::SampleMethod::best_candidate);

using Predictor = std::function<double(std::span<const double>)>;
Predictor predictor(const gp::GpModel& m);
Predictor predictor(const blockgp::BlockGpModel& m);

/// Best-candidate points over `dom` with predicted outputs attached.
Dataset dense_sweep(const Predictor& model, const design::Domain& dom, std::size_t n, std::uint64_t seed,
                    const std::string& output_name = "y", std::size_t k = design::kDefaultCandidates);

struct SolutionSet {
  Dataset data;
  std::vector<std::size_t> source_rows;
  double target = 0.0;
  double delta = 0.0;
  std::string provenance;
};

/// Rows whose output lies in the closed interval [target - delta, target + delta], in order.
SolutionSet filter_solution(const Dataset& ds, double target, double delta, std::string provenance = {});

struct ParallelCoordinates {
  std::vector<std::string> axes;  // ordered inputs, then the output
  Matrix scaled;                  // one row per instance, values in [0, 1]
};

/// Per-axis min-max scaling of the data; constant axes sit at 0.5.
ParallelCoordinates parallel_coordinates(const Dataset& ds, std::span<const std::size_t> axis_order);

/// Writes the SVG to `svg_path` and the scaled coordinates to the companion CSV.
ParallelCoordinates parallel_coords_export(const Dataset& ds, std::span<const std::size_t> axis_order,
                                           const std::string& svg_path);

/// `<stem>.csv` next to an SVG path.
std::string companion_path(const std::string& svg_path);

enum class HeatmapQuantity { weight, count, mean, in_range };

struct HeatmapSelector {
  HeatmapQuantity quantity = HeatmapQuantity::count;
  std::size_t dim = 0;  // for weight

  /// "weight:<name|index>", "count", "mean" or "inrange".
  static HeatmapSelector parse(const std::string& text, std::span<const std::string> feature_names);
};

/// Value shown for a node; absent renders as "no data".
std::optional<double> heatmap_value(const som::NodeStats& node, const HeatmapSelector& sel);

void write_node_stats_csv(const som::NodeStatsTable& table, const std::string& path);
som::NodeStatsTable read_node_stats_csv(const std::string& path);

/// Hexagon-cell SVG colored by the selected quantity; the companion CSV is the
/// full node statistics table.
void som_heatmap_export(const som::NodeStatsTable& table, const HeatmapSelector& sel, const std::string& svg_path);

/// Per-dimension SOM distance weights 1 / lambda_m from fitted hyperparameters.
std::vector<double> inverse_length_scale_weights(const gp::Hyperparameters& hp);

}  // namespace surrogate::explore
