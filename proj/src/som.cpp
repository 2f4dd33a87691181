#include "surrogate/som.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "surrogate/design.hpp"
#include "surrogate/errors.hpp"
#include "surrogate/gp.hpp"

namespace surrogate::som {

namespace {
constexpr double kRowPitch = 0.86602540378443864676;  // sqrt(3) / 2
constexpr double kAdjacentTol = 1e-9;
}  // namespace

HexGrid HexGrid::make(std::size_t nx, std::size_t ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("SOM grid needs at least one node per direction");
  HexGrid g;
  g.nx = nx;
  g.ny = ny;
  g.coords = Matrix(nx * ny, 2);
  for (std::size_t r = 0; r < ny; ++r) {
    for (std::size_t c = 0; c < nx; ++c) {
      const std::size_t i = r * nx + c;
      g.coords(i, 0) = static_cast<double>(c) + 0.5 * static_cast<double>(r % 2);
      g.coords(i, 1) = static_cast<double>(r) * kRowPitch;
    }
  }
  return g;
}

double HexGrid::distance(std::size_t a, std::size_t b) const {
  const double dx = coords(a, 0) - coords(b, 0);
  const double dy = coords(a, 1) - coords(b, 1);
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<std::size_t> HexGrid::adjacent(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j) {
    if (j != node && std::abs(distance(node, j) - 1.0) < kAdjacentTol) out.push_back(j);
  }
  return out;
}

void SomConfig::validate() const {
  if (!(r_max >= r_min && r_min >= 0.0)) throw std::invalid_argument("SOM radii need r_max >= r_min >= 0");
  if (r_iter < 1 || iter_max < r_iter) throw std::invalid_argument("SOM iterations need iter_max >= r_iter >= 1");
  for (double w : dist_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("SOM distance weights must be finite and >= 0");
  }
}

double SomConfig::radius_at(std::size_t t) const {
  return std::max(r_min, r_max - static_cast<double>(t) * radius_delta());
}

double weighted_distance(std::span<const double> a, std::span<const double> b, std::span<const double> weights) {
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double w = weights.empty() ? 1.0 : weights[m];
    const double t = w * (a[m] - b[m]);
    s += t * t;
  }
  return std::sqrt(s);
}

namespace {

double weighted_sq(std::span<const double> a, std::span<const double> b, std::span<const double> weights) {
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double w = weights.empty() ? 1.0 : weights[m];
    const double t = w * (a[m] - b[m]);
    s += t * t;
  }
  return s;
}

}  // namespace

std::size_t find_reference(std::span<const double> x, const SomModel& model) {
  if (x.size() != model.dimension()) throw DimensionMismatch("instance dimension", model.dimension(), x.size());
  const auto& w = model.config.dist_weights;
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < model.weights.rows(); ++i) {
    const double d = weighted_sq(x, model.weights.row(i), w);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double convergence_metric(const SomModel& model, const Matrix& features) {
  if (features.rows() == 0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto x = features.row(i);
    s += weighted_distance(x, model.weights.row(find_reference(x, model)), model.config.dist_weights);
  }
  return s / static_cast<double>(features.rows());
}

SomModel batch_train(const Matrix& features, const HexGrid& grid, const SomConfig& cfg) {
  cfg.validate();
  const std::size_t n = features.rows();
  const std::size_t d = features.cols();
  if (n < 1) throw DataError("SOM training needs at least one instance");
  if (!cfg.dist_weights.empty() && cfg.dist_weights.size() != d) {
    throw DimensionMismatch("SOM distance weight count", d, cfg.dist_weights.size());
  }
  const std::size_t nodes = grid.size();

  SomModel model;
  model.grid = grid;
  model.config = cfg;
  model.weights = Matrix(nodes, d);

  const auto ranges = observed_ranges(features);
  design::Rng rng(cfg.seed);
  for (std::size_t i = 0; i < nodes; ++i)
    for (std::size_t m = 0; m < d; ++m)
      model.weights(i, m) = ranges[m].min + design::uniform01(rng) * (ranges[m].max - ranges[m].min);
  std::vector<std::size_t> ref(n);
  // Reference nodes for the current weights; the mean distance that falls out
  // is the convergence metric of those weights.
  auto assign = [&] {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = features.row(i);
      ref[i] = find_reference(x, model);
      total += weighted_distance(x, model.weights.row(ref[i]), cfg.dist_weights);
    }
    return total / static_cast<double>(n);
  };
  model.initial_metric = assign();

  // Grid distances never change; only the radius threshold does.
  Matrix grid_dist(nodes, nodes);
  for (std::size_t a = 0; a < nodes; ++a)
    for (std::size_t b = 0; b < nodes; ++b) grid_dist(a, b) = grid.distance(a, b);

  Matrix ref_sum(nodes, d);
  std::vector<std::size_t> ref_count(nodes);

  for (std::size_t t = 0; t < cfg.iter_max; ++t) {
    const double radius = cfg.radius_at(t);

    // (i) reference nodes (from assign()), aggregated per node
    std::fill(ref_count.begin(), ref_count.end(), 0);
    ref_sum = Matrix(nodes, d);
    for (std::size_t i = 0; i < n; ++i) {
      ++ref_count[ref[i]];
      auto acc = ref_sum.row(ref[i]);
      auto x = features.row(i);
      for (std::size_t m = 0; m < d; ++m) acc[m] += x[m];
    }

    // (ii)+(iii) each node takes the plain mean of every instance whose
    // reference node lies within the radius; empty lists keep their weight
    Matrix next = model.weights;
    std::vector<double> sum(d);
    for (std::size_t j = 0; j < nodes; ++j) {
      std::fill(sum.begin(), sum.end(), 0.0);
      std::size_t count = 0;
      for (std::size_t c = 0; c < nodes; ++c) {
        if (ref_count[c] == 0 || grid_dist(j, c) > radius + kAdjacentTol) continue;
        count += ref_count[c];
        auto s = ref_sum.row(c);
        for (std::size_t m = 0; m < d; ++m) sum[m] += s[m];
      }
      if (count == 0) continue;
      for (std::size_t m = 0; m < d; ++m) next(j, m) = sum[m] / static_cast<double>(count);
    }
    model.weights = std::move(next);
    model.history.push_back({radius, assign()});
  }
  return model;
}

NodeStatsTable node_stats(const SomModel& model, const Matrix& features, const Dataset& ds,
                          std::optional<std::pair<double, double>> range) {
  if (features.rows() != ds.size()) throw DimensionMismatch("feature rows", ds.size(), features.rows());
  NodeStatsTable table;
  table.feature_names = ds.feature_names;
  table.range = range;
  table.nx = model.grid.nx;
  table.ny = model.grid.ny;
  std::vector<double> sums(model.grid.size(), 0.0);
  table.nodes.resize(model.grid.size());
  for (std::size_t j = 0; j < model.grid.size(); ++j) {
    auto& s = table.nodes[j];
    s.node = j;
    s.row = model.grid.row_of(j);
    s.col = model.grid.col_of(j);
    auto w = model.weights.row(j);
    s.weights.assign(w.begin(), w.end());
  }
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const std::size_t c = find_reference(features.row(i), model);
    auto& s = table.nodes[c];
    ++s.count;
    sums[c] += ds.outputs[i];
    if (range && ds.outputs[i] >= range->first && ds.outputs[i] <= range->second) ++s.in_range;
  }
  for (std::size_t j = 0; j < table.nodes.size(); ++j) {
    if (table.nodes[j].count > 0) table.nodes[j].mean_output = sums[j] / static_cast<double>(table.nodes[j].count);
  }
  return table;
}

Matrix scale_for_som(const Dataset& ds) { return gp::scale_features(ds); }

double adjacent_discontinuity(const SomModel& model, std::span<const std::size_t> dims) {
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < model.grid.size(); ++a) {
    for (std::size_t b : model.grid.adjacent(a)) {
      if (b < a) continue;
      double s = 0.0;
      for (std::size_t m : dims) {
        const double t = model.weights(a, m) - model.weights(b, m);
        s += t * t;
      }
      total += std::sqrt(s);
      ++pairs;
    }
  }
  return pairs ? total / static_cast<double>(pairs) : 0.0;
}

}  // namespace surrogate::som
