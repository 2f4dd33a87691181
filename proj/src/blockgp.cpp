#include "surrogate/blockgp.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace surrogate::blockgp {

std::size_t BlockSpec::block_count() const noexcept {
  std::size_t b = 1;
  for (auto c : counts) b *= c;
  return b;
}

void BlockSpec::validate(std::size_t dimension) const {
  if (dims.empty() || dims.size() > 2) throw std::invalid_argument("blocking uses one or two dimensions");
  if (counts.size() != dims.size()) throw DimensionMismatch("block count entries", dims.size(), counts.size());
  for (auto d : dims) {
    if (d >= dimension) throw std::invalid_argument("blocking dimension out of range");
  }
  if (dims.size() == 2 && dims[0] == dims[1]) throw std::invalid_argument("blocking dimensions must differ");
  for (auto c : counts) {
    if (c < 1) throw std::invalid_argument("block counts must be at least 1");
  }
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 0.5)) {
    throw std::invalid_argument("overlap fraction must lie in [0, 0.5)");
  }
}

std::vector<std::size_t> Partition::members(std::size_t block) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == block) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Partition::coordinates(std::size_t block) const {
  std::vector<std::size_t> c(counts.size());
  for (std::size_t s = counts.size(); s-- > 0;) {
    c[s] = block % counts[s];
    block /= counts[s];
  }
  return c;
}

namespace {

std::size_t interval_of(const std::vector<double>& bounds, double v) {
  return static_cast<std::size_t>(std::upper_bound(bounds.begin(), bounds.end(), v) - bounds.begin());
}

std::size_t block_id(const Partition& p, std::span<const double> x) {
  std::size_t id = 0;
  for (std::size_t s = 0; s < p.dims.size(); ++s) id = id * p.counts[s] + interval_of(p.boundaries[s], x[p.dims[s]]);
  return id;
}

// Quantile split values along one column, shifted forward past ties.
std::vector<double> split_values(const std::vector<double>& values, std::size_t count) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });

  std::vector<double> bounds;
  std::size_t prev = 0;
  for (std::size_t i = 1; i < count; ++i) {
    std::size_t cut = i * n / count;
    while (cut < n && cut > 0 && values[order[cut]] == values[order[cut - 1]]) ++cut;
    if (cut <= prev || cut >= n) {
      throw EmptyBlock(i, "tied values swallowed the block's quota");
    }
    bounds.push_back(values[order[cut]]);
    prev = cut;
  }
  return bounds;
}

}  // namespace

Partition partition(const Dataset& ds, const BlockSpec& spec) {
  spec.validate(ds.dimension());
  const std::size_t n = ds.size();
  const std::size_t b = spec.block_count();
  if (n < 2 * b) throw DataError("partition needs at least two instances per block");

  Partition p;
  p.dims = spec.dims;
  p.counts = spec.counts;
  for (std::size_t s = 0; s < spec.dims.size(); ++s) {
    p.boundaries.push_back(split_values(ds.features.column(spec.dims[s]), spec.counts[s]));
  }
  p.assignment.resize(n);
  p.block_sizes.assign(b, 0);
  for (std::size_t i = 0; i < n; ++i) {
    p.assignment[i] = block_id(p, ds.features.row(i));
    ++p.block_sizes[p.assignment[i]];
  }
  for (std::size_t k = 0; k < b; ++k) {
    if (p.block_sizes[k] == 0) throw EmptyBlock(k, "no instances fall in this cell of the split grid");
  }
  return p;
}

std::size_t route(const Partition& p, std::span<const double> x_star) {
  for (std::size_t s = 0; s < p.dims.size(); ++s) {
    if (p.dims[s] >= x_star.size()) throw DimensionMismatch("query dimension", p.dims[s] + 1, x_star.size());
  }
  return block_id(p, x_star);
}

namespace {

std::vector<std::size_t> training_rows(const Dataset& ds, const Partition& p,
                                       const std::vector<std::size_t>& members, double overlap) {
  if (overlap <= 0.0) return members;
  std::vector<double> lo(p.dims.size()), hi(p.dims.size());
  for (std::size_t s = 0; s < p.dims.size(); ++s) {
    lo[s] = hi[s] = ds.features(members.front(), p.dims[s]);
    for (auto i : members) {
      lo[s] = std::min(lo[s], ds.features(i, p.dims[s]));
      hi[s] = std::max(hi[s], ds.features(i, p.dims[s]));
    }
    const double e = overlap * (hi[s] - lo[s]);
    lo[s] -= e;
    hi[s] += e;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    bool inside = true;
    for (std::size_t s = 0; s < p.dims.size() && inside; ++s) {
      const double v = ds.features(i, p.dims[s]);
      inside = v >= lo[s] && v <= hi[s];
    }
    if (inside || std::binary_search(members.begin(), members.end(), i)) out.push_back(i);
  }
  return out;
}

}  // namespace

BlockGpModel fit_blocks(const Dataset& ds, const BlockSpec& spec, const Partition& p,
                        const hyperopt::SearchConfig& search,
                        const std::vector<gp::Hyperparameters>& candidates) {
  if (p.assignment.size() != ds.size()) throw DimensionMismatch("partition size", ds.size(), p.assignment.size());
  BlockGpModel out;
  out.spec = spec;
  out.partition = p;
  out.feature_names = ds.feature_names;

  for (std::size_t b = 0; b < p.block_count(); ++b) {
    BlockResult res;
    res.members = p.members(b);
    if (res.members.size() < 3) throw BlockFailure(b, "needs at least three instances");
    res.training = training_rows(ds, p, res.members, spec.overlap_fraction);

    gp::LooOptions loo;
    if (res.training.size() != res.members.size()) {
      for (std::size_t k = 0; k < res.training.size(); ++k) {
        if (std::binary_search(res.members.begin(), res.members.end(), res.training[k])) loo.eval_indices.push_back(k);
      }
    }

    const Dataset block_ds = ds.subset(res.training);
    try {
      Stopwatch clock;
      auto found = hyperopt::random_search(block_ds, search, candidates, loo);
      res.time = clock.elapsed();
      res.hp = found.best;
      res.loo = found.trace.best_report;
      res.trace = std::move(found.trace);
      auto solver = search.solver;
      solver.accept_unconverged = true;
      res.model = gp::fit(block_ds, res.hp, solver);
    } catch (const BlockFailure&) {
      throw;
    } catch (const Error& e) {
      throw BlockFailure(b, e.what());
    }
    out.total_time += res.time;
    out.blocks.push_back(std::move(res));
  }
  return out;
}

BlockPrediction predict_block(const BlockGpModel& m, std::span<const double> x_star) {
  BlockPrediction out;
  out.block = route(m.partition, x_star);
  const auto& model = m.blocks.at(out.block).model;
  out.mean = gp::predict_mean(model, x_star);
  out.variance = gp::predict_variance(model, x_star);
  return out;
}

SpeedupReport speedup_report(const hyperopt::SearchTrace& full, std::size_t full_size,
                             const BlockGpModel& blocks) {
  SpeedupReport r;
  r.full_time = full.total_time;
  r.full_mae = full.best().mae;
  const std::size_t d = blocks.feature_names.size();
  const auto& p = blocks.partition;

  std::string variable;
  for (std::size_t s = 0; s < p.dims.size(); ++s) {
    if (s) variable += " and ";
    variable += blocks.feature_names.at(p.dims[s]);
  }
  for (std::size_t b = 0; b < blocks.blocks.size(); ++b) {
    const auto& blk = blocks.blocks[b];
    SpeedupRow row;
    row.block_variable = variable;
    row.block_number.assign(d, '0');
    const auto coords = p.coordinates(b);
    for (std::size_t s = 0; s < p.dims.size(); ++s) {
      row.block_number[p.dims[s]] = static_cast<char>('1' + coords[s]);
    }
    row.size = blk.members.size();
    row.time = blk.time.wall;
    row.hp = blk.hp;
    row.mae = blk.trace.best().mae;
    r.rows.push_back(std::move(row));
    r.total_block_time += blk.time.wall;
    r.total_block_cpu_time += blk.time.cpu;
    const double sz = static_cast<double>(blk.training.size());
    r.cubic_ops_blocks += sz * sz * sz;
  }
  const double n = static_cast<double>(full_size);
  const double bcount = static_cast<double>(blocks.blocks.size());
  r.cubic_ops_bound = n * n * n / (bcount * bcount);
  r.speedup = r.total_block_time > 0.0 ? r.full_time / r.total_block_time : 0.0;
  return r;
}

std::string format_table(const SpeedupReport& r) {
  std::ostringstream out;
  const std::size_t d = r.rows.empty() ? 0 : r.rows.front().hp.dimension();
  char buf[64];
  out << "Block variable | Block number | Size | Time (s) | sigma_f | sigma_n";
  for (std::size_t m = 0; m < d; ++m) out << " | l/w_" << (m + 1);
  out << " | MAE (opt)\n";
  for (const auto& row : r.rows) {
    out << row.block_variable << " | " << row.block_number << " | " << row.size << " | ";
    std::snprintf(buf, sizeof buf, "%.3f", row.time);
    out << buf;
    std::snprintf(buf, sizeof buf, " | %.3e | %.3e", row.hp.sigma_f, row.hp.sigma_n);
    out << buf;
    for (double l : row.hp.length_scales) {
      std::snprintf(buf, sizeof buf, " | %.3f", l);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, " | %.3e\n", row.mae);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "%.3f", r.full_time);
  out << "full data time (s): " << buf;
  std::snprintf(buf, sizeof buf, "%.3e", r.full_mae);
  out << ", MAE " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.3f", r.total_block_time);
  out << "total block time (s): " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.2f", r.speedup);
  out << "speedup: " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.4g / %.4g", r.cubic_ops_blocks, r.cubic_ops_bound);
  out << "cubic operation count (blocks / N^3/B^2): " << buf << '\n';
  return out.str();
}

std::vector<double> blocking_spread_scores(const Dataset& ds, std::size_t count) {
  const double total = standard_deviation(ds.outputs);
  std::vector<double> scores;
  for (std::size_t m = 0; m < ds.dimension(); ++m) {
    Partition p;
    try {
      p = partition(ds, BlockSpec{{m}, {count}, 0.0});
    } catch (const DataError&) {
      scores.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    double acc = 0.0;
    for (std::size_t b = 0; b < p.block_count(); ++b) {
      std::vector<double> ys;
      for (auto i : p.members(b)) ys.push_back(ds.outputs[i]);
      acc += standard_deviation(ys);
    }
    const double within = acc / static_cast<double>(p.block_count());
    scores.push_back(total > 0.0 ? within / total : 0.0);
  }
  return scores;
}

}  // namespace surrogate::blockgp
