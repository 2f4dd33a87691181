#include "surrogate/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "surrogate/errors.hpp"

namespace surrogate::design {

std::vector<std::string> Domain::names() const {
  std::vector<std::string> out;
  for (const auto& d : dims) out.push_back(d.name);
  return out;
}

void Domain::validate() const {
  if (dims.empty()) throw std::invalid_argument("domain has no dimensions");
  for (const auto& d : dims) {
    if (!(d.min < d.max)) throw std::invalid_argument("domain '" + d.name + "' needs min < max");
    if (d.levels && *d.levels < 1) throw std::invalid_argument("domain '" + d.name + "' needs levels >= 1");
  }
}

bool Domain::contains(std::span<const double> x) const {
  if (x.size() != dims.size()) return false;
  for (std::size_t m = 0; m < x.size(); ++m) {
    if (x[m] < dims[m].min || x[m] > dims[m].max) return false;
  }
  return true;
}

Domain Domain::eagar_tsai_table() {
  return Domain{{{"power", 50.0, 400.0, 7},
                 {"speed", 50.0, 2250.0, 10},
                 {"beam_size", 50.0, 68.0, 3},
                 {"absorptivity", 0.3, 0.5, 2}}};
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SampleSet stratified_sample(const Domain& dom, std::uint64_t seed) {
  dom.validate();
  const std::size_t d = dom.dimension();
  std::size_t cells = 1;
  for (const auto& dim : dom.dims) {
    if (!dim.levels) throw std::invalid_argument("stratified sampling needs levels on '" + dim.name + "'");
    cells *= *dim.levels;
  }

  Rng rng(seed);
  SampleSet out{Matrix(cells, d), seed, SampleMethod::stratified};
  std::vector<std::size_t> cell(d, 0);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t m = 0; m < d; ++m) {
      const auto& dim = dom.dims[m];
      const double width = (dim.max - dim.min) / static_cast<double>(*dim.levels);
      double v = dim.min + (static_cast<double>(cell[m]) + uniform01(rng)) * width;
      // Rounding can push the draw onto the next cell's lower edge.
      const double hi = cell[m] + 1 == *dim.levels ? dim.max : dim.min + (cell[m] + 1) * width;
      if (v >= hi && cell[m] + 1 < *dim.levels) v = std::nextafter(hi, dim.min);
      out.points(c, m) = v;
    }
    for (std::size_t m = d; m-- > 0;) {
      if (++cell[m] < *dom.dims[m].levels) break;
      cell[m] = 0;
    }
  }
  return out;
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double t = a[m] - b[m];
    s += t * t;
  }
  return s;
}

std::vector<double> to_unit(std::span<const double> x, const Domain& dom) {
  std::vector<double> u(x.size());
  for (std::size_t m = 0; m < x.size(); ++m)
    u[m] = (x[m] - dom.dims[m].min) / (dom.dims[m].max - dom.dims[m].min);
  return u;
}

}  // namespace

std::size_t select_best_candidate(const Matrix& candidates, const Matrix& accepted) {
  if (candidates.empty()) throw std::invalid_argument("no candidates to choose from");
  std::size_t best = 0;
  double best_d = -1.0;
  for (std::size_t c = 0; c < candidates.rows(); ++c) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < accepted.rows() && dmin > best_d; ++a)
      dmin = std::min(dmin, sq_dist(candidates.row(c), accepted.row(a)));
    if (dmin > best_d) {
      best_d = dmin;
      best = c;
    }
  }
  return best;
}

SampleSet best_candidate_sample(const Domain& dom, std::size_t n, std::size_t k, std::uint64_t seed,
                                const SampleSet* existing) {
  dom.validate();
  if (n < 1) throw std::invalid_argument("best-candidate sampling needs n >= 1");
  if (k < 1) throw std::invalid_argument("best-candidate sampling needs k >= 1");
  const std::size_t d = dom.dimension();

  Matrix accepted(0, d);
  if (existing) {
    if (existing->points.cols() != d) throw DimensionMismatch("existing sample dimension", d, existing->points.cols());
    for (std::size_t i = 0; i < existing->points.rows(); ++i) accepted.append_row(to_unit(existing->points.row(i), dom));
  }

  Rng rng(seed);
  Matrix candidates(k, d);
  for (std::size_t i = 0; i < n; ++i) {
    if (accepted.empty()) {
      std::vector<double> u(d);
      for (auto& v : u) v = uniform01(rng);
      accepted.append_row(u);
      continue;
    }
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t m = 0; m < d; ++m) candidates(c, m) = uniform01(rng);
    accepted.append_row(candidates.row(select_best_candidate(candidates, accepted)));
  }

  const std::size_t skip = accepted.rows() - n;
  SampleSet out{Matrix(n, d), seed, SampleMethod::best_candidate};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < d; ++m) {
      const auto& dim = dom.dims[m];
      out.points(i, m) = dim.min + accepted(skip + i, m) * (dim.max - dim.min);
    }
  }
  return out;
}

SampleSet hyperparam_candidates(const Domain& space, std::size_t r, std::uint64_t seed, std::size_t k) {
  space.validate();
  if (space.dimension() < 3) throw std::invalid_argument("hyperparameter space needs sigma_f, sigma_n and >= 1 length scale");
  Domain sampled = space;
  for (std::size_t m = 0; m < 2; ++m) {
    auto& dim = sampled.dims[m];
    if (!(dim.min > 0.0)) throw std::invalid_argument("log-sampled bound of '" + dim.name + "' must be positive");
    dim.min = std::log10(dim.min);
    dim.max = std::log10(dim.max);
  }
  auto out = best_candidate_sample(sampled, r, k, seed);
  for (std::size_t i = 0; i < out.points.rows(); ++i) {
    for (std::size_t m = 0; m < 2; ++m) {
      // Clamp away pow() rounding at the box edges.
      out.points(i, m) = std::clamp(std::pow(10.0, out.points(i, m)), space.dims[m].min, space.dims[m].max);
    }
  }
  return out;
}

Matrix uniform_sample(const Domain& dom, std::size_t n, Rng& rng) {
  Matrix out(n, dom.dimension());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < dom.dimension(); ++m) {
      const auto& dim = dom.dims[m];
      out(i, m) = dim.min + uniform01(rng) * (dim.max - dim.min);
    }
  }
  return out;
}

double min_pairwise_distance(const Matrix& points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.rows(); ++i)
    for (std::size_t j = i + 1; j < points.rows(); ++j) best = std::min(best, sq_dist(points.row(i), points.row(j)));
  return std::sqrt(best);
}

}  // namespace surrogate::design
