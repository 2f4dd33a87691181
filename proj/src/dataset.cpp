#include "surrogate/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "surrogate/errors.hpp"

namespace surrogate {

std::vector<FeatureRange> observed_ranges(const Matrix& features) {
  std::vector<FeatureRange> out(features.cols(),
                                {std::numeric_limits<double>::infinity(),
                                 -std::numeric_limits<double>::infinity()});
  for (std::size_t i = 0; i < features.rows(); ++i) {
    for (std::size_t m = 0; m < features.cols(); ++m) {
      out[m].min = std::min(out[m].min, features(i, m));
      out[m].max = std::max(out[m].max, features(i, m));
    }
  }
  return out;
}

Dataset Dataset::from_columns(Matrix features, std::vector<double> outputs,
                              std::vector<std::string> names, std::string output_name) {
  Dataset ds;
  if (names.empty()) {
    for (std::size_t m = 0; m < features.cols(); ++m) names.push_back("x" + std::to_string(m + 1));
  }
  ds.feature_names = std::move(names);
  ds.output_name = std::move(output_name);
  ds.domain = observed_ranges(features);
  ds.features = std::move(features);
  ds.outputs = std::move(outputs);
  ds.validate();
  return ds;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.feature_names = feature_names;
  out.output_name = output_name;
  out.domain = domain;
  out.features = features.select_rows(indices);
  out.outputs.reserve(indices.size());
  for (std::size_t i : indices) out.outputs.push_back(outputs.at(i));
  return out;
}

void Dataset::validate() const {
  if (outputs.size() != features.rows()) {
    throw DimensionMismatch("output count", features.rows(), outputs.size());
  }
  if (feature_names.size() != features.cols()) {
    throw DimensionMismatch("feature name count", features.cols(), feature_names.size());
  }
  if (domain.size() != features.cols()) {
    throw DimensionMismatch("domain length", features.cols(), domain.size());
  }
  for (double v : features.data()) {
    if (!std::isfinite(v)) throw DataError("non-finite feature value");
  }
  for (double v : outputs) {
    if (!std::isfinite(v)) throw DataError("non-finite output value");
  }
  for (std::size_t m = 0; m < domain.size(); ++m) {
    if (domain[m].min > domain[m].max) {
      throw DataError("domain of '" + feature_names[m] + "' has min > max");
    }
  }
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double standard_deviation(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - mu) * (v - mu);
  return std::sqrt(s / static_cast<double>(values.size() - 1));
}

}  // namespace surrogate
