#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "surrogate/matrix.hpp"

namespace surrogate {

struct FeatureRange {
  double min = 0.0;
  double max = 1.0;

  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

/// N instances of d named input features and one scalar output.
///
/// `domain` holds the per-feature range used for scaling; subsets inherit it
/// from their parent so a sub-model sees exactly the same scaled coordinates.
struct Dataset {
  std::vector<std::string> feature_names;
  std::string output_name = "y";
  Matrix features;
  std::vector<double> outputs;
  std::vector<FeatureRange> domain;

  std::size_t size() const noexcept { return features.rows(); }
  std::size_t dimension() const noexcept { return features.cols(); }

  /// Builds a dataset whose domain is the observed per-column min/max.
  static Dataset from_columns(Matrix features, std::vector<double> outputs,
                              std::vector<std::string> names = {}, std::string output_name = "y");

  /// Rows in the given order; keeps names and domain.
  Dataset subset(std::span<const std::size_t> indices) const;

  /// Checks shapes, finiteness and the domain length. Throws DataError.
  void validate() const;
};

std::vector<FeatureRange> observed_ranges(const Matrix& features);

double mean(std::span<const double> values);
/// Sample standard deviation (N - 1 denominator); 0 for fewer than two values.
double standard_deviation(std::span<const double> values);

}  // namespace surrogate
