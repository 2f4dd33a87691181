#include "surrogate/explore.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "surrogate/errors.hpp"

namespace surrogate::explore {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

// Parses one numeric cell; "nan"/"inf" are non-finite, anything else unparsable is a parse error.
double parse_cell(const std::string& cell, std::size_t line, const std::string& column) {
  if (cell.empty()) throw ParseError(line, "empty cell in column '" + column + "'");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) {
    throw ParseError(line, "cannot parse '" + cell + "' in column '" + column + "'");
  }
  if (!std::isfinite(v)) throw NonFiniteValue(line, column);
  return v;
}

std::size_t parse_count(const std::string& cell, std::size_t line, const std::string& column) {
  const double v = parse_cell(cell, line, column);
  if (v < 0 || v != std::floor(v)) throw ParseError(line, "expected a count in column '" + column + "'");
  return static_cast<std::size_t>(v);
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw MissingColumn(name);
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      std::set<std::string> seen;
      for (const auto& h : t.header) {
        if (h.empty()) throw ParseError(line_no, "empty column name");
        if (!seen.insert(h).second) throw ParseError(line_no, "duplicate column '" + h + "'");
      }
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(t.header.size()) + " cells, got " +
                                    std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.line_numbers.push_back(line_no);
  }
  if (!have_header) throw ParseError(line_no, "missing header row");
  return t;
}

Dataset load_dataset(const std::string& path, const DatasetSchema& schema) {
  const CsvTable t = read_csv(path);
  const std::string output = schema.output.empty() ? t.header.back() : schema.output;
  const std::size_t out_col = column_index(t.header, output);

  std::vector<std::string> inputs = schema.inputs;
  if (inputs.empty()) {
    for (const auto& h : t.header)
      if (h != output) inputs.push_back(h);
  }
  std::set<std::string> unique(inputs.begin(), inputs.end());
  if (unique.size() != inputs.size()) throw DataError("duplicate input column in schema");
  if (unique.count(output)) throw DataError("column '" + output + "' is both input and output");
  if (inputs.empty()) throw DataError("no input columns");

  std::vector<std::size_t> cols;
  for (const auto& name : inputs) cols.push_back(column_index(t.header, name));

  Matrix x(t.rows.size(), cols.size());
  std::vector<double> y(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::size_t line = t.line_numbers[r];
    for (std::size_t c = 0; c < cols.size(); ++c) x(r, c) = parse_cell(t.rows[r][cols[c]], line, inputs[c]);
    y[r] = parse_cell(t.rows[r][out_col], line, output);
  }
  if (t.rows.empty()) throw DataError(path + " has no data rows");

  Dataset ds = Dataset::from_columns(std::move(x), std::move(y), inputs, output);
  for (const auto& [name, range] : schema.domain) {
    const auto it = std::find(inputs.begin(), inputs.end(), name);
    if (it == inputs.end()) throw MissingColumn(name);
    if (!(range.min <= range.max)) throw DataError("domain override for '" + name + "' has min > max");
    ds.domain[static_cast<std::size_t>(it - inputs.begin())] = range;
  }
  return ds;
}

void write_dataset(const Dataset& ds, const std::string& path) {
  auto out = open_out(path);
  for (const auto& n : ds.feature_names) out << n << ',';
  out << ds.output_name << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.features.row(i)) out << fmt(v) << ',';
    out << fmt(ds.outputs[i]) << '\n';
  }
}

double synthetic_forward(double power, double speed, double beam_size_um, double absorptivity) {
  const double sigma_b = beam_size_um * 1e-6;
  const double depth_mm = 1e-4 * absorptivity * power / (std::sqrt(speed) * std::sqrt(sigma_b));
  return 1e3 * depth_mm;
}

double synthetic_forward(std::span<const double> x) {
  if (x.size() != 4) throw DimensionMismatch("synthetic_forward inputs", 4, x.size());
  return synthetic_forward(x[0], x[1], x[2], x[3]);
}

Dataset synthetic_dataset(std::size_t n, std::uint64_t seed, double noise, design::SampleMethod method) {
  const auto dom = design::Domain::eagar_tsai_table();
  Matrix x;
  if (method == design::SampleMethod::stratified) {
    x = design::stratified_sample(dom, seed).points;
    if (n < x.rows()) {
      std::vector<std::size_t> keep(n);
      for (std::size_t i = 0; i < n; ++i) keep[i] = i;
      x = x.select_rows(keep);
    }
  } else {
    x = design::best_candidate_sample(dom, n, design::kDefaultCandidates, seed).points;
  }
  design::Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  // Box-Muller on uniform01 keeps the noise identical across standard libraries
  auto gauss = [&rng] {
    const double u1 = 1.0 - design::uniform01(rng);
    const double u2 = design::uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  std::vector<double> y(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    y[i] = synthetic_forward(x.row(i));
    if (noise > 0.0) y[i] += noise * gauss();
  }
  Dataset ds = Dataset::from_columns(std::move(x), std::move(y), dom.names(), "depth");
  return ds;
}

Predictor predictor(const gp::GpModel& m) {
  return [&m](std::span<const double> x) { return gp::predict_mean(m, x); };
}

Predictor predictor(const blockgp::BlockGpModel& m) {
  return [&m](std::span<const double> x) {
    const std::size_t b = blockgp::route(m.partition, x);
    return gp::predict_mean(m.blocks.at(b).model, x);
  };
}

Dataset dense_sweep(const Predictor& model, const design::Domain& dom, std::size_t n, std::uint64_t seed,
                    const std::string& output_name, std::size_t k) {
  auto pts = design::best_candidate_sample(dom, n, k, seed).points;
  std::vector<double> y(pts.rows());
  for (std::size_t i = 0; i < pts.rows(); ++i) y[i] = model(pts.row(i));
  Dataset ds = Dataset::from_columns(std::move(pts), std::move(y), dom.names(), output_name);
  for (std::size_t m = 0; m < dom.dimension(); ++m) ds.domain[m] = {dom.dims[m].min, dom.dims[m].max};
  return ds;
}

SolutionSet filter_solution(const Dataset& ds, double target, double delta, std::string provenance) {
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  SolutionSet s;
  s.target = target;
  s.delta = delta;
  s.provenance = std::move(provenance);
  const double lo = target - delta;
  const double hi = target + delta;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.outputs[i] >= lo && ds.outputs[i] <= hi) s.source_rows.push_back(i);
  }
  s.data = ds.subset(s.source_rows);
  return s;
}

ParallelCoordinates parallel_coordinates(const Dataset& ds, std::span<const std::size_t> axis_order) {
  const std::size_t d = ds.dimension();
  if (axis_order.size() != d) throw DimensionMismatch("axis order length", d, axis_order.size());
  std::vector<bool> seen(d, false);
  for (auto a : axis_order) {
    if (a >= d || seen[a]) throw std::invalid_argument("axis order must be a permutation of the inputs");
    seen[a] = true;
  }
  ParallelCoordinates pc;
  for (auto a : axis_order) pc.axes.push_back(ds.feature_names[a]);
  pc.axes.push_back(ds.output_name);

  const auto ranges = observed_ranges(ds.features);
  FeatureRange out_range{0.0, 0.0};
  if (!ds.outputs.empty()) {
    const auto [lo, hi] = std::minmax_element(ds.outputs.begin(), ds.outputs.end());
    out_range = {*lo, *hi};
  }
  pc.scaled = Matrix(ds.size(), d + 1);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      pc.scaled(i, k) = gp::scale_value(ds.features(i, axis_order[k]), ranges[axis_order[k]]);
    }
    pc.scaled(i, d) = gp::scale_value(ds.outputs[i], out_range);
  }
  return pc;
}

std::string companion_path(const std::string& svg_path) {
  const auto slash = svg_path.find_last_of('/');
  const auto dot = svg_path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return svg_path.substr(0, dot) + ".csv";
  }
  return svg_path + ".csv";
}

ParallelCoordinates parallel_coords_export(const Dataset& ds, std::span<const std::size_t> axis_order,
                                           const std::string& svg_path) {
  auto pc = parallel_coordinates(ds, axis_order);
  const std::size_t axes = pc.axes.size();

  {
    auto csv = open_out(companion_path(svg_path));
    csv << "instance";
    for (const auto& a : pc.axes) csv << ',' << a;
    csv << '\n';
    for (std::size_t i = 0; i < pc.scaled.rows(); ++i) {
      csv << i;
      for (double v : pc.scaled.row(i)) csv << ',' << fmt(v);
      csv << '\n';
    }
  }

  const double left = 60, top = 40, height = 400, spacing = 160;
  const double width = left * 2 + spacing * static_cast<double>(axes - 1);
  auto x_of = [&](std::size_t k) { return left + spacing * static_cast<double>(k); };
  auto y_of = [&](double v) { return top + height * (1.0 - v); };

  auto svg = open_out(svg_path);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << (height + 2 * top + 20)
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g fill=\"none\" stroke=\"#1f77b4\" "
         "stroke-opacity=\"0.35\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < pc.scaled.rows(); ++i) {
    svg << "<polyline points=\"";
    for (std::size_t k = 0; k < axes; ++k) {
      if (k) svg << ' ';
      svg << x_of(k) << ',' << y_of(pc.scaled(i, k));
    }
    svg << "\"/>\n";
  }
  svg << "</g>\n<g stroke=\"black\" stroke-width=\"1.5\">\n";
  for (std::size_t k = 0; k < axes; ++k) {
    svg << "<line x1=\"" << x_of(k) << "\" y1=\"" << top << "\" x2=\"" << x_of(k) << "\" y2=\"" << top + height
        << "\"/>\n";
  }
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">\n";
  for (std::size_t k = 0; k < axes; ++k) {
    svg << "<text x=\"" << x_of(k) << "\" y=\"" << top + height + 24 << "\">" << pc.axes[k] << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return pc;
}

HeatmapSelector HeatmapSelector::parse(const std::string& text, std::span<const std::string> feature_names) {
  HeatmapSelector s;
  if (text == "count") {
    s.quantity = HeatmapQuantity::count;
  } else if (text == "mean") {
    s.quantity = HeatmapQuantity::mean;
  } else if (text == "inrange") {
    s.quantity = HeatmapQuantity::in_range;
  } else if (text.rfind("weight:", 0) == 0) {
    s.quantity = HeatmapQuantity::weight;
    const std::string key = text.substr(7);
    const auto it = std::find(feature_names.begin(), feature_names.end(), key);
    if (it != feature_names.end()) {
      s.dim = static_cast<std::size_t>(it - feature_names.begin());
    } else {
      char* end = nullptr;
      const unsigned long v = std::strtoul(key.c_str(), &end, 10);
      if (key.empty() || *end != '\0' || v >= feature_names.size()) {
        throw std::invalid_argument("unknown weight dimension '" + key + "'");
      }
      s.dim = v;
    }
  } else {
    throw std::invalid_argument("quantity must be weight:<dim>, count, mean or inrange");
  }
  return s;
}

std::optional<double> heatmap_value(const som::NodeStats& node, const HeatmapSelector& sel) {
  switch (sel.quantity) {
    case HeatmapQuantity::weight:
      if (sel.dim >= node.weights.size()) throw DimensionMismatch("weight dimension", node.weights.size(), sel.dim);
      return node.weights[sel.dim];
    case HeatmapQuantity::count:
      if (node.count == 0) return std::nullopt;
      return static_cast<double>(node.count);
    case HeatmapQuantity::mean:
      return node.mean_output;
    case HeatmapQuantity::in_range:
      if (node.count == 0) return std::nullopt;
      return static_cast<double>(node.in_range);
  }
  return std::nullopt;
}

void write_node_stats_csv(const som::NodeStatsTable& table, const std::string& path) {
  auto out = open_out(path);
  out << "node,row,col,count,mean_output,in_range,range_min,range_max";
  for (const auto& n : table.feature_names) out << ",w_" << n;
  out << '\n';
  for (const auto& s : table.nodes) {
    out << s.node << ',' << s.row << ',' << s.col << ',' << s.count << ','
        << (s.mean_output ? fmt(*s.mean_output) : std::string{}) << ',' << s.in_range << ',';
    if (table.range) out << fmt(table.range->first) << ',' << fmt(table.range->second);
    else out << ',';
    for (double w : s.weights) out << ',' << fmt(w);
    out << '\n';
  }
}

som::NodeStatsTable read_node_stats_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  static const char* fixed[] = {"node", "row", "col", "count", "mean_output", "in_range", "range_min", "range_max"};
  for (std::size_t c = 0; c < 8; ++c) {
    if (c >= t.header.size() || t.header[c] != fixed[c]) throw MissingColumn(fixed[c]);
  }
  som::NodeStatsTable table;
  for (std::size_t c = 8; c < t.header.size(); ++c) {
    if (t.header[c].rfind("w_", 0) != 0) throw ParseError(1, "weight columns must start with w_");
    table.feature_names.push_back(t.header[c].substr(2));
  }
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& cells = t.rows[r];
    const std::size_t line = t.line_numbers[r];
    som::NodeStats s;
    s.node = parse_count(cells[0], line, "node");
    s.row = parse_count(cells[1], line, "row");
    s.col = parse_count(cells[2], line, "col");
    s.count = parse_count(cells[3], line, "count");
    if (!cells[4].empty()) s.mean_output = parse_cell(cells[4], line, "mean_output");
    s.in_range = parse_count(cells[5], line, "in_range");
    if (!cells[6].empty() || !cells[7].empty()) {
      std::pair<double, double> range{parse_cell(cells[6], line, "range_min"), parse_cell(cells[7], line, "range_max")};
      if (table.range && *table.range != range) throw ParseError(line, "range differs between rows");
      table.range = range;
    }
    for (std::size_t c = 8; c < cells.size(); ++c) s.weights.push_back(parse_cell(cells[c], line, t.header[c]));
    table.nx = std::max(table.nx, s.col + 1);
    table.ny = std::max(table.ny, s.row + 1);
    table.nodes.push_back(std::move(s));
  }
  return table;
}

namespace {

// Linear ramp from dark blue (low) to dark red (high).
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int lo[3] = {49, 54, 149};
  const int hi[3] = {165, 0, 38};
  char buf[16];
  int c[3];
  for (int k = 0; k < 3; ++k) c[k] = static_cast<int>(std::lround(lo[k] + t * (hi[k] - lo[k])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

constexpr const char* kNoDataFill = "#d9d9d9";

std::string quantity_label(const som::NodeStatsTable& table, const HeatmapSelector& sel) {
  switch (sel.quantity) {
    case HeatmapQuantity::weight:
      return "weight " + (sel.dim < table.feature_names.size() ? table.feature_names[sel.dim] : std::to_string(sel.dim));
    case HeatmapQuantity::count:
      return "instances per node";
    case HeatmapQuantity::mean:
      return "mean output";
    case HeatmapQuantity::in_range:
      return "instances in range";
  }
  return {};
}

}  // namespace

void som_heatmap_export(const som::NodeStatsTable& table, const HeatmapSelector& sel, const std::string& svg_path) {
  write_node_stats_csv(table, companion_path(svg_path));

  std::vector<std::optional<double>> values;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : table.nodes) {
    values.push_back(heatmap_value(s, sel));
    if (values.back()) {
      lo = std::min(lo, *values.back());
      hi = std::max(hi, *values.back());
    }
  }
  const bool any = lo <= hi;

  const double scale = 24.0;                  // pixels per unit grid distance
  const double radius = scale / std::sqrt(3.0);  // circumradius so neighbors touch
  const double margin = 30.0;
  const double map_w = (static_cast<double>(table.nx) + 0.5) * scale;
  const double map_h = (static_cast<double>(table.ny) - 1.0) * scale * std::sqrt(3.0) / 2.0 + 2.0 * radius;
  const double legend_x = margin + map_w + 30.0;
  const double width = legend_x + 120.0;
  const double height = std::max(map_h, 220.0) + 2.0 * margin + 20.0;

  auto svg = open_out(svg_path);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g stroke=\"white\" stroke-width=\"0.8\">\n";
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    const auto& s = table.nodes[i];
    const double cx = margin + scale * (static_cast<double>(s.col) + 0.5 * static_cast<double>(s.row % 2) + 0.5);
    const double cy = margin + radius + scale * std::sqrt(3.0) / 2.0 * static_cast<double>(s.row);
    const std::string fill = !values[i] ? kNoDataFill : ramp(hi > lo ? (*values[i] - lo) / (hi - lo) : 0.5);
    svg << "<polygon fill=\"" << fill << "\" points=\"";
    for (int k = 0; k < 6; ++k) {
      const double a = std::numbers::pi / 2.0 + std::numbers::pi / 3.0 * k;
      if (k) svg << ' ';
      svg << cx + radius * std::cos(a) << ',' << cy + radius * std::sin(a);
    }
    svg << "\"><title>node " << s.node << ": " << (values[i] ? fmt_short(*values[i]) : "no data")
        << "</title></polygon>\n";
  }
  svg << "</g>\n";

  // legend: vertical gradient, min/max labels and the no-data swatch
  svg << "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
      << "<stop offset=\"0\" stop-color=\"" << ramp(0.0) << "\"/><stop offset=\"1\" stop-color=\"" << ramp(1.0)
      << "\"/></linearGradient></defs>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<text x=\"" << legend_x << "\" y=\"" << margin - 10 << "\">" << quantity_label(table, sel) << "</text>\n"
      << "<rect x=\"" << legend_x << "\" y=\"" << margin << "\" width=\"20\" height=\"150\" fill=\"url(#ramp)\"/>\n";
  if (any) {
    svg << "<text x=\"" << legend_x + 26 << "\" y=\"" << margin + 10 << "\">" << fmt_short(hi) << "</text>\n"
        << "<text x=\"" << legend_x + 26 << "\" y=\"" << margin + 150 << "\">" << fmt_short(lo) << "</text>\n";
  }
  svg << "<rect x=\"" << legend_x << "\" y=\"" << margin + 170 << "\" width=\"20\" height=\"14\" fill=\"" << kNoDataFill
      << "\"/>\n<text x=\"" << legend_x + 26 << "\" y=\"" << margin + 182 << "\">no data</text>\n</g>\n</svg>\n";
}

std::vector<double> inverse_length_scale_weights(const gp::Hyperparameters& hp) {
  std::vector<double> w;
  for (double l : hp.length_scales) w.push_back(1.0 / l);
  return w;
}

}  // namespace surrogate::explore
