// surrogate: command-line front end for sampling, GP fitting, blocking,
// benchmarking, inverse filtering, SOMs and plot exports.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surrogate/bench.hpp"
#include "surrogate/blockgp.hpp"
#include "surrogate/design.hpp"
#include "surrogate/errors.hpp"
#include "surrogate/explore.hpp"
#include "surrogate/gp.hpp"
#include "surrogate/hyperopt.hpp"
#include "surrogate/serialize.hpp"
#include "surrogate/som.hpp"

using namespace surrogate;
using serialize::json;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumerical = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw std::invalid_argument("bad number for " + what + ": '" + s + "'");
  return v;
}

std::size_t to_count(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v < 0 || v != std::floor(v)) throw std::invalid_argument(what + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

// Seed handling: required when SURROGATE_TEST_MODE is set, 0 otherwise.
struct SeedOption {
  std::optional<std::uint64_t> value;
  void add(CLI::App* app) { app->add_option("--seed", value, "Random seed"); }
  std::uint64_t get() const {
    if (value) return *value;
    const char* mode = std::getenv("SURROGATE_TEST_MODE");
    if (mode && *mode && std::string(mode) != "0") throw std::invalid_argument("--seed is required in test mode");
    return 0;
  }
};

struct DataOptions {
  std::string data;
  std::string schema;
  void add(CLI::App* app) {
    app->add_option("--data", data, "Dataset CSV (header row, output last unless the schema says otherwise)")->required();
    app->add_option("--schema", schema, "Schema JSON: inputs, output, domain overrides");
  }
  Dataset load() const {
    explore::DatasetSchema s;
    if (!schema.empty()) s = serialize::schema_from_json(serialize::load_json(schema));
    return explore::load_dataset(data, s);
  }
};

struct SolverOptions {
  std::string kind = "direct";
  double cg_eps = 1e-8;
  std::size_t cg_maxiter = 1000;
  std::string taper = "none";
  void add(CLI::App* app) {
    app->add_option("--solver", kind, "direct or cg")->check(CLI::IsMember({"direct", "cg"}));
    app->add_option("--cg-eps", cg_eps, "CG residual threshold");
    app->add_option("--cg-maxiter", cg_maxiter, "CG iteration cap");
    app->add_option("--taper", taper, "none or wendland1:theta");
  }
  gp::SolverConfig get() const {
    kernels::TaperSpec t;
    if (taper.rfind("wendland1:", 0) == 0) {
      t = kernels::TaperSpec::wendland1(to_double(taper.substr(10), "taper range"));
    } else if (taper != "none") {
      throw std::invalid_argument("taper must be none or wendland1:theta");
    }
    t.validate();
    gp::SolverConfig cfg = kind == "cg" ? gp::SolverConfig::conjugate_gradient({cg_eps, cg_maxiter}, t)
                                        : gp::SolverConfig::direct(t);
    cfg.cg.validate();
    return cfg;
  }
};

// Hyperparameters from --hp (hyperparameter JSON or GP model JSON) or --default.
struct HpOptions {
  std::string file;
  bool use_default = false;
  void add(CLI::App* app) {
    auto* f = app->add_option("--hp", file, "Hyperparameter JSON or GP model JSON");
    auto* d = app->add_flag("--default", use_default, "Use the default hyperparameters");
    f->excludes(d);
  }
  gp::Hyperparameters get(const Dataset& ds) const {
    if (use_default || file.empty()) return hyperopt::default_hyperparameters(ds);
    const auto doc = serialize::load_json(file);
    if (doc.contains("format")) return serialize::gp_from_json(doc).hyperparameters();
    return serialize::hyperparameters_from_json(doc);
  }
};

design::Domain load_domain(const std::string& path) {
  return path.empty() ? design::Domain::eagar_tsai_table() : serialize::domain_from_json(serialize::load_json(path));
}

design::Domain load_space(const std::string& path, const Dataset& ds) {
  if (path.empty()) return hyperopt::default_space(ds);
  auto dom = serialize::domain_from_json(serialize::load_json(path));
  if (dom.dimension() != ds.dimension() + 2) throw DimensionMismatch("hyperparameter space dimension", ds.dimension() + 2, dom.dimension());
  return dom;
}

std::size_t feature_index(const Dataset& ds, const std::string& name) {
  for (std::size_t m = 0; m < ds.dimension(); ++m)
    if (ds.feature_names[m] == name) return m;
  throw MissingColumn(name);
}

void write_points(const Matrix& points, const std::vector<std::string>& names, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t m = 0; m < names.size(); ++m) out << (m ? "," : "") << names[m];
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < points.rows(); ++i) {
    for (std::size_t m = 0; m < points.cols(); ++m) {
      std::snprintf(buf, sizeof buf, "%.17g", points(i, m));
      out << (m ? "," : "") << buf;
    }
    out << '\n';
  }
}

void print_hp(const gp::Hyperparameters& hp) {
  std::printf("sigma_f %.6g  sigma_n %.6g  lambda", hp.sigma_f, hp.sigma_n);
  for (double l : hp.length_scales) std::printf(" %.4g", l);
  std::printf("\n");
}

void write_loo_csv(const gp::LooReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "index,actual,predicted,variance\n" << std::setprecision(17);
  for (const auto& p : r.per_point) {
    out << p.index << ',' << p.actual << ',' << p.predicted << ',';
    if (p.variance) out << *p.variance;
    out << '\n';
  }
}

blockgp::BlockSpec parse_block_spec(const Dataset& ds, const std::string& dims, const std::string& blocks,
                                    double overlap) {
  blockgp::BlockSpec spec;
  for (const auto& name : split(dims, ',')) spec.dims.push_back(feature_index(ds, name));
  const auto parts = split(blocks, ',');
  if (parts.size() == spec.dims.size()) {
    for (const auto& p : parts) spec.counts.push_back(to_count(p, "--blocks"));
  } else if (parts.size() == 1 && spec.dims.size() == 2) {
    const std::size_t b = to_count(parts[0], "--blocks");
    const auto root = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(b))));
    if (root * root != b) throw std::invalid_argument("two blocking dimensions need --blocks a,b or a square count");
    spec.counts = {root, root};
  } else {
    throw std::invalid_argument("--blocks must give one count per blocking dimension");
  }
  spec.overlap_fraction = overlap;
  spec.validate(ds.dimension());
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{"Gaussian-process surrogate modelling and design-space exploration"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Generate a space-filling design");
  std::string s_domain, s_method = "best-candidate", s_out;
  std::size_t s_n = 0, s_k = design::kDefaultCandidates;
  bool s_synthetic = false;
  double s_noise = 0.0;
  SeedOption s_seed;
  auto* s_dom_opt = sample->add_option("--domain", s_domain, "Domain JSON (default: the Eagar-Tsai table)");
  sample->add_option("--method", s_method, "stratified or best-candidate")
      ->check(CLI::IsMember({"stratified", "best-candidate"}));
  sample->add_option("--n", s_n, "Point count (best-candidate)");
  sample->add_option("--k", s_k, "Candidates per step");
  auto* synth = sample->add_flag("--synthetic", s_synthetic, "Eagar-Tsai box with the synthetic depth column");
  sample->add_option("--noise", s_noise, "Gaussian noise sd added to the synthetic depth");
  sample->add_option("--out", s_out, "Output CSV")->required();
  synth->excludes(s_dom_opt);
  s_seed.add(sample);

  // fit
  auto* fitc = app.add_subcommand("fit", "Fit a GP with given hyperparameters");
  DataOptions f_data;
  HpOptions f_hp;
  SolverOptions f_solver;
  std::string f_out;
  f_data.add(fitc);
  f_hp.add(fitc);
  f_solver.add(fitc);
  fitc->add_option("--out", f_out, "Model JSON")->required();

  // hyperopt
  auto* hyp = app.add_subcommand("hyperopt", "Random search over hyperparameters by LOO MAE");
  DataOptions h_data;
  SolverOptions h_solver;
  SeedOption h_seed;
  std::string h_space, h_trace, h_out;
  std::size_t h_r = 100;
  bool h_finals = false;
  h_data.add(hyp);
  h_solver.add(hyp);
  h_seed.add(hyp);
  hyp->add_option("--space", h_space, "Hyperparameter box JSON");
  hyp->add_option("--R", h_r, "Candidate count");
  hyp->add_option("--trace", h_trace, "Per-candidate CSV");
  hyp->add_option("--out", h_out, "Model JSON at the optimum");
  hyp->add_flag("--with-variance", h_finals, "Run the default and optimum variance passes");

  // loo
  auto* loo = app.add_subcommand("loo", "Leave-one-out evaluation");
  DataOptions l_data;
  HpOptions l_hp;
  SolverOptions l_solver;
  bool l_var = false;
  std::string l_report;
  l_data.add(loo);
  l_hp.add(loo);
  l_solver.add(loo);
  loo->add_flag("--with-variance", l_var, "Also report the held-out variance");
  loo->add_option("--report", l_report, "Per-point CSV");

  // block-fit
  auto* bfit = app.add_subcommand("block-fit", "Independent-block GP");
  DataOptions b_data;
  SolverOptions b_solver;
  SeedOption b_seed;
  std::string b_dims, b_blocks = "2", b_space, b_report, b_out;
  double b_overlap = 0.0;
  bool b_full = false;
  std::size_t b_r = 100;
  b_data.add(bfit);
  b_solver.add(bfit);
  b_seed.add(bfit);
  bfit->add_option("--dims", b_dims, "Blocking input(s), e.g. speed or speed,power")->required();
  bfit->add_option("--blocks", b_blocks, "Blocks per dimension (B, or a,b for two dimensions)");
  bfit->add_option("--overlap", b_overlap, "Overlap fraction used for fitting only");
  bfit->add_option("--R", b_r, "Candidate count");
  bfit->add_option("--space", b_space, "Hyperparameter box JSON");
  bfit->add_option("--report", b_report, "Plain-text table");
  bfit->add_flag("--full", b_full, "Also run the full-data search for the speedup table");
  bfit->add_option("--out", b_out, "Block model JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "Compare full, blocked and CG hyperparameter searches");
  DataOptions n_data;
  SeedOption n_seed;
  std::string n_compare = "full", n_dims, n_space, n_report;
  std::size_t n_r = 100;
  n_data.add(bench);
  n_seed.add(bench);
  bench->add_option("--compare", n_compare, "Comma list of full, block:B, cg:eps:cap");
  bench->add_option("--dims", n_dims, "Blocking input, required for block entries");
  bench->add_option("--R", n_r, "Candidate count");
  bench->add_option("--space", n_space, "Hyperparameter box JSON");
  bench->add_option("--report", n_report, "Result CSV");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Predict over a dense best-candidate design");
  std::string w_model, w_domain, w_out;
  std::size_t w_n = 5000, w_k = design::kDefaultCandidates;
  SeedOption w_seed;
  sweep->add_option("--model", w_model, "GP or block model JSON")->required();
  sweep->add_option("--domain", w_domain, "Domain JSON (default: the Eagar-Tsai table)");
  sweep->add_option("--n", w_n, "Point count");
  sweep->add_option("--k", w_k, "Candidates per step");
  sweep->add_option("--out", w_out, "Output CSV")->required();
  w_seed.add(sweep);

  // inverse
  auto* inv = app.add_subcommand("inverse", "Keep rows whose output lies in target +/- delta");
  std::string i_sweep, i_out;
  double i_target = 60.0, i_delta = 2.0;
  inv->add_option("--sweep", i_sweep, "Sweep CSV")->required();
  inv->add_option("--target", i_target, "Target output");
  inv->add_option("--delta", i_delta, "Half width (closed interval)");
  inv->add_option("--out", i_out, "Output CSV")->required();

  // som
  auto* somc = app.add_subcommand("som", "Batch Map SOM on a hexagonal grid");
  DataOptions o_data;
  SeedOption o_seed;
  std::string o_grid, o_preset = "10x10", o_weights = "none", o_stats, o_model, o_range;
  o_data.add(somc);
  o_seed.add(somc);
  somc->add_option("--grid", o_grid, "NXxNY (default: the preset size)");
  somc->add_option("--preset", o_preset, "30x30 or 10x10 radius schedule")->check(CLI::IsMember({"30x30", "10x10"}));
  somc->add_option("--weights", o_weights, "none, or a hyperparameter/GP model JSON giving 1/lambda weights");
  somc->add_option("--range", o_range, "lo,hi output range for in-range counts");
  somc->add_option("--stats", o_stats, "Node statistics CSV");
  somc->add_option("--model", o_model, "SOM model JSON");

  // parplot
  auto* par = app.add_subcommand("parplot", "Parallel-coordinate SVG");
  std::string p_data, p_order, p_out;
  par->add_option("--data", p_data, "Dataset CSV")->required();
  par->add_option("--order", p_order, "Comma list of input names; the rest follow in file order");
  par->add_option("--out", p_out, "SVG path (scaled CSV written next to it)")->required();

  // heatmap
  auto* heat = app.add_subcommand("heatmap", "SOM heatmap SVG");
  std::string m_stats, m_quantity = "count", m_out;
  heat->add_option("--stats", m_stats, "Node statistics CSV")->required();
  heat->add_option("--quantity", m_quantity, "weight:<dim>, count, mean or inrange");
  heat->add_option("--out", m_out, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (*sample && s_synthetic) {
    const auto method = s_method == "stratified" ? design::SampleMethod::stratified : design::SampleMethod::best_candidate;
    if (method == design::SampleMethod::best_candidate && s_n < 1) throw std::invalid_argument("--n must be at least 1");
    const auto ds = explore::synthetic_dataset(s_n ? s_n : std::size_t(-1), s_seed.get(), s_noise, method);
    explore::write_dataset(ds, s_out);
    std::printf("wrote %zu points to %s\n", ds.size(), s_out.c_str());
  } else if (*sample) {
    const auto dom = load_domain(s_domain);
    const auto seed = s_seed.get();
    design::SampleSet set;
    if (s_method == "stratified") {
      set = design::stratified_sample(dom, seed);
    } else {
      if (s_n < 1) throw std::invalid_argument("--n must be at least 1");
      set = design::best_candidate_sample(dom, s_n, s_k, seed);
    }
    write_points(set.points, dom.names(), s_out);
    std::printf("wrote %zu points to %s\n", set.points.rows(), s_out.c_str());
  } else if (*fitc) {
    const auto ds = f_data.load();
    const auto hp = f_hp.get(ds);
    const auto m = gp::fit(ds, hp, f_solver.get());
    serialize::save_json(serialize::to_json(m), f_out);
    std::printf("fitted %zu points: ", ds.size());
    print_hp(hp);
  } else if (*hyp) {
    const auto ds = h_data.load();
    hyperopt::SearchConfig cfg;
    cfg.space = load_space(h_space, ds);
    cfg.r = h_r;
    cfg.solver = h_solver.get();
    cfg.seed = h_seed.get();
    cfg.with_variance_finals = h_finals;
    const auto res = hyperopt::random_search(ds, cfg);
    if (!h_trace.empty()) hyperopt::write_trace_csv(res.trace, h_trace);
    std::printf("best candidate %zu of %zu, LOO MAE %.6g, search time %.3f s, %zu model builds\n",
                res.trace.best_index, res.trace.candidates.size(), res.trace.best().mae, res.trace.total_time,
                res.trace.model_builds);
    print_hp(res.best);
    if (res.trace.default_report) std::printf("default hyperparameters LOO MAE %.6g\n", res.trace.default_report->mae);
    if (!h_out.empty()) {
      auto solver = cfg.solver;
      solver.accept_unconverged = true;
      serialize::save_json(serialize::to_json(gp::fit(ds, res.best, solver)), h_out);
    }
  } else if (*loo) {
    const auto ds = l_data.load();
    gp::LooOptions opt;
    opt.with_variance = l_var;
    auto solver = l_solver.get();
    solver.accept_unconverged = true;
    const auto r = gp::loo_evaluate(ds, l_hp.get(ds), solver, opt);
    if (!l_report.empty()) write_loo_csv(r, l_report);
    std::printf("LOO MAE %.6g over %zu points (%.3f s, %zu unconverged CG solves)\n", r.mae, r.per_point.size(),
                r.wall_time, r.cg_unconverged);
  } else if (*bfit) {
    const auto ds = b_data.load();
    const auto spec = parse_block_spec(ds, b_dims, b_blocks, b_overlap);
    hyperopt::SearchConfig cfg;
    cfg.space = load_space(b_space, ds);
    cfg.r = b_r;
    cfg.solver = b_solver.get();
    cfg.seed = b_seed.get();
    const auto cands = hyperopt::candidate_list(cfg);
    const auto p = blockgp::partition(ds, spec);
    const auto m = blockgp::fit_blocks(ds, spec, p, cfg, cands);
    std::string table;
    if (b_full) {
      const auto full = hyperopt::random_search(ds, cfg, cands);
      table = blockgp::format_table(blockgp::speedup_report(full.trace, ds.size(), m));
    } else {
      std::ostringstream out;
      out << std::setprecision(6);
      for (std::size_t b = 0; b < m.blocks.size(); ++b) {
        const auto& blk = m.blocks[b];
        out << "block " << b << ": " << blk.members.size() << " points, time " << blk.time.wall << " s, MAE "
            << blk.trace.best().mae << '\n';
      }
      out << "total block time " << m.total_time.wall << " s\n";
      table = out.str();
    }
    std::fputs(table.c_str(), stdout);
    if (!b_report.empty()) std::ofstream(b_report) << table;
    if (!b_out.empty()) serialize::save_json(serialize::to_json(m), b_out);
  } else if (*bench) {
    const auto ds = n_data.load();
    hyperopt::SearchConfig base;
    base.space = load_space(n_space, ds);
    base.r = n_r;
    base.seed = n_seed.get();
    const auto entries = bench::parse_compare(n_compare);
    std::optional<std::size_t> block_dim;
    if (!n_dims.empty()) block_dim = feature_index(ds, n_dims);
    const auto spread = blockgp::blocking_spread_scores(ds, 2);
    std::printf("output spread score per input (two blocks, lower keeps similar outputs together):");
    for (std::size_t m = 0; m < spread.size(); ++m) std::printf(" %s %.3f", ds.feature_names[m].c_str(), spread[m]);
    std::printf("\n");
    const auto rows = bench::run_bench(ds, base, entries, block_dim);
    for (const auto& r : rows) {
      std::printf("%-20s time %9.3f s  MAE %.6g  best %zu  unconverged %zu", r.config.c_str(), r.time, r.mae,
                  r.best_index, r.cg_unconverged);
      if (r.speedup) std::printf("  speedup %.3f", *r.speedup);
      std::printf("\n");
    }
    if (!n_report.empty()) bench::write_bench_csv(rows, n_report);
  } else if (*sweep) {
    const auto doc = serialize::load_json(w_model);
    const auto dom = load_domain(w_domain);
    const auto seed = w_seed.get();
    Dataset out;
    if (serialize::format_of(doc) == serialize::kBlockFormat) {
      const auto m = serialize::block_from_json(doc);
      out = explore::dense_sweep(explore::predictor(m), dom, w_n, seed,
                                 m.blocks.front().model.output_name(), w_k);
    } else {
      const auto m = serialize::gp_from_json(doc);
      if (m.dimension() != dom.dimension()) throw DimensionMismatch("domain dimension", m.dimension(), dom.dimension());
      out = explore::dense_sweep(explore::predictor(m), dom, w_n, seed, m.output_name(), w_k);
    }
    explore::write_dataset(out, w_out);
    std::printf("wrote %zu predictions to %s\n", out.size(), w_out.c_str());
  } else if (*inv) {
    const auto ds = explore::load_dataset(i_sweep);
    const auto s = explore::filter_solution(ds, i_target, i_delta, i_sweep);
    explore::write_dataset(s.data, i_out);
    std::printf("%zu of %zu rows within %g +/- %g\n", s.data.size(), ds.size(), i_target, i_delta);
  } else if (*somc) {
    const auto ds = o_data.load();
    auto cfg = o_preset == "30x30" ? som::SomConfig::preset_30x30() : som::SomConfig::preset_10x10();
    cfg.seed = o_seed.get();
    const std::string grid = o_grid.empty() ? o_preset : o_grid;
    const auto dims = split(grid, 'x');
    if (dims.size() != 2) throw std::invalid_argument("--grid must look like 10x10");
    const auto g = som::HexGrid::make(to_count(dims[0], "grid width"), to_count(dims[1], "grid height"));
    if (o_weights != "none") {
      const auto doc = serialize::load_json(o_weights);
      const auto hp = doc.contains("format") ? serialize::gp_from_json(doc).hyperparameters()
                                             : serialize::hyperparameters_from_json(doc);
      cfg.dist_weights = explore::inverse_length_scale_weights(hp);
    }
    std::optional<std::pair<double, double>> range;
    if (!o_range.empty()) {
      const auto r = split(o_range, ',');
      if (r.size() != 2) throw std::invalid_argument("--range must be lo,hi");
      range = std::make_pair(to_double(r[0], "range"), to_double(r[1], "range"));
    }
    const auto feats = som::scale_for_som(ds);
    const auto m = som::batch_train(feats, g, cfg);
    std::printf("SOM %zux%zu: metric %.6g -> %.6g after %zu iterations\n", g.nx, g.ny, m.initial_metric,
                m.history.empty() ? m.initial_metric : m.history.back().metric, m.history.size());
    if (!o_stats.empty()) explore::write_node_stats_csv(som::node_stats(m, feats, ds, range), o_stats);
    if (!o_model.empty()) serialize::save_json(serialize::to_json(m), o_model);
  } else if (*par) {
    const auto ds = explore::load_dataset(p_data);
    std::vector<std::size_t> order;
    if (p_order.empty()) {
      for (std::size_t m = 0; m < ds.dimension(); ++m) order.push_back(m);
    } else {
      for (const auto& name : split(p_order, ',')) order.push_back(feature_index(ds, name));
      // unnamed inputs follow in file order
      for (std::size_t m = 0; m < ds.dimension(); ++m)
        if (std::find(order.begin(), order.end(), m) == order.end()) order.push_back(m);
    }
    explore::parallel_coords_export(ds, order, p_out);
    std::printf("wrote %s and %s\n", p_out.c_str(), explore::companion_path(p_out).c_str());
  } else if (*heat) {
    const auto table = explore::read_node_stats_csv(m_stats);
    explore::som_heatmap_export(table, explore::HeatmapSelector::parse(m_quantity, table.feature_names), m_out);
    std::printf("wrote %s and %s\n", m_out.c_str(), explore::companion_path(m_out).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const DimensionMismatch& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kData;
  }
}
