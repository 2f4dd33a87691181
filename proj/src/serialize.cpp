#include "surrogate/serialize.hpp"

#include <fstream>

#include "surrogate/errors.hpp"

namespace surrogate::serialize {

namespace {

Matrix matrix_from_json(const json& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows.at(i);
    if (r.size() != cols) throw DimensionMismatch("matrix row length", cols, r.size());
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r.at(c).get<double>();
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

void expect_format(const json& j, const char* format) {
  const std::string f = format_of(j);
  if (f != format) throw DataError("expected a " + std::string(format) + " document, got " + f);
  if (j.value("version", 0) != kVersion) throw DataError("unsupported " + f + " version");
}

std::vector<FeatureRange> domain_ranges(const json& j) {
  std::vector<FeatureRange> out;
  for (const auto& r : j) out.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
  return out;
}

json ranges_to_json(const std::vector<FeatureRange>& d) {
  json out = json::array();
  for (const auto& r : d) out.push_back({r.min, r.max});
  return out;
}

// Rethrows JSON library errors as data errors so callers see one family.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

void save_json(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(1) << '\n';
}

std::string format_of(const json& doc) {
  if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string()) {
    throw DataError("document has no format tag");
  }
  return doc["format"].get<std::string>();
}

json to_json(const gp::Hyperparameters& hp) {
  return {{"sigma_f", hp.sigma_f}, {"sigma_n", hp.sigma_n}, {"length_scales", hp.length_scales}};
}

gp::Hyperparameters hyperparameters_from_json(const json& j) {
  return guarded([&] {
    gp::Hyperparameters hp;
    hp.sigma_f = j.at("sigma_f").get<double>();
    hp.sigma_n = j.at("sigma_n").get<double>();
    hp.length_scales = j.at("length_scales").get<std::vector<double>>();
    hp.validate();
    return hp;
  });
}

json to_json(const gp::SolverConfig& cfg) {
  json j;
  j["kind"] = cfg.kind == gp::SolverKind::direct ? "direct" : "cg";
  j["cg_epsilon"] = cfg.cg.epsilon;
  j["cg_max_iter"] = cfg.cg.max_iter;
  switch (cfg.taper.kind) {
    case kernels::TaperKind::none:
      j["taper"] = {{"kind", "none"}};
      break;
    case kernels::TaperKind::wendland1:
      j["taper"] = {{"kind", "wendland1"}, {"theta", cfg.taper.theta}};
      break;
    case kernels::TaperKind::block:
      j["taper"] = {{"kind", "block"}, {"blocks", cfg.taper.blocks}};
      break;
  }
  j["accept_unconverged"] = cfg.accept_unconverged;
  return j;
}

gp::SolverConfig solver_from_json(const json& j) {
  return guarded([&] {
    gp::SolverConfig cfg;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "direct") cfg.kind = gp::SolverKind::direct;
    else if (kind == "cg") cfg.kind = gp::SolverKind::cg;
    else throw DataError("unknown solver kind '" + kind + "'");
    cfg.cg.epsilon = j.value("cg_epsilon", cfg.cg.epsilon);
    cfg.cg.max_iter = j.value("cg_max_iter", cfg.cg.max_iter);
    cfg.accept_unconverged = j.value("accept_unconverged", false);
    if (j.contains("taper")) {
      const auto& t = j["taper"];
      const auto tk = t.at("kind").get<std::string>();
      if (tk == "none") cfg.taper = kernels::TaperSpec::none();
      else if (tk == "wendland1") cfg.taper = kernels::TaperSpec::wendland1(t.at("theta").get<double>());
      else if (tk == "block") cfg.taper = kernels::TaperSpec::block(t.at("blocks").get<std::vector<std::size_t>>());
      else throw DataError("unknown taper kind '" + tk + "'");
    }
    return cfg;
  });
}

json to_json(const design::Domain& dom) {
  json dims = json::array();
  for (const auto& d : dom.dims) {
    json e = {{"name", d.name}, {"min", d.min}, {"max", d.max}};
    if (d.levels) e["levels"] = *d.levels;
    dims.push_back(e);
  }
  return {{"dims", dims}};
}

design::Domain domain_from_json(const json& j) {
  return guarded([&] {
    design::Domain dom;
    for (const auto& e : j.at("dims")) {
      design::DomainDim d;
      d.name = e.at("name").get<std::string>();
      d.min = e.at("min").get<double>();
      d.max = e.at("max").get<double>();
      if (e.contains("levels")) d.levels = e["levels"].get<std::size_t>();
      dom.dims.push_back(d);
    }
    dom.validate();
    return dom;
  });
}

explore::DatasetSchema schema_from_json(const json& j) {
  return guarded([&] {
    explore::DatasetSchema s;
    s.inputs = j.value("inputs", std::vector<std::string>{});
    s.output = j.value("output", std::string{});
    if (j.contains("domain")) {
      for (const auto& [name, r] : j["domain"].items()) s.domain[name] = {r.at(0).get<double>(), r.at(1).get<double>()};
    }
    return s;
  });
}

json to_json(const gp::GpModel& m) {
  return {{"format", kGpFormat},
          {"version", kVersion},
          {"feature_names", m.feature_names()},
          {"output_name", m.output_name()},
          {"domain", ranges_to_json(m.domain())},
          {"hyperparameters", to_json(m.hyperparameters())},
          {"solver", to_json(m.solver())},
          {"scaled_features", matrix_to_json(m.scaled_features())},
          {"outputs", m.outputs()},
          {"alpha", m.alpha()}};
}

gp::GpModel gp_from_json(const json& j) {
  expect_format(j, kGpFormat);
  return guarded([&] {
    auto names = j.at("feature_names").get<std::vector<std::string>>();
    const std::size_t d = names.size();
    return gp::GpModel::restore(std::move(names), j.at("output_name").get<std::string>(),
                                domain_ranges(j.at("domain")), matrix_from_json(j.at("scaled_features"), d),
                                j.at("outputs").get<std::vector<double>>(),
                                hyperparameters_from_json(j.at("hyperparameters")), solver_from_json(j.at("solver")),
                                j.at("alpha").get<std::vector<double>>());
  });
}

json to_json(const blockgp::BlockGpModel& m) {
  json blocks = json::array();
  for (const auto& b : m.blocks) {
    blocks.push_back({{"members", b.members}, {"training", b.training}, {"model", to_json(b.model)}});
  }
  return {{"format", kBlockFormat},
          {"version", kVersion},
          {"feature_names", m.feature_names},
          {"dims", m.partition.dims},
          {"counts", m.partition.counts},
          {"overlap_fraction", m.spec.overlap_fraction},
          {"boundaries", m.partition.boundaries},
          {"assignment", m.partition.assignment},
          {"blocks", blocks}};
}

blockgp::BlockGpModel block_from_json(const json& j) {
  expect_format(j, kBlockFormat);
  return guarded([&] {
    blockgp::BlockGpModel m;
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.spec.dims = j.at("dims").get<std::vector<std::size_t>>();
    m.spec.counts = j.at("counts").get<std::vector<std::size_t>>();
    m.spec.overlap_fraction = j.value("overlap_fraction", 0.0);
    m.spec.validate(m.feature_names.size());
    auto& p = m.partition;
    p.dims = m.spec.dims;
    p.counts = m.spec.counts;
    p.boundaries = j.at("boundaries").get<std::vector<std::vector<double>>>();
    p.assignment = j.at("assignment").get<std::vector<std::size_t>>();
    p.block_sizes.assign(m.spec.block_count(), 0);
    for (auto a : p.assignment) ++p.block_sizes.at(a);
    for (const auto& b : j.at("blocks")) {
      blockgp::BlockResult r;
      r.members = b.at("members").get<std::vector<std::size_t>>();
      r.training = b.at("training").get<std::vector<std::size_t>>();
      r.model = gp_from_json(b.at("model"));
      r.hp = r.model.hyperparameters();
      m.blocks.push_back(std::move(r));
    }
    if (m.blocks.size() != m.spec.block_count()) {
      throw DimensionMismatch("block model count", m.spec.block_count(), m.blocks.size());
    }
    return m;
  });
}

json to_json(const som::SomModel& m) {
  json history = json::array();
  for (const auto& h : m.history) history.push_back({{"radius", h.radius}, {"metric", h.metric}});
  return {{"format", kSomFormat},
          {"version", kVersion},
          {"nx", m.grid.nx},
          {"ny", m.grid.ny},
          {"config",
           {{"r_max", m.config.r_max},
            {"r_min", m.config.r_min},
            {"r_iter", m.config.r_iter},
            {"iter_max", m.config.iter_max},
            {"dist_weights", m.config.dist_weights},
            {"seed", m.config.seed}}},
          {"weights", matrix_to_json(m.weights)},
          {"initial_metric", m.initial_metric},
          {"history", history}};
}

som::SomModel som_from_json(const json& j) {
  expect_format(j, kSomFormat);
  return guarded([&] {
    som::SomModel m;
    m.grid = som::HexGrid::make(j.at("nx").get<std::size_t>(), j.at("ny").get<std::size_t>());
    const auto& c = j.at("config");
    m.config.r_max = c.at("r_max").get<double>();
    m.config.r_min = c.at("r_min").get<double>();
    m.config.r_iter = c.at("r_iter").get<std::size_t>();
    m.config.iter_max = c.at("iter_max").get<std::size_t>();
    m.config.dist_weights = c.at("dist_weights").get<std::vector<double>>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    const auto& w = j.at("weights");
    const std::size_t d = w.empty() ? 0 : w.at(0).size();
    m.weights = matrix_from_json(w, d);
    if (m.weights.rows() != m.grid.size()) throw DimensionMismatch("SOM node count", m.grid.size(), m.weights.rows());
    m.initial_metric = j.value("initial_metric", 0.0);
    for (const auto& h : j.value("history", json::array())) {
      m.history.push_back({h.at("radius").get<double>(), h.at("metric").get<double>()});
    }
    return m;
  });
}

}  // namespace surrogate::serialize
