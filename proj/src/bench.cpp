#include "surrogate/bench.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "surrogate/blockgp.hpp"

namespace surrogate::bench {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double number(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw std::invalid_argument("bad number in bench entry: '" + s + "'");
  return v;
}

std::size_t count(const std::string& s) {
  const double v = number(s);
  if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw std::invalid_argument("bench entry count must be a positive integer: '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

BenchEntry BenchEntry::parse(const std::string& text) {
  const auto parts = split(text, ':');
  BenchEntry e;
  e.label = text;
  if (parts.size() == 1 && parts[0] == "full") {
    e.kind = EntryKind::full;
  } else if (parts.size() == 2 && parts[0] == "block") {
    e.kind = EntryKind::block;
    e.blocks = count(parts[1]);
  } else if (parts.size() == 3 && parts[0] == "cg") {
    e.kind = EntryKind::cg;
    e.cg = {number(parts[1]), count(parts[2])};
    e.cg.validate();
  } else {
    throw std::invalid_argument("bench entry must be full, block:B or cg:eps:cap, got '" + text + "'");
  }
  return e;
}

std::vector<BenchEntry> parse_compare(const std::string& text) {
  std::vector<BenchEntry> out;
  for (const auto& item : split(text, ','))
    if (!item.empty()) out.push_back(BenchEntry::parse(item));
  if (out.empty()) throw std::invalid_argument("no bench entries");
  return out;
}

std::vector<BenchRow> run_bench(const Dataset& ds, const hyperopt::SearchConfig& base,
                                const std::vector<BenchEntry>& entries, std::optional<std::size_t> block_dim) {
  const auto cands = hyperopt::candidate_list(base);
  std::vector<BenchRow> rows;
  std::optional<double> full_time;
  for (const auto& e : entries) {
    BenchRow row;
    row.config = e.label;
    auto cfg = base;
    if (e.kind == EntryKind::block) {
      if (!block_dim) throw std::invalid_argument("block entries need a blocking dimension");
      const blockgp::BlockSpec spec{{*block_dim}, {e.blocks}, 0.0};
      cfg.solver = gp::SolverConfig::direct();
      const auto p = blockgp::partition(ds, spec);
      const auto m = blockgp::fit_blocks(ds, spec, p, cfg, cands);
      row.time = m.total_time.wall;
      row.cpu_time = m.total_time.cpu;
      double weighted = 0.0;
      for (const auto& b : m.blocks) {
        row.block_maes.push_back(b.trace.best().mae);
        weighted += b.trace.best().mae * static_cast<double>(b.members.size());
      }
      row.mae = weighted / static_cast<double>(ds.size());
    } else {
      cfg.solver = e.kind == EntryKind::cg ? gp::SolverConfig::conjugate_gradient(e.cg) : gp::SolverConfig::direct();
      const auto r = hyperopt::random_search(ds, cfg, cands);
      row.time = r.trace.total_time;
      row.cpu_time = r.trace.total_cpu_time;
      row.mae = r.trace.best().mae;
      row.best_index = r.trace.best_index;
      for (const auto& c : r.trace.candidates) row.cg_unconverged += c.cg_unconverged;
      if (e.kind == EntryKind::full && !full_time) full_time = row.time;
    }
    rows.push_back(std::move(row));
  }
  if (full_time) {
    for (auto& r : rows)
      if (r.time > 0.0) r.speedup = *full_time / r.time;
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "config,total_time,cpu_time,best_mae,best_index,cg_unconverged,speedup_vs_full\n" << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.config << ',' << r.time << ',' << r.cpu_time << ',' << r.mae << ',' << r.best_index << ','
        << r.cg_unconverged << ',';
    if (r.speedup) out << *r.speedup;
    out << '\n';
  }
}

}  // namespace surrogate::bench
