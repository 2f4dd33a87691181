#pragma once

// JSON documents for models and configuration files.
//
// Every model document carries a "format" tag and a "version". Doubles are
// written with round-trip precision, so a reloaded model predicts bit for bit
// what the saved one did.

#include <string>

#include "json.hpp"
#include "surrogate/blockgp.hpp"
#include "surrogate/design.hpp"
#include "surrogate/explore.hpp"
#include "surrogate/gp.hpp"
#include "surrogate/som.hpp"

namespace surrogate::serialize {

using json = nlohmann::json;

inline constexpr const char* kGpFormat = "surrogate-gp";
inline constexpr const char* kBlockFormat = "surrogate-block-gp";
inline constexpr const char* kSomFormat = "surrogate-som";
inline constexpr int kVersion = 1;

json load_json(const std::string& path);
void save_json(const json& doc, const std::string& path);

/// "format" of a model document; throws DataError when absent.
std::string format_of(const json& doc);

json to_json(const gp::Hyperparameters& hp);
gp::Hyperparameters hyperparameters_from_json(const json& j);

json to_json(const gp::SolverConfig& cfg);
gp::SolverConfig solver_from_json(const json& j);

/// {"dims": [{"name", "min", "max", "levels"?}, ...]}
json to_json(const design::Domain& dom);
design::Domain domain_from_json(const json& j);

/// {"inputs": [...], "output": "...", "domain": {"name": [min, max]}}
explore::DatasetSchema schema_from_json(const json& j);

json to_json(const gp::GpModel& m);
gp::GpModel gp_from_json(const json& j);

json to_json(const blockgp::BlockGpModel& m);
blockgp::BlockGpModel block_from_json(const json& j);

json to_json(const som::SomModel& m);
som::SomModel som_from_json(const json& j);

}  // namespace surrogate::serialize
