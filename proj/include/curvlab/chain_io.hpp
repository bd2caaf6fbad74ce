#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "curvlab/search.hpp"

namespace curvlab {

using json = nlohmann::json;

// Doubles when the value fits, else a decimal string with full long double precision.
json real_to_json(Real v);
// Accepts numbers or numeric strings; parsed at long double precision.
Real real_from_json(const json& j);

struct ChainFile {
  MarkovChain chain;
  std::optional<WeightedGraph> graph;
  json meta = json::object();
};

ChainFile parse_chain(const std::string& text);
ChainFile load_chain(const std::string& path);
json chain_to_json(const MarkovChain& c, const json& meta = json::object());
json graph_to_json(const WeightedGraph& g, const json& meta = json::object());

json witness_to_json(const CurvatureWitness& w);
CurvatureWitness witness_from_json(const json& j);

}  // namespace curvlab
