#pragma once

#include <optional>
#include <string>

#include "curvlab/chain_io.hpp"
#include "curvlab/bounds.hpp"
#include "curvlab/classical.hpp"

namespace curvlab {

struct ReportOptions {
  bool ent = false;
  bool be = false;
  bool orc = false;
  bool sec = false;
  Real N = kInf;
  std::optional<Real> delta;
  int restarts = 20;
  std::uint64_t seed = 1;
  std::vector<Vector> seeds;
};

// Entropic curvature is reported as [lower, upper]: theorem floor and best witness.
struct EntropicInterval {
  Real lower = -kInf;
  std::string lower_formula;
  Real upper = kInf;
  SearchResult search;
};

EntropicInterval entropic_interval(const MarkovChain& c, const ReportOptions& opts);

json curvature_report(const MarkovChain& c, const ReportOptions& opts, const json& meta = json::object());
// rows "kind,i,j,value"; vertex quantities use j = -1
std::string report_csv(const json& report);

}  // namespace curvlab
