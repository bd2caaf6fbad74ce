#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvlab/chain.hpp"

namespace curvlab {

struct SimpleGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // sorted

  bool adjacent(int a, int b) const;
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  // -1 when the graph is not regular
  int regular_degree() const;
};

SimpleGraph simple_graph(const MarkovChain& c);
SimpleGraph simple_graph(const WeightedGraph& g);
SimpleGraph simple_graph(int n, const std::vector<std::pair<int, int>>& edges);

enum class FlatVariant { plain, R, S, RS };
std::string to_string(FlatVariant v);
FlatVariant parse_flat_variant(const std::string& s);

enum class FlatOutcome { flat, not_flat, unknown };
std::string to_string(FlatOutcome o);

struct FlatnessCertificate {
  int x = -1;
  FlatVariant variant = FlatVariant::plain;
  FlatOutcome outcome = FlatOutcome::unknown;
  // ball[0] = x, ball[1..d] = sorted neighbors; eta[j][b] = eta_j(ball[b])
  std::vector<int> ball;
  std::vector<std::vector<int>> eta;
  std::uint64_t nodes = 0;
};

struct FlatSearchOptions {
  std::uint64_t node_budget = 50'000'000;
};

FlatnessCertificate ricci_flat_at(const SimpleGraph& g, int x, FlatVariant variant,
                                  const FlatSearchOptions& opts = {});

// checks (i)-(iii) and the variant conditions directly from the maps
bool verify_certificate(const SimpleGraph& g, const FlatnessCertificate& c);

struct VertexFlatness {
  int x = -1;
  // outcome per variant in the order plain, R, S, RS
  FlatOutcome outcome[4] = {FlatOutcome::unknown, FlatOutcome::unknown, FlatOutcome::unknown,
                            FlatOutcome::unknown};
  std::string label() const;
};

std::vector<VertexFlatness> ricci_flat_report(const SimpleGraph& g, const FlatSearchOptions& opts = {});

}  // namespace curvlab
