#include <doctest.h>

#include "curvlab/ricci_flat.hpp"
#include "curvlab/zoo.hpp"

using namespace curvlab;

namespace {

SimpleGraph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return simple_graph(n, e);
}

}  // namespace

TEST_CASE("single edge is RS flat") {
  SimpleGraph g = simple_graph(2, {{0, 1}});
  for (auto v : {FlatVariant::plain, FlatVariant::R, FlatVariant::S, FlatVariant::RS}) {
    auto c = ricci_flat_at(g, 0, v);
    CHECK(c.outcome == FlatOutcome::flat);
    CHECK(verify_certificate(g, c));
  }
}

TEST_CASE("five cycle is S flat but not R flat") {
  // at x = 0 the maps are forced: eta_1 = (1, 2, 0), eta_2 = (4, 0, 3) on (0, 1, 4)
  SimpleGraph g = cycle_graph(5);
  auto s = ricci_flat_at(g, 0, FlatVariant::S);
  REQUIRE(s.outcome == FlatOutcome::flat);
  CHECK(verify_certificate(g, s));
  CHECK(s.eta[0] == std::vector<int>{1, 2, 0});
  CHECK(s.eta[1] == std::vector<int>{4, 0, 3});
  CHECK(ricci_flat_at(g, 0, FlatVariant::R).outcome == FlatOutcome::not_flat);
  CHECK(ricci_flat_at(g, 0, FlatVariant::RS).outcome == FlatOutcome::not_flat);
  for (const auto& v : ricci_flat_report(g)) CHECK(v.label() == "S");
}

TEST_CASE("hypercube is RS flat") {
  SimpleGraph g = simple_graph(hypercube(3, Real(1) / 3).chain);
  CHECK(g.regular_degree() == 3);
  for (int x = 0; x < 8; ++x) {
    auto c = ricci_flat_at(g, x, FlatVariant::RS);
    CHECK(c.outcome == FlatOutcome::flat);
    CHECK(verify_certificate(g, c));
  }
}

TEST_CASE("tampered certificate fails verification") {
  SimpleGraph g = cycle_graph(5);
  auto c = ricci_flat_at(g, 0, FlatVariant::S);
  REQUIRE(verify_certificate(g, c));
  auto bad = c;
  bad.eta[0][1] = 0;
  CHECK_FALSE(verify_certificate(g, bad));
  bad = c;
  bad.variant = FlatVariant::R;
  CHECK_FALSE(verify_certificate(g, bad));
}

TEST_CASE("non-regular graphs are rejected") {
  SimpleGraph path = simple_graph(3, {{0, 1}, {1, 2}});
  CHECK(path.regular_degree() == -1);
  CHECK_THROWS_AS(ricci_flat_report(path), InputError);
}

TEST_CASE("node budget yields unknown") {
  SimpleGraph g = simple_graph(complement_c4_c5());
  FlatSearchOptions o;
  o.node_budget = 1;
  auto c = ricci_flat_at(g, 0, FlatVariant::S, o);
  CHECK(c.outcome == FlatOutcome::unknown);
}

TEST_CASE("variant names round trip") {
  for (auto v : {FlatVariant::plain, FlatVariant::R, FlatVariant::S, FlatVariant::RS})
    CHECK(parse_flat_variant(to_string(v)) == v);
  CHECK_THROWS_AS(parse_flat_variant("Q"), InputError);
}
