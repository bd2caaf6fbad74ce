#include <doctest.h>

#include <cmath>

#include "curvlab/chain_io.hpp"
#include "curvlab/zoo.hpp"
#include "support.hpp"

using namespace curvlab;

TEST_CASE("chain round trip keeps double precision") {
  MarkovChain c = testing::random_reversible(6, 2);
  json meta = {{"family", "random"}, {"seed", 2}};
  ChainFile back = parse_chain(chain_to_json(c, meta).dump());
  CHECK((back.chain.Q() - c.Q()).cwiseAbs().maxCoeff() <= 1e-16);
  CHECK((back.chain.pi() - c.pi()).cwiseAbs().maxCoeff() <= 1e-16 * c.pi().maxCoeff());
  CHECK(back.meta["family"] == "random");
  CHECK(back.meta["seed"] == 2);
}

TEST_CASE("huge stationary weights survive") {
  ThreePoint tp = three_point(30);
  std::string text = chain_to_json(tp.zc.chain).dump();
  ChainFile back = parse_chain(text);
  Real want = tp.zc.chain.pi(2);
  CHECK(std::fabs(back.chain.pi(2) / want - 1) < 1e-15);
  CHECK(back.chain.labels() == tp.zc.chain.labels());
}

TEST_CASE("real encoding") {
  CHECK(real_to_json(0.5L).is_number());
  CHECK(real_to_json(std::exp(900.0L)).is_string());
  CHECK(real_from_json(json("1e900")) > 1e899L);
  CHECK(real_from_json(json(0.25)) == 0.25L);
  CHECK(std::isinf(real_from_json(real_to_json(kInf))));
}

TEST_CASE("graph format") {
  const char* text = R"({"graph": {"m": [2, 3, 2], "edges": [[0, 1, 1], [1, 2, 1]]}, "meta": {"name": "path"}})";
  ChainFile f = parse_chain(text);
  REQUIRE(f.graph);
  CHECK(f.chain.n() == 3);
  CHECK(f.chain.Q(0, 1) == 0.5L);
  CHECK(std::fabs(f.chain.Q(1, 1) - Real(1) / 3) < 1e-18);
  CHECK(f.meta["name"] == "path");
  ChainFile g = parse_chain(graph_to_json(*f.graph).dump());
  CHECK((g.chain.Q() - f.chain.Q()).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("witness round trip") {
  std::mt19937_64 rng(1);
  CurvatureWitness w{Density::from_log(testing::random_vector(4, rng, 3)), testing::random_vector(4, rng), 3, -0.5L};
  CurvatureWitness b = witness_from_json(witness_to_json(w));
  CHECK((b.rho.values - w.rho.values).cwiseAbs().maxCoeff() <= 1e-16 * w.rho.values.maxCoeff());
  CHECK((b.f - w.f).cwiseAbs().maxCoeff() <= 1e-16);
  CHECK(b.N == 3);
  CHECK(b.value == -0.5L);
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(parse_chain("{"), InputError);
  CHECK_THROWS_AS(parse_chain(R"({"Q": [[1]]})"), InputError);
  CHECK_THROWS_AS(parse_chain(R"({"Q": [[0.5, 0.5]], "pi": [1]})"), InputError);
  CHECK_THROWS_AS(parse_chain(R"({"Q": [["a"]], "pi": [1]})"), InputError);
  CHECK_THROWS_AS(parse_chain(R"({"graph": {"m": [1, 1], "edges": [[0, 1, 2]]}})"), InputError);
  CHECK_THROWS_AS(parse_chain(R"({"graph": {"m": [1, 1], "edges": [[0, 5, 0.5]]}})"), InputError);
  CHECK_THROWS_AS(load_chain("/nonexistent/chain.json"), InputError);
}
