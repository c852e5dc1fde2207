#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eulerdel/oracle.hpp"
#include "support/oracles.hpp"

using namespace eulerdel;

namespace {

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path3() {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

}  // namespace

TEST_CASE("problem names") {
  CHECK(parse_problem("ueed") == Problem::ueed);
  CHECK(parse_problem("deed") == Problem::deed);
  CHECK_FALSE(parse_problem("xyz"));
  CHECK(to_string(Problem::ucoed) == "ucoed");
}

TEST_CASE("brute force examples") {
  const auto k4 = brute_force(Problem::ueed, Instance(complete(4)), 2);
  REQUIRE(k4.min_size);
  CHECK(*k4.min_size == 2);
  CHECK(is_solution(Problem::ueed, Instance(complete(4)), *k4.witness));

  const auto c4 = brute_force(Problem::ueed, Instance(cycle(4)), 0);
  REQUIRE(c4.min_size);
  CHECK(*c4.min_size == 0);
  CHECK(c4.witness->empty());

  Graph pendant(4);
  pendant.add_edge(0, 1);
  pendant.add_edge(1, 2);
  pendant.add_edge(2, 0);
  pendant.add_edge(2, 3);
  CHECK_FALSE(brute_force(Problem::ueed, Instance(pendant), 3).min_size);

  CHECK_FALSE(brute_force(Problem::ucoed, Instance(cycle(4)), 4).min_size);
  const auto odd = brute_force(Problem::ucoed, Instance(complete(4)), 0);
  CHECK(odd.min_size == 0);

  Digraph d(3);
  d.add_arc(0, 1);
  d.add_arc(1, 2);
  d.add_arc(2, 0);
  d.add_arc(0, 2);
  const auto dv = brute_force(Problem::deed, Instance(d), 1);
  CHECK(dv.min_size == 1);
  CHECK(*dv.witness == EdgeSet(4, {3}));
}

TEST_CASE("brute force rejects oversized and mismatched inputs") {
  CHECK_THROWS_AS(brute_force(Problem::ueed, Instance(complete(8)), 2), ResourceError);
  CHECK_THROWS_AS(brute_force(Problem::deed, Instance(complete(3)), 1), std::invalid_argument);
}

TEST_CASE("min T-join examples") {
  const std::vector<Vertex> ends{0, 2};
  CHECK(min_tjoin(path3(), ends).size() == 2);
  CHECK(min_tjoin(complete(4), std::vector<Vertex>{}).empty());
  const std::vector<Vertex> all{0, 1, 2, 3};
  CHECK(min_tjoin(complete(4), all).size() == 2);
  CHECK_THROWS_AS(min_tjoin(path3(), std::vector<Vertex>{0}), std::invalid_argument);
}

TEST_CASE("lower bound filter examples") {
  const std::vector<Vertex> all{0, 1, 2, 3};
  CHECK_FALSE(tjoin_lower_bound_prune(complete(4), all, 1));
  CHECK(tjoin_lower_bound_prune(cycle(5), std::vector<Vertex>{}, 0));
  CHECK_FALSE(tjoin_lower_bound_prune(path3(), std::vector<Vertex>{0, 2}, 1));
}

TEST_CASE("min T-join is a valid minimum T-join") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 3 + trial % 5;
    const int m = std::min(12, std::min(n * (n - 1) / 2, n - 1 + static_cast<int>(rng() % 6)));
    const Graph g = testsupport::random_connected_graph(rng, n, m);
    std::vector<Vertex> t;
    for (Vertex v = 0; v < n; ++v) {
      if (rng() % 2) t.push_back(v);
    }
    if (t.size() % 2) t.pop_back();
    const EdgeSet j = min_tjoin(g, t);
    REQUIRE(testsupport::is_tjoin(g, t, j));
    REQUIRE(static_cast<int>(j.size()) == testsupport::brute_min_tjoin(g, t).value());
    REQUIRE(j.size() >= t.size() / 2);
  }
}

TEST_CASE("generator examples") {
  const auto zero = gen_yes_instance(GenMode::ueed, 4, 0, 1);
  CHECK(is_eulerian_undirected(std::get<Graph>(zero.instance)));
  CHECK(zero.planted.empty());

  const auto tri = gen_yes_instance(GenMode::deed, 3, 1, 1);
  const auto& d = std::get<Digraph>(tri.instance);
  CHECK(d.arc_count() == 4);
  const auto t = degree_surplus_terminals(d);
  CHECK(t.plus.size() == 1);
  CHECK(is_solution(Problem::deed, tri.instance, tri.planted));

  CHECK_THROWS(gen_yes_instance(GenMode::ueed, 2, 0, 1));
  CHECK_THROWS(gen_yes_instance(GenMode::ueed, 4, 3, 1));  // C4 leaves only 2 free pairs
}

TEST_CASE("generated instances are YES and reproducible") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 5 + static_cast<int>(seed % 4);
    const int extra = 1 + static_cast<int>(seed % 3);
    const int base = n + static_cast<int>(seed % 5);
    for (GenMode mode : {GenMode::ueed, GenMode::deed}) {
      const auto a = gen_yes_instance(mode, n, extra, seed, base);
      const auto b = gen_yes_instance(mode, n, extra, seed, base);
      CHECK(a.instance == b.instance);
      CHECK(a.planted == b.planted);
      const Problem p = mode == GenMode::ueed ? Problem::ueed : Problem::deed;
      REQUIRE(is_solution(p, a.instance, a.planted));
      const auto v = brute_force(p, a.instance, extra);
      REQUIRE(v.min_size);
      CHECK(*v.min_size <= extra);
    }
  }
}
