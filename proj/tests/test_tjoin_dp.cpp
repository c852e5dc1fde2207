#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eulerdel/oracle.hpp"
#include "eulerdel/tjoin_dp.hpp"
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

// C4 1-2-3-4 plus the chord (1,3), which gets id 4.
Graph c4_chord() {
  Graph g = cycle(4);
  g.add_edge(0, 2);
  return g;
}

Digraph four_arcs() {
  Digraph d(3);
  d.add_arc(0, 1);
  d.add_arc(1, 2);
  d.add_arc(2, 0);
  d.add_arc(0, 2);
  return d;
}

DpOptions mode(PruneMode p, std::uint64_t seed = 0) {
  DpOptions o;
  o.prune = p;
  o.seed = seed;
  return o;
}

// Runs every round without pruning and returns the completed cell.
std::vector<PartialSolution> completed_unpruned(const Graph& g, std::span<const Vertex> t, int budget) {
  const auto slots = TerminalSlots::undirected(t, g.vertex_count());
  const auto rep = build_cographic(g);
  DpTable table = DpTable::base(static_cast<std::size_t>(g.edge_count()));
  for (int i = 1; i <= budget; ++i) table = dp_round_undirected(table, g, slots, budget, rep, nullptr);
  const auto* cell = table.find({slots.full_mask(), kNoVertex});
  return cell ? *cell : std::vector<PartialSolution>{};
}

// Exhaustive search for a co-connected T-join of exactly `size` edges,
// optionally restricted to forests.
bool has_co_connected_tjoin(const Graph& g, const std::vector<Vertex>& t, int size, bool forest_only) {
  const auto m = static_cast<std::size_t>(g.edge_count());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (std::popcount(mask) != size) continue;
    const auto s = testsupport::mask_to_set(m, mask);
    if (!testsupport::is_tjoin(g, t, s) || !testsupport::bfs_connected(g, s)) continue;
    if (forest_only && !is_forest(g, s)) continue;
    return true;
  }
  return false;
}

}  // namespace

TEST_CASE("terminal slots") {
  const std::vector<Vertex> t{3, 1};
  const auto s = TerminalSlots::undirected(t, 5);
  CHECK(s.size() == 2);
  CHECK(s[0].vertex == 1);
  CHECK(s.full_mask() == 3);
  CHECK(s.free_opening_slot(3, 0) == 1);
  CHECK(s.free_opening_slot(3, 2) == -1);
  CHECK(s.free_closing_slot(2, 0) == -1);
  CHECK_THROWS(TerminalSlots::undirected(std::vector<Vertex>{1}, 5));

  Digraph star(3);
  star.add_arc(0, 1);
  star.add_arc(0, 2);
  const auto d = TerminalSlots::directed(star);
  REQUIRE(d.size() == 4);
  CHECK(d.path_count() == 2);
  CHECK(d.free_opening_slot(0, 0) == 0);
  CHECK(d.free_opening_slot(0, 1) == 1);
  CHECK(d.free_closing_slot(0, 0) == -1);
  CHECK(d.free_closing_slot(2, 0) == 3);
  CHECK(d.edges_to_finish(0, false) == 2);
  CHECK(d.edges_to_finish(1, true) == 2);
  CHECK(d.edges_to_finish(1, false) == -1);
}

TEST_CASE("compose follows the path operator") {
  const Graph k4 = complete(4);
  const auto rep = build_cographic(k4);
  PartialSolution empty;
  empty.edges = k4.empty_edge_set();

  const auto ab = compose(empty, {0, 0, 1}, rep);
  REQUIRE(ab);
  CHECK(ab->final_vertex == 1);
  CHECK(ab->last_path_vertices == std::vector<Vertex>{0, 1});

  CHECK_FALSE(compose(*ab, {0, 1, 0}, rep));  // edge already used
  const auto abc = compose(*ab, {3, 1, 2}, rep);
  REQUIRE(abc);
  CHECK(abc->last_path_vertices == std::vector<Vertex>{0, 1, 2});
  // Going back to a vertex of the in-progress path is undefined.
  CHECK_FALSE(compose(*abc, {1, 2, 0}, rep));

  // A new path starts when the edge does not leave the final vertex.
  const auto two = compose(*ab, {5, 2, 3}, rep);
  REQUIRE(two);
  CHECK(two->edges == EdgeSet(6, {0, 5}));
  CHECK(two->final_vertex == 3);
  CHECK(two->last_path_vertices == std::vector<Vertex>{2, 3});

  // Deleting a triangle's worth of edges at one vertex disconnects it.
  PartialSolution star = empty;
  star.edges = EdgeSet(6, {0, 1});
  CHECK_FALSE(compose(star, {2, 0, 3}, rep));
}

TEST_CASE("first round from the base") {
  const Graph g = c4_chord();
  const std::vector<Vertex> t{0, 2};
  const auto slots = TerminalSlots::undirected(t, 4);
  const auto rep = build_cographic(g);
  const auto r1 = dp_round_undirected(DpTable::base(5), g, slots, 3, rep, nullptr, nullptr, false);
  // New paths from terminal 1 or 3 along each incident edge.
  const auto* open = r1.find({1, 1});
  REQUIRE(open);
  CHECK(open->size() == 1);
  const auto* done = r1.find({3, kNoVertex});
  REQUIRE(done);
  REQUIRE(done->size() == 1);
  CHECK(done->front().edges == EdgeSet(5, {4}));
}

TEST_CASE("path a-b-c has no co-connected join") {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  const std::vector<Vertex> t{0, 2};
  CHECK(completed_unpruned(g, t, 2).empty());
  CHECK_FALSE(solve_co_connected_tjoin(g, t, 2, mode(PruneMode::exact)).solution);
}

TEST_CASE("co-connected T-join examples") {
  const std::vector<Vertex> t13{0, 2};
  for (PruneMode p : {PruneMode::exact, PruneMode::truncated, PruneMode::none}) {
    const auto r = solve_co_connected_tjoin(c4_chord(), t13, 1, mode(p));
    REQUIRE(r.solution);
    CHECK(*r.solution == EdgeSet(5, {4}));

    const std::vector<Vertex> all{0, 1, 2, 3};
    const auto k4 = solve_co_connected_tjoin(complete(4), all, 2, mode(p));
    REQUIRE(k4.solution);
    CHECK(k4.solution->size() == 2);
    CHECK(testsupport::is_tjoin(complete(4), all, *k4.solution));
    CHECK_FALSE(solve_co_connected_tjoin(complete(4), all, 1, mode(p)).solution);

    const auto none = solve_co_connected_tjoin(cycle(5), std::vector<Vertex>{}, 0, mode(p));
    REQUIRE(none.solution);
    CHECK(none.solution->empty());
  }
  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS(solve_co_connected_tjoin(split, t13, 1));
}

TEST_CASE("ueed examples") {
  const auto k4 = solve_ueed(complete(4), 2);
  REQUIRE(k4.solution);
  CHECK(k4.solution->size() == 2);
  const auto c4 = solve_ueed(cycle(4), 0);
  REQUIRE(c4.solution);
  CHECK(c4.solution->empty());
  CHECK_FALSE(solve_ueed(complete(4), 1).solution);
}

TEST_CASE("ucoed examples") {
  const auto k4 = solve_ucoed(complete(4), 0);
  REQUIRE(k4.solution);
  CHECK(k4.solution->empty());
  for (int k = 0; k <= 4; ++k) CHECK_FALSE(solve_ucoed(cycle(4), k).solution);
  CHECK_FALSE(solve_ucoed(complete(3), 3).solution);
}

TEST_CASE("directed examples") {
  const auto r = solve_directed(four_arcs(), 1);
  REQUIRE(r.solution);
  CHECK(*r.solution == EdgeSet(4, {3}));

  const auto slots = TerminalSlots::directed(four_arcs());
  const auto rep = build_cographic(four_arcs().underlying());
  const auto r1 = dp_round_directed(DpTable::base(4), four_arcs(), slots, 1, rep, nullptr);
  const auto* done = r1.find({slots.full_mask(), kNoVertex});
  REQUIRE(done);
  CHECK(done->front().edges == EdgeSet(4, {3}));

  Digraph c(3);
  c.add_arc(0, 1);
  c.add_arc(1, 2);
  c.add_arc(2, 0);
  const auto cr = solve_directed(c, 0);
  REQUIRE(cr.solution);
  CHECK(cr.solution->empty());

  Digraph two(3);
  two.add_arc(0, 1);
  two.add_arc(1, 0);
  two.add_arc(0, 2);
  two.add_arc(2, 0);
  const auto tr = solve_directed(two, 0);
  REQUIRE(tr.solution);
  CHECK(tr.solution->empty());

  Digraph star(3);
  star.add_arc(0, 1);
  star.add_arc(0, 2);
  for (int k = 0; k <= 2; ++k) CHECK_FALSE(solve_directed(star, k).solution);

  Digraph split(4);
  split.add_arc(0, 1);
  split.add_arc(2, 3);
  CHECK_THROWS(solve_directed(split, 1));
}

TEST_CASE("unpruned completed cell is bracketed by exhaustive search") {
  // A nonempty cell always holds a co-connected T-join of that size, and a
  // forest-shaped one always leads to a nonempty cell.
  std::mt19937_64 rng(51);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 3 + trial % 4;
    const int m = std::min(10, std::min(n * (n - 1) / 2, n + static_cast<int>(rng() % 5)));
    const Graph g = testsupport::random_connected_graph(rng, n, m);
    const auto t = odd_vertices(g);
    for (int budget = std::max<int>(1, static_cast<int>(t.size()) / 2); budget <= 4; ++budget) {
      const auto cell = completed_unpruned(g, t, budget);
      for (const auto& p : cell) {
        REQUIRE(p.edges.size() == static_cast<std::size_t>(budget));
        REQUIRE(testsupport::is_tjoin(g, t, p.edges));
        REQUIRE(testsupport::bfs_connected(g, p.edges));
      }
      if (has_co_connected_tjoin(g, t, budget, true)) REQUIRE_FALSE(cell.empty());
      if (!has_co_connected_tjoin(g, t, budget, false)) REQUIRE(cell.empty());
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("solutions verify, are forests, and the budget loop is monotone") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 4 + trial % 4;
    const int m = std::min(12, std::min(n * (n - 1) / 2, n + 1 + static_cast<int>(rng() % 6)));
    const Graph g = testsupport::random_connected_graph(rng, n, m);
    for (PruneMode p : {PruneMode::truncated, PruneMode::exact}) {
      const auto r = solve_ueed(g, 5, mode(p, static_cast<std::uint64_t>(trial)));
      if (!r.solution) continue;
      REQUIRE(eulerian_after_deletion(g, *r.solution));
      REQUIRE(is_forest(g, *r.solution));
      REQUIRE(r.solution->size() >= odd_vertices(g).size() / 2);
      const int size = static_cast<int>(r.solution->size());
      if (size > 0) CHECK_FALSE(solve_ueed(g, size - 1, mode(p, static_cast<std::uint64_t>(trial))).solution);
    }
  }
}

TEST_CASE("directed solutions are acyclic and balanced") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 3 + trial % 4;
    const int m = std::min(10, std::min(n * (n - 1), n + static_cast<int>(rng() % 6)));
    const Digraph d = testsupport::random_weakly_connected_digraph(rng, n, m);
    const auto r = solve_directed(d, 4, mode(PruneMode::truncated, static_cast<std::uint64_t>(trial)));
    if (!r.solution) continue;
    REQUIRE(eulerian_after_deletion(d, *r.solution));
    REQUIRE(is_acyclic(d, *r.solution));
    REQUIRE(r.solution->size() >= degree_surplus_terminals(d).plus.size());
  }
}

TEST_CASE("truncated families stay within the binomial ceiling") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto gen = gen_yes_instance(GenMode::ueed, 10, 3, seed, 20);
    const auto r = solve_ueed(std::get<Graph>(gen.instance), 3, mode(PruneMode::truncated, seed));
    REQUIRE(r.solution);
    for (const auto& s : r.stats.round_stats) {
      REQUIRE(s.max_family <= wedge_dimension(s.budget, s.round));
    }
  }
}

TEST_CASE("exact mode agrees with brute force on small graphs") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 4;
    const int m = std::min(10, std::min(n * (n - 1) / 2, n - 1 + static_cast<int>(rng() % 6)));
    const Graph g = testsupport::random_connected_graph(rng, n, m);
    for (Problem p : {Problem::ueed, Problem::ucoed}) {
      const auto truth = brute_force(p, Instance(g), 4);
      const auto r = p == Problem::ueed ? solve_ueed(g, 4, mode(PruneMode::exact))
                                        : solve_ucoed(g, 4, mode(PruneMode::exact));
      const std::optional<int> mine =
          r.solution ? std::optional<int>(static_cast<int>(r.solution->size())) : std::nullopt;
      REQUIRE(mine == truth.min_size);
    }
  }
}

TEST_CASE("truncated mode rarely misses on small random instances") {
  std::mt19937_64 rng(55);
  int mismatches = 0;
  const int total = 10000;
  for (int trial = 0; trial < total; ++trial) {
    const int n = 3 + trial % 4;
    const int m = std::min(10, std::min(n * (n - 1) / 2, n - 1 + static_cast<int>(rng() % 6)));
    const Graph g = testsupport::random_connected_graph(rng, n, m);
    const Problem p = trial % 2 ? Problem::ueed : Problem::ucoed;
    const auto truth = brute_force(p, Instance(g), 4);
    const auto o = mode(PruneMode::truncated, static_cast<std::uint64_t>(trial));
    const auto r = p == Problem::ueed ? solve_ueed(g, 4, o) : solve_ucoed(g, 4, o);
    const std::optional<int> mine =
        r.solution ? std::optional<int>(static_cast<int>(r.solution->size())) : std::nullopt;
    if (mine != truth.min_size) ++mismatches;
  }
  CHECK(mismatches * 1000 < total);
}

TEST_CASE("identical seeds give identical results") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto gen = gen_yes_instance(GenMode::ueed, 12, 3, seed, 24);
    const auto& g = std::get<Graph>(gen.instance);
    const auto a = solve_ueed(g, 3, mode(PruneMode::truncated, seed));
    const auto b = solve_ueed(g, 3, mode(PruneMode::truncated, seed));
    REQUIRE(a.solution);
    CHECK(*a.solution == *b.solution);
    CHECK(a.stats.repset_sizes == b.stats.repset_sizes);
    CHECK(a.stats.cells == b.stats.cells);
  }
}
