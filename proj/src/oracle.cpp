#include "eulerdel/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>
#include <string>
#include <utility>

namespace eulerdel {

std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::ueed: return "ueed";
    case Problem::ucoed: return "ucoed";
    case Problem::deed: return "deed";
  }
  return "?";
}

std::optional<Problem> parse_problem(std::string_view name) {
  if (name == "ueed") return Problem::ueed;
  if (name == "ucoed") return Problem::ucoed;
  if (name == "deed") return Problem::deed;
  return std::nullopt;
}

bool is_solution(Problem p, const Instance& instance, const EdgeSet& s) {
  if (p == Problem::deed) {
    const auto* d = std::get_if<Digraph>(&instance);
    if (!d) throw std::invalid_argument("deed needs a directed instance");
    return eulerian_after_deletion(*d, s);
  }
  const auto* g = std::get_if<Graph>(&instance);
  if (!g) throw std::invalid_argument(std::string(to_string(p)) + " needs an undirected instance");
  return p == Problem::ueed ? eulerian_after_deletion(*g, s) : connected_odd_after_deletion(*g, s);
}

OracleVerdict brute_force(Problem p, const Instance& instance, int k, int max_edges) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const int m = std::visit(
      [](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Graph>) {
          return g.edge_count();
        } else {
          return g.arc_count();
        }
      },
      instance);
  if (m > max_edges || m > 62) {
    throw ResourceError("brute force limited to " + std::to_string(max_edges) + " edges, instance has " +
                        std::to_string(m));
  }
  // Surface a kind mismatch even when there is nothing to enumerate.
  is_solution(p, instance, EdgeSet(static_cast<std::size_t>(m)));

  const int top = std::min(k, m);
  for (int size = 0; size <= top; ++size) {
    // Gosper's hack walks all masks with `size` bits in increasing order.
    std::uint64_t mask = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << m;
    while (mask < limit) {
      EdgeSet s(static_cast<std::size_t>(m));
      for (int e = 0; e < m; ++e) {
        if ((mask >> e) & 1U) s.insert(e);
      }
      if (is_solution(p, instance, s)) return {size, s};
      if (mask == 0) break;
      const std::uint64_t low = mask & (~mask + 1);
      const std::uint64_t ripple = mask + low;
      mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
  }
  return {};
}

EdgeSet min_tjoin(const Graph& g, std::span<const Vertex> terminals, int max_terminals) {
  const auto t = static_cast<int>(terminals.size());
  if (t % 2 != 0) throw std::invalid_argument("T-join needs an even number of terminals");
  if (t > max_terminals || t > 30) {
    throw ResourceError("min_tjoin limited to " + std::to_string(max_terminals) + " terminals");
  }
  if (!is_connected(g)) throw std::invalid_argument("min_tjoin needs a connected graph");
  EdgeSet result = g.empty_edge_set();
  if (t == 0) return result;

  const int n = g.vertex_count();
  // BFS tree from every terminal: distances and parent edges.
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(t));
  std::vector<std::vector<EdgeId>> parent(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    auto& d = dist[static_cast<std::size_t>(i)];
    auto& par = parent[static_cast<std::size_t>(i)];
    d.assign(static_cast<std::size_t>(n), -1);
    par.assign(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> queue{terminals[static_cast<std::size_t>(i)]};
    d[terminals[static_cast<std::size_t>(i)]] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      for (EdgeId e : g.incident(v)) {
        const Vertex w = g.other_end(e, v);
        if (d[w] >= 0) continue;
        d[w] = d[v] + 1;
        par[w] = e;
        queue.push_back(w);
      }
    }
  }

  // Minimum perfect matching on the metric closure: always pair the lowest
  // unmatched terminal.
  const std::size_t full = (std::size_t{1} << t) - 1;
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> best(full + 1, kInf);
  std::vector<int> choice(full + 1, -1);
  best[0] = 0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const int a = std::countr_zero(mask);
    for (int b = a + 1; b < t; ++b) {
      if (!((mask >> b) & 1U)) continue;
      const std::size_t rest = mask & ~(std::size_t{1} << a) & ~(std::size_t{1} << b);
      const int cost = best[rest] + dist[static_cast<std::size_t>(a)][terminals[static_cast<std::size_t>(b)]];
      if (cost < best[mask]) {
        best[mask] = cost;
        choice[mask] = b;
      }
    }
  }

  for (std::size_t mask = full; mask != 0;) {
    const int a = std::countr_zero(mask);
    const int b = choice[mask];
    const auto& par = parent[static_cast<std::size_t>(a)];
    for (Vertex v = terminals[static_cast<std::size_t>(b)]; v != terminals[static_cast<std::size_t>(a)];) {
      const EdgeId e = par[v];
      if (result.contains(e)) {
        result.erase(e);
      } else {
        result.insert(e);
      }
      v = g.other_end(e, v);
    }
    mask &= ~(std::size_t{1} << a) & ~(std::size_t{1} << b);
  }
  return result;
}

bool tjoin_lower_bound_prune(const Graph& g, std::span<const Vertex> terminals, int k) {
  if (terminals.empty()) return k >= 0;
  if (static_cast<int>(terminals.size()) > 2 * k) return false;
  return static_cast<int>(min_tjoin(g, terminals).size()) <= k;
}

// ---------------------------------------------------------------------------
// Instance generation

namespace {

// Bounded draw by rejection, so generated files do not depend on the
// standard library's distribution implementation.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

std::vector<Vertex> random_distinct(std::mt19937_64& rng, int n, int count) {
  std::vector<Vertex> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(i) + below(rng, static_cast<std::uint64_t>(n - i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

// Adjacency bookkeeping shared by both modes; `directed` decides whether
// (u, v) and (v, u) are the same slot.
class PairSet {
 public:
  PairSet(int n, bool directed) : n_(n), directed_(directed), bits_(static_cast<std::size_t>(n * n), false) {}
  bool contains(Vertex u, Vertex v) const { return bits_[index(u, v)]; }
  void insert(Vertex u, Vertex v) { bits_[index(u, v)] = true; }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    if (!directed_ && u > v) std::swap(u, v);
    return static_cast<std::size_t>(u * n_ + v);
  }
  int n_;
  bool directed_;
  std::vector<bool> bits_;
};

}  // namespace

GeneratedInstance gen_yes_instance(GenMode mode, int n, int extra, std::uint64_t seed, int base_edges) {
  if (n < 3) throw std::invalid_argument("need at least 3 vertices for an Eulerian base cycle");
  if (extra < 0) throw std::invalid_argument("extra must be non-negative");
  const bool directed = mode == GenMode::deed;
  const long long max_pairs = directed ? static_cast<long long>(n) * (n - 1) : static_cast<long long>(n) * (n - 1) / 2;
  if (base_edges > max_pairs) throw std::invalid_argument("base edge target exceeds the number of vertex pairs");

  std::mt19937_64 rng(seed);
  PairSet present(n, directed);
  std::vector<Edge> edges;
  auto add = [&](Vertex u, Vertex v) {
    present.insert(u, v);
    edges.push_back({u, v});
  };

  const auto order = random_distinct(rng, n, n);
  for (int i = 0; i < n; ++i) add(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>((i + 1) % n)]);

  const int max_len = std::min(n, 6);
  int failures = 0;
  while (static_cast<int>(edges.size()) + 3 <= base_edges && failures < 10000) {
    const int room = base_edges - static_cast<int>(edges.size());
    const int len = std::min(3 + static_cast<int>(below(rng, static_cast<std::uint64_t>(max_len - 2))), room);
    const auto cyc = random_distinct(rng, n, len);
    bool fits = true;
    for (int i = 0; i < len && fits; ++i) {
      fits = !present.contains(cyc[static_cast<std::size_t>(i)], cyc[static_cast<std::size_t>((i + 1) % len)]);
    }
    if (!fits) {
      ++failures;
      continue;
    }
    for (int i = 0; i < len; ++i) add(cyc[static_cast<std::size_t>(i)], cyc[static_cast<std::size_t>((i + 1) % len)]);
  }

  std::vector<Edge> free_pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = directed ? 0 : u + 1; v < n; ++v) {
      if (u != v && !present.contains(u, v)) free_pairs.push_back({u, v});
    }
  }
  if (static_cast<long long>(free_pairs.size()) < extra) {
    throw std::invalid_argument("n = " + std::to_string(n) + " cannot host " + std::to_string(extra) +
                                " extra edges on top of the base");
  }
  const std::size_t base_count = edges.size();
  for (int i = 0; i < extra; ++i) {
    const auto j = static_cast<std::size_t>(i) + below(rng, free_pairs.size() - static_cast<std::size_t>(i));
    std::swap(free_pairs[static_cast<std::size_t>(i)], free_pairs[j]);
    edges.push_back(free_pairs[static_cast<std::size_t>(i)]);
  }

  GeneratedInstance out;
  out.k = extra;
  out.planted = EdgeSet(edges.size());
  for (std::size_t id = base_count; id < edges.size(); ++id) out.planted.insert(static_cast<EdgeId>(id));
  if (directed) {
    Digraph d(n);
    for (const Edge& e : edges) d.add_arc(e.u, e.v);
    out.instance = std::move(d);
  } else {
    Graph g(n);
    for (const Edge& e : edges) g.add_edge(e.u, e.v);
    out.instance = std::move(g);
  }
  return out;
}

}  // namespace eulerdel
