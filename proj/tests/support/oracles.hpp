#pragma once

// Independent reference implementations used only by tests. None of these
// call into the matroid or DP code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "eulerdel/gf2.hpp"
#include "eulerdel/graph.hpp"

namespace testsupport {

using eulerdel::Digraph;
using eulerdel::EdgeId;
using eulerdel::EdgeSet;
using eulerdel::Graph;
using eulerdel::Vertex;

inline bool bfs_connected(const Graph& g, const EdgeSet& deleted) {
  const int n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (deleted.contains(e)) continue;
      const auto& x = g.edge(e);
      Vertex w = -1;
      if (x.u == v) w = x.v;
      if (x.v == v) w = x.u;
      if (w < 0 || seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      queue.push_back(w);
    }
  }
  return static_cast<int>(queue.size()) == n;
}

inline bool bfs_connected(const Graph& g) { return bfs_connected(g, g.empty_edge_set()); }

inline EdgeSet mask_to_set(std::size_t width, std::uint64_t mask) {
  EdgeSet s(width);
  for (std::size_t e = 0; e < width; ++e) {
    if ((mask >> e) & 1U) s.insert(static_cast<EdgeId>(e));
  }
  return s;
}

// All vertex pairs of K_n in a fixed order.
inline std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> p;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) p.emplace_back(u, v);
  }
  return p;
}

inline Graph graph_from_mask(int n, std::uint64_t mask) {
  const auto pairs = all_pairs(n);
  Graph g(n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if ((mask >> i) & 1U) g.add_edge(pairs[i].first, pairs[i].second);
  }
  return g;
}

// Connected simple graphs on exactly n vertices with at most max_m edges.
// With up_to_iso, one representative (smallest canonical mask) per class.
inline std::vector<Graph> connected_graphs(int n, int max_m, bool up_to_iso) {
  const auto pairs = all_pairs(n);
  const std::size_t np = pairs.size();
  std::vector<std::vector<int>> index(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (std::size_t i = 0; i < np; ++i) {
    index[static_cast<std::size_t>(pairs[i].first)][static_cast<std::size_t>(pairs[i].second)] = static_cast<int>(i);
    index[static_cast<std::size_t>(pairs[i].second)][static_cast<std::size_t>(pairs[i].first)] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> perms;
  if (up_to_iso) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<Graph> out;
  std::set<std::uint64_t> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << np); ++mask) {
    if (std::popcount(mask) > max_m) continue;
    const Graph g = graph_from_mask(n, mask);
    if (!bfs_connected(g)) continue;
    if (up_to_iso) {
      std::uint64_t canon = ~std::uint64_t{0};
      for (const auto& p : perms) {
        std::uint64_t image = 0;
        for (std::size_t i = 0; i < np; ++i) {
          if ((mask >> i) & 1U) {
            image |= std::uint64_t{1}
                     << index[static_cast<std::size_t>(p[static_cast<std::size_t>(pairs[i].first)])]
                             [static_cast<std::size_t>(p[static_cast<std::size_t>(pairs[i].second)])];
          }
        }
        canon = std::min(canon, image);
      }
      if (!seen.insert(canon).second) continue;
    }
    out.push_back(g);
  }
  return out;
}

inline Graph random_connected_graph(std::mt19937_64& rng, int n, int m) {
  const auto pairs = all_pairs(n);
  for (;;) {
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Graph g(n);
    for (int i = 0; i < m && i < static_cast<int>(order.size()); ++i) {
      g.add_edge(pairs[order[static_cast<std::size_t>(i)]].first, pairs[order[static_cast<std::size_t>(i)]].second);
    }
    if (bfs_connected(g)) return g;
  }
}

inline Digraph random_weakly_connected_digraph(std::mt19937_64& rng, int n, int m) {
  std::vector<std::pair<int, int>> arcs;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) arcs.emplace_back(u, v);
    }
  }
  for (;;) {
    std::shuffle(arcs.begin(), arcs.end(), rng);
    Digraph d(n);
    Graph under(n);
    for (int i = 0; i < m && i < static_cast<int>(arcs.size()); ++i) {
      d.add_arc(arcs[static_cast<std::size_t>(i)].first, arcs[static_cast<std::size_t>(i)].second);
      under.add_edge(arcs[static_cast<std::size_t>(i)].first, arcs[static_cast<std::size_t>(i)].second);
    }
    if (bfs_connected(under)) return d;
  }
}

// Odd-degree vertex set of (V, s) equals T.
inline bool is_tjoin(const Graph& g, const std::vector<Vertex>& t, const EdgeSet& s) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!s.contains(e)) continue;
    ++deg[static_cast<std::size_t>(g.edge(e).u)];
    ++deg[static_cast<std::size_t>(g.edge(e).v)];
  }
  std::vector<Vertex> odd;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (deg[static_cast<std::size_t>(v)] % 2 != 0) odd.push_back(v);
  }
  std::vector<Vertex> sorted = t;
  std::sort(sorted.begin(), sorted.end());
  return odd == sorted;
}

// Exhaustive minimum T-join size.
inline std::optional<int> brute_min_tjoin(const Graph& g, const std::vector<Vertex>& t) {
  const auto m = static_cast<std::size_t>(g.edge_count());
  std::optional<int> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const int size = std::popcount(mask);
    if (best && size >= *best) continue;
    if (is_tjoin(g, t, mask_to_set(m, mask))) best = size;
  }
  return best;
}

// Laplace expansion along the first row; in characteristic 2 the signs vanish.
inline eulerdel::FieldElem cofactor_det(const eulerdel::ExtField& f,
                                        const std::vector<std::vector<eulerdel::FieldElem>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  eulerdel::FieldElem acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<std::vector<eulerdel::FieldElem>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<eulerdel::FieldElem> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(a[i][c]);
      }
      minor.push_back(row);
    }
    acc ^= f.mul(a[0][j], cofactor_det(f, minor));
  }
  return acc;
}

}  // namespace testsupport
