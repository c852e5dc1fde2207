#include "eulerdel/cographic.hpp"

#include <bit>
#include <random>
#include <stdexcept>
#include <string>

namespace eulerdel {

CographicRep build_cographic(const Graph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  if (!is_connected(g)) throw std::invalid_argument("cographic matroid undefined: graph is disconnected");

  CographicRep rep;
  rep.vertex_count = n;
  rep.edge_count = m;
  rep.spanning_tree = EdgeSet(static_cast<std::size_t>(m));
  if (n == 0) {
    rep.base = BitMatrix(0, static_cast<std::size_t>(m));
    rep.columns = rep.base.transpose();
    return rep;
  }

  std::vector<EdgeId> parent_edge(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> queue{0};
  depth[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (EdgeId e : g.incident(v)) {
      const Vertex w = g.other_end(e, v);
      if (depth[w] >= 0) continue;
      depth[w] = depth[v] + 1;
      parent_edge[w] = e;
      rep.spanning_tree.insert(e);
      queue.push_back(w);
    }
  }

  for (EdgeId e = 0; e < m; ++e) {
    if (!rep.spanning_tree.contains(e)) rep.non_tree_edges.push_back(e);
  }
  rep.base = BitMatrix(rep.non_tree_edges.size(), static_cast<std::size_t>(m));
  for (std::size_t row = 0; row < rep.non_tree_edges.size(); ++row) {
    const EdgeId e = rep.non_tree_edges[row];
    rep.base.set(row, static_cast<std::size_t>(e), true);
    Vertex a = g.edge(e).u;
    Vertex b = g.edge(e).v;
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      const EdgeId up = parent_edge[a];
      rep.base.set(row, static_cast<std::size_t>(up), true);
      a = g.other_end(up, a);
    }
  }
  rep.columns = rep.base.transpose();
  return rep;
}

bool is_coindependent(const CographicRep& rep, std::span<const EdgeId> s) {
  const std::size_t words = rep.columns.words_per_row();
  // Echelon basis of the selected columns; any reduction to zero is a dependency.
  std::vector<std::uint64_t> rows;
  std::vector<std::size_t> pivots;
  std::vector<std::uint64_t> v(words);
  for (EdgeId e : s) {
    if (e < 0 || e >= rep.edge_count) throw std::out_of_range("edge id out of range");
    const auto col = rep.columns.row(static_cast<std::size_t>(e));
    std::copy(col.begin(), col.end(), v.begin());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const std::size_t p = pivots[i];
      if ((v[p >> 6] >> (p & 63)) & 1U) {
        for (std::size_t w = 0; w < words; ++w) v[w] ^= rows[i * words + w];
      }
    }
    std::size_t w = 0;
    while (w < words && v[w] == 0) ++w;
    if (w == words) return false;
    pivots.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(v[w])));
    rows.insert(rows.end(), v.begin(), v.end());
  }
  return true;
}

bool is_coindependent(const CographicRep& rep, const EdgeSet& s) {
  const auto ids = s.ids();
  return is_coindependent(rep, std::span<const EdgeId>(ids));
}

TruncatedRep truncate(const CographicRep& rep, int t, std::uint64_t seed, FieldPtr field) {
  const auto r = static_cast<int>(rep.rank());
  if (t < 0 || t > r) {
    throw std::invalid_argument("truncation rank " + std::to_string(t) + " outside [0, " +
                                std::to_string(r) + "]");
  }
  const ExtField& f = *field;
  std::mt19937_64 rng(seed);
  const FieldElem mask = static_cast<FieldElem>(f.size() - 1);

  // Draw R until it has full row rank; for t = r this makes R invertible.
  ExtMatrix mixer(field, static_cast<std::size_t>(t), static_cast<std::size_t>(r));
  for (;;) {
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < r; ++j) mixer.set(i, j, static_cast<FieldElem>(rng()) & mask);
    }
    if (rank(mixer) == static_cast<std::size_t>(t)) break;
  }

  TruncatedRep out;
  out.target_rank = t;
  out.source_rank = r;
  out.seed = seed;
  out.matrix = ExtMatrix(field, static_cast<std::size_t>(t), static_cast<std::size_t>(rep.edge_count));
  for (int e = 0; e < rep.edge_count; ++e) {
    for (int i = 0; i < t; ++i) {
      FieldElem acc = 0;
      for (int j = 0; j < r; ++j) {
        if (rep.base.get(static_cast<std::size_t>(j), static_cast<std::size_t>(e))) acc ^= mixer.at(i, j);
      }
      out.matrix.set(i, e, acc);
    }
  }
  return out;
}

ExtMatrix exact_matrix(const CographicRep& rep) { return ExtMatrix::embed(rep.base, gf2_field()); }

}  // namespace eulerdel
