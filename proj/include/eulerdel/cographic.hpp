#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eulerdel/gf2.hpp"
#include "eulerdel/graph.hpp"

namespace eulerdel {

/// GF(2) representation of the co-graphic (bond) matroid of a connected
/// multigraph: an edge set is independent iff deleting it keeps the graph
/// connected. Rows are fundamental cycles of a BFS spanning tree rooted at
/// vertex 0, one per non-tree edge in id order.
struct CographicRep {
  BitMatrix base;                       // rank x m
  BitMatrix columns;                    // m x rank, column e of `base` packed as row e
  EdgeSet spanning_tree;
  std::vector<EdgeId> non_tree_edges;  // non_tree_edges[i] generates row i
  int vertex_count = 0;
  int edge_count = 0;

  std::size_t rank() const { return base.rows(); }
};

CographicRep build_cographic(const Graph& g);

bool is_coindependent(const CographicRep& rep, const EdgeSet& s);
bool is_coindependent(const CographicRep& rep, std::span<const EdgeId> s);

/// Rank-t image R * base of the co-graphic representation, with R a random
/// t x rank matrix over GF(2^s). Any set of at most t columns independent in
/// the base stays independent here with high probability.
struct TruncatedRep {
  ExtMatrix matrix;  // t x m
  int target_rank = 0;
  int source_rank = 0;
  std::uint64_t seed = 0;
};

TruncatedRep truncate(const CographicRep& rep, int t, std::uint64_t seed, FieldPtr field);

/// The untruncated representation embedded into GF(2) field elements.
ExtMatrix exact_matrix(const CographicRep& rep);

}  // namespace eulerdel
