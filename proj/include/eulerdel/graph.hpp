#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eulerdel {

// Vertices are 0-based internally; instance files use 1-based labels.
using Vertex = int;
using EdgeId = int;

inline constexpr Vertex kNoVertex = -1;

/// Fixed-width bitmask over edge (or arc) ids 0..width-1.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t width);
  EdgeSet(std::size_t width, std::initializer_list<EdgeId> ids);
  EdgeSet(std::size_t width, std::span<const EdgeId> ids);

  std::size_t width() const { return width_; }
  bool contains(EdgeId e) const;
  void insert(EdgeId e);
  void erase(EdgeId e);
  std::size_t size() const;
  bool empty() const;
  bool intersects(const EdgeSet& other) const;
  std::vector<EdgeId> ids() const;
  std::span<const std::uint64_t> words() const { return words_; }
  std::size_t hash() const;

  EdgeSet& operator|=(const EdgeSet& other);
  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
  friend std::strong_ordering operator<=>(const EdgeSet& a, const EdgeSet& b);

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph with stable dense edge ids. Parallel edges are allowed by
/// the type (the directed pipeline needs the underlying multigraph); self-loops
/// are not.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  EdgeId add_edge(Vertex u, Vertex v);

  int vertex_count() const { return static_cast<int>(incident_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const EdgeId> incident(Vertex v) const { return incident_[v]; }
  int degree(Vertex v) const { return static_cast<int>(incident_[v].size()); }
  Vertex other_end(EdgeId e, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;
  EdgeSet empty_edge_set() const { return EdgeSet(edges_.size()); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

/// Simple digraph: no self-loops, no duplicate arcs, antiparallel pairs allowed.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);

  EdgeId add_arc(Vertex tail, Vertex head);

  int vertex_count() const { return static_cast<int>(out_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const Edge& arc(EdgeId a) const { return arcs_[a]; }
  std::span<const Edge> arcs() const { return arcs_; }
  std::span<const EdgeId> out_arcs(Vertex v) const { return out_[v]; }
  std::span<const EdgeId> in_arcs(Vertex v) const { return in_[v]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_[v].size()); }
  bool has_arc(Vertex tail, Vertex head) const;
  EdgeSet empty_arc_set() const { return EdgeSet(arcs_.size()); }

  /// Underlying undirected multigraph; edge id i corresponds to arc id i.
  Graph underlying() const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.vertex_count() == b.vertex_count() && a.arcs_ == b.arcs_;
  }

 private:
  std::vector<Edge> arcs_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

using Instance = std::variant<Graph, Digraph>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " at line " + std::to_string(line)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Instance format: `p edge <n> <m>` followed by m `e <u> <v>` records, or
// `p arc <n> <m>` followed by m `a <u> <v>` records. Lines starting with `#`
// are comments.
Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);
std::string serialize(const Graph& g);
std::string serialize(const Digraph& d);

/// Reads a solution listing (`e u v` / `a u v` lines) and maps each record to
/// the id of the matching edge or arc. Throws ParseError for unknown edges.
EdgeSet parse_solution(std::istream& in, const Instance& instance);
std::string format_solution(const Graph& g, const EdgeSet& s);
std::string format_solution(const Digraph& d, const EdgeSet& s);

bool is_connected(const Graph& g, const EdgeSet& deleted);
bool is_connected(const Graph& g);
bool is_weakly_connected(const Digraph& d, const EdgeSet& deleted);
bool is_weakly_connected(const Digraph& d);

bool is_eulerian_undirected(const Graph& g);
bool is_eulerian_directed(const Digraph& d);

std::vector<Vertex> odd_vertices(const Graph& g);
std::vector<Vertex> even_vertices(const Graph& g);

struct SurplusTerminals {
  std::vector<Vertex> plus;   // v repeated out(v) - in(v) times
  std::vector<Vertex> minus;  // v repeated in(v) - out(v) times
};
SurplusTerminals degree_surplus_terminals(const Digraph& d);

// Exact verifiers for the three deletion problems; they look only at degrees
// and connectivity of the graph with `deleted` removed.
bool eulerian_after_deletion(const Graph& g, const EdgeSet& deleted);
bool connected_odd_after_deletion(const Graph& g, const EdgeSet& deleted);
bool eulerian_after_deletion(const Digraph& d, const EdgeSet& deleted);

/// True iff the subgraph (V, s) has no cycle.
bool is_forest(const Graph& g, const EdgeSet& s);
/// True iff the arcs in s contain no directed cycle.
bool is_acyclic(const Digraph& d, const EdgeSet& s);

}  // namespace eulerdel
