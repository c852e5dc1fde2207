#include "eulerdel/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <istream>
#include <optional>
#include <numeric>
#include <set>
#include <sstream>

namespace eulerdel {

// ---------------------------------------------------------------------------
// EdgeSet

EdgeSet::EdgeSet(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

EdgeSet::EdgeSet(std::size_t width, std::initializer_list<EdgeId> ids) : EdgeSet(width) {
  for (EdgeId e : ids) insert(e);
}

EdgeSet::EdgeSet(std::size_t width, std::span<const EdgeId> ids) : EdgeSet(width) {
  for (EdgeId e : ids) insert(e);
}

bool EdgeSet::contains(EdgeId e) const {
  if (e < 0 || static_cast<std::size_t>(e) >= width_) return false;
  return (words_[e >> 6] >> (e & 63)) & 1U;
}

void EdgeSet::insert(EdgeId e) {
  if (e < 0 || static_cast<std::size_t>(e) >= width_) {
    throw std::out_of_range("edge id " + std::to_string(e) + " outside edge set of width " +
                            std::to_string(width_));
  }
  words_[e >> 6] |= std::uint64_t{1} << (e & 63);
}

void EdgeSet::erase(EdgeId e) {
  if (e < 0 || static_cast<std::size_t>(e) >= width_) return;
  words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
}

std::size_t EdgeSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool EdgeSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool EdgeSet::intersects(const EdgeSet& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

std::vector<EdgeId> EdgeSet::ids() const {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(static_cast<EdgeId>(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t EdgeSet::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ width_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& other) {
  if (other.width_ != width_) throw std::invalid_argument("edge set width mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::strong_ordering operator<=>(const EdgeSet& a, const EdgeSet& b) {
  if (auto c = a.width_ <=> b.width_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.words_.begin(), a.words_.end(),
                                                b.words_.begin(), b.words_.end());
}

// ---------------------------------------------------------------------------
// Graph / Digraph

Graph::Graph(int n) : incident_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
}

EdgeId Graph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
    throw std::invalid_argument("vertex out of range");
  }
  if (u == v) throw std::invalid_argument("self-loop");
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v});
  incident_[u].push_back(id);
  incident_[v].push_back(id);
  return id;
}

Vertex Graph::other_end(EdgeId e, Vertex v) const {
  const Edge& ed = edges_[e];
  return ed.u == v ? ed.v : ed.u;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& inc = incident_[u].size() <= incident_[v].size() ? incident_[u] : incident_[v];
  const Vertex from = incident_[u].size() <= incident_[v].size() ? u : v;
  const Vertex to = from == u ? v : u;
  return std::any_of(inc.begin(), inc.end(), [&](EdgeId e) { return other_end(e, from) == to; });
}

Digraph::Digraph(int n)
    : out_(static_cast<std::size_t>(std::max(n, 0))), in_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
}

EdgeId Digraph::add_arc(Vertex tail, Vertex head) {
  if (tail < 0 || head < 0 || tail >= vertex_count() || head >= vertex_count()) {
    throw std::invalid_argument("vertex out of range");
  }
  if (tail == head) throw std::invalid_argument("self-loop");
  if (has_arc(tail, head)) throw std::invalid_argument("duplicate arc");
  const auto id = static_cast<EdgeId>(arcs_.size());
  arcs_.push_back({tail, head});
  out_[tail].push_back(id);
  in_[head].push_back(id);
  return id;
}

bool Digraph::has_arc(Vertex tail, Vertex head) const {
  return std::any_of(out_[tail].begin(), out_[tail].end(),
                     [&](EdgeId a) { return arcs_[a].v == head; });
}

Graph Digraph::underlying() const {
  Graph g(vertex_count());
  for (const Edge& a : arcs_) g.add_edge(a.u, a.v);
  return g;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Header {
  bool directed;
  int n;
  int m;
};

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::optional<Header> header;
  std::optional<Instance> result;
  std::set<std::pair<Vertex, Vertex>> seen;
  int records = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    std::size_t first = line.find_first_not_of(" \t");
    if (line[first] == '#') continue;

    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      std::string kind;
      long long n = -1, m = -1;
      if (tag != "p" || !(ls >> kind >> n >> m) || (kind != "edge" && kind != "arc") || n < 0 ||
          m < 0) {
        throw ParseError("malformed header", line_no);
      }
      std::string extra;
      if (ls >> extra) throw ParseError("malformed header", line_no);
      header = Header{kind == "arc", static_cast<int>(n), static_cast<int>(m)};
      if (header->directed) {
        result.emplace(Digraph(header->n));
      } else {
        result.emplace(Graph(header->n));
      }
      continue;
    }

    const char expected = header->directed ? 'a' : 'e';
    long long u = 0, v = 0;
    if (tag.size() != 1 || tag[0] != expected || !(ls >> u >> v)) {
      throw ParseError(std::string("malformed '") + expected + "' record", line_no);
    }
    std::string extra;
    if (ls >> extra) throw ParseError(std::string("malformed '") + expected + "' record", line_no);
    if (u < 1 || v < 1 || u > header->n || v > header->n) {
      throw ParseError("vertex out of range", line_no);
    }
    if (u == v) throw ParseError("self-loop", line_no);
    if (records >= header->m) throw ParseError("more records than declared in header", line_no);
    const auto a = static_cast<Vertex>(u - 1);
    const auto b = static_cast<Vertex>(v - 1);
    if (header->directed) {
      if (!seen.insert({a, b}).second) throw ParseError("duplicate arc", line_no);
      std::get<Digraph>(*result).add_arc(a, b);
    } else {
      if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
        throw ParseError("duplicate edge", line_no);
      }
      std::get<Graph>(*result).add_edge(a, b);
    }
    ++records;
  }

  if (!header) throw ParseError("missing header", line_no + 1);
  if (records != header->m) {
    throw ParseError("expected " + std::to_string(header->m) + " records, found " +
                         std::to_string(records),
                     line_no + 1);
  }
  return std::move(*result);
}

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

std::string serialize(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return out.str();
}

std::string serialize(const Digraph& d) {
  std::ostringstream out;
  out << "p arc " << d.vertex_count() << ' ' << d.arc_count() << '\n';
  for (const Edge& a : d.arcs()) out << "a " << a.u + 1 << ' ' << a.v + 1 << '\n';
  return out.str();
}

EdgeSet parse_solution(std::istream& in, const Instance& instance) {
  const bool directed = std::holds_alternative<Digraph>(instance);
  const std::span<const Edge> edges =
      directed ? std::get<Digraph>(instance).arcs() : std::get<Graph>(instance).edges();
  const int n = directed ? std::get<Digraph>(instance).vertex_count()
                         : std::get<Graph>(instance).vertex_count();
  EdgeSet s(edges.size());
  const char expected = directed ? 'a' : 'e';

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag[0] == '#') continue;
    // Solver output starts with a verdict line; tolerate it.
    if (tag == "YES" || tag == "NO") continue;
    long long u = 0, v = 0;
    if (tag.size() != 1 || tag[0] != expected || !(ls >> u >> v)) {
      throw ParseError(std::string("malformed '") + expected + "' record", line_no);
    }
    if (u < 1 || v < 1 || u > n || v > n) throw ParseError("vertex out of range", line_no);
    const auto a = static_cast<Vertex>(u - 1);
    const auto b = static_cast<Vertex>(v - 1);
    bool found = false;
    for (std::size_t id = 0; id < edges.size() && !found; ++id) {
      const Edge& e = edges[id];
      const bool match = directed ? (e.u == a && e.v == b)
                                  : ((e.u == a && e.v == b) || (e.u == b && e.v == a));
      if (match) {
        s.insert(static_cast<EdgeId>(id));
        found = true;
      }
    }
    if (!found) throw ParseError(directed ? "unknown arc" : "unknown edge", line_no);
  }
  return s;
}

std::string format_solution(const Graph& g, const EdgeSet& s) {
  std::ostringstream out;
  for (EdgeId e : s.ids()) out << "e " << g.edge(e).u + 1 << ' ' << g.edge(e).v + 1 << '\n';
  return out.str();
}

std::string format_solution(const Digraph& d, const EdgeSet& s) {
  std::ostringstream out;
  for (EdgeId a : s.ids()) out << "a " << d.arc(a).u + 1 << ' ' << d.arc(a).v + 1 << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Queries

namespace {

bool connected_over(int n, std::span<const Edge> edges, const EdgeSet& deleted) {
  if (n <= 1) return true;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  int components = n;
  for (std::size_t id = 0; id < edges.size(); ++id) {
    if (deleted.contains(static_cast<EdgeId>(id))) continue;
    const int a = find(edges[id].u);
    const int b = find(edges[id].v);
    if (a != b) {
      parent[a] = b;
      if (--components == 1) return true;
    }
  }
  return components == 1;
}

}  // namespace

bool is_connected(const Graph& g, const EdgeSet& deleted) {
  return connected_over(g.vertex_count(), g.edges(), deleted);
}

bool is_connected(const Graph& g) { return is_connected(g, g.empty_edge_set()); }

bool is_weakly_connected(const Digraph& d, const EdgeSet& deleted) {
  return connected_over(d.vertex_count(), d.arcs(), deleted);
}

bool is_weakly_connected(const Digraph& d) { return is_weakly_connected(d, d.empty_arc_set()); }

bool is_eulerian_undirected(const Graph& g) {
  return eulerian_after_deletion(g, g.empty_edge_set());
}

bool is_eulerian_directed(const Digraph& d) {
  return eulerian_after_deletion(d, d.empty_arc_set());
}

std::vector<Vertex> odd_vertices(const Graph& g) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2 == 1) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> even_vertices(const Graph& g) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2 == 0) out.push_back(v);
  }
  return out;
}

SurplusTerminals degree_surplus_terminals(const Digraph& d) {
  SurplusTerminals t;
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    const int surplus = d.out_degree(v) - d.in_degree(v);
    for (int i = 0; i < surplus; ++i) t.plus.push_back(v);
    for (int i = 0; i < -surplus; ++i) t.minus.push_back(v);
  }
  return t;
}

bool eulerian_after_deletion(const Graph& g, const EdgeSet& deleted) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (deleted.contains(e)) continue;
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  if (std::any_of(deg.begin(), deg.end(), [](int x) { return x % 2 != 0; })) return false;
  return is_connected(g, deleted);
}

bool connected_odd_after_deletion(const Graph& g, const EdgeSet& deleted) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (deleted.contains(e)) continue;
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  if (std::any_of(deg.begin(), deg.end(), [](int x) { return x % 2 == 0; })) return false;
  return is_connected(g, deleted);
}

bool eulerian_after_deletion(const Digraph& d, const EdgeSet& deleted) {
  std::vector<int> balance(static_cast<std::size_t>(d.vertex_count()), 0);
  for (EdgeId a = 0; a < d.arc_count(); ++a) {
    if (deleted.contains(a)) continue;
    ++balance[d.arc(a).u];
    --balance[d.arc(a).v];
  }
  if (std::any_of(balance.begin(), balance.end(), [](int x) { return x != 0; })) return false;
  return is_weakly_connected(d, deleted);
}

bool is_forest(const Graph& g, const EdgeSet& s) {
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (EdgeId e : s.ids()) {
    const int a = find(g.edge(e).u);
    const int b = find(g.edge(e).v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool is_acyclic(const Digraph& d, const EdgeSet& s) {
  // Kahn's algorithm restricted to the arcs of s.
  const int n = d.vertex_count();
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (EdgeId a : s.ids()) ++indeg[d.arc(a).v];
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (indeg[v] == 0) queue.push_back(v);
  }
  int removed = 0;
  while (!queue.empty()) {
    const Vertex v = queue.back();
    queue.pop_back();
    ++removed;
    for (EdgeId a : d.out_arcs(v)) {
      if (!s.contains(a)) continue;
      if (--indeg[d.arc(a).v] == 0) queue.push_back(d.arc(a).v);
    }
  }
  return removed == n;
}

}  // namespace eulerdel
