#include "eulerdel/tjoin_dp.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <memory>
#include <unordered_set>
#include <utility>

#include "eulerdel/oracle.hpp"

namespace eulerdel {

// ---------------------------------------------------------------------------
// Terminal slots

TerminalSlots::TerminalSlots(std::vector<TerminalSlot> slots, int vertex_count)
    : slots_(std::move(slots)),
      opening_at_(static_cast<std::size_t>(vertex_count), 0),
      closing_at_(static_cast<std::size_t>(vertex_count), 0) {
  if (slots_.size() > kMaxSlots) {
    throw ResourceError("at most " + std::to_string(kMaxSlots) + " terminal slots are supported, got " +
                        std::to_string(slots_.size()));
  }
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const auto& s = slots_[i];
    if (s.vertex < 0 || s.vertex >= vertex_count) throw std::invalid_argument("terminal out of range");
    const SlotMask bit = SlotMask{1} << i;
    if (s.polarity != Polarity::minus) {
      opening_at_[static_cast<std::size_t>(s.vertex)] |= bit;
      opening_mask_ |= bit;
    }
    if (s.polarity != Polarity::plus) {
      closing_at_[static_cast<std::size_t>(s.vertex)] |= bit;
      closing_mask_ |= bit;
    }
    if (s.polarity != Polarity::undirected) directed_ = true;
  }
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (opening_at_[static_cast<std::size_t>(v)] != 0) opening_vertices_.push_back(v);
  }
  path_count_ = directed_ ? static_cast<std::size_t>(std::popcount(closing_mask_)) : slots_.size() / 2;
}

TerminalSlots TerminalSlots::undirected(std::span<const Vertex> terminals, int vertex_count) {
  std::vector<Vertex> sorted(terminals.begin(), terminals.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("undirected terminals must be distinct");
  }
  if (sorted.size() % 2 != 0) throw std::invalid_argument("undirected terminal count must be even");
  std::vector<TerminalSlot> slots;
  for (Vertex v : sorted) slots.push_back({v, Polarity::undirected});
  return TerminalSlots(std::move(slots), vertex_count);
}

TerminalSlots TerminalSlots::directed(const Digraph& d) {
  const auto t = degree_surplus_terminals(d);
  std::vector<TerminalSlot> slots;
  for (Vertex v : t.plus) slots.push_back({v, Polarity::plus});
  for (Vertex v : t.minus) slots.push_back({v, Polarity::minus});
  return TerminalSlots(std::move(slots), d.vertex_count());
}

namespace {

int lowest_free(SlotMask candidates, SlotMask used) {
  const SlotMask free = candidates & ~used;
  return free == 0 ? -1 : std::countr_zero(free);
}

}  // namespace

int TerminalSlots::free_opening_slot(Vertex v, SlotMask used) const {
  return lowest_free(opening_at_[static_cast<std::size_t>(v)], used);
}

int TerminalSlots::free_closing_slot(Vertex v, SlotMask used) const {
  return lowest_free(closing_at_[static_cast<std::size_t>(v)], used);
}

int TerminalSlots::edges_to_finish(SlotMask used, bool in_progress) const {
  const int free_open = std::popcount(opening_mask_ & ~used);
  const int free_close = std::popcount(closing_mask_ & ~used);
  if (directed_) {
    // Every path, including the open one, ends at its own minus slot.
    if (free_open + (in_progress ? 1 : 0) != free_close) return -1;
    return free_close;
  }
  // Undirected slots both open and close, so free_open == free_close.
  if ((free_open + (in_progress ? 1 : 0)) % 2 != 0) return -1;
  return (free_open + 1) / 2;
}

// ---------------------------------------------------------------------------
// Partial solutions

std::optional<PartialSolution> compose(const PartialSolution& p, Traversal step, const CographicRep& rep) {
  if (p.edges.contains(step.edge)) return std::nullopt;
  const bool extend = p.final_vertex != kNoVertex && p.final_vertex == step.from;
  if (extend && std::binary_search(p.last_path_vertices.begin(), p.last_path_vertices.end(), step.to)) {
    return std::nullopt;
  }
  PartialSolution out;
  out.edges = p.edges;
  out.edges.insert(step.edge);
  if (!is_coindependent(rep, out.edges)) return std::nullopt;
  out.used_slots = p.used_slots;
  out.final_vertex = step.to;
  if (extend) {
    out.last_path_vertices = p.last_path_vertices;
    out.last_path_vertices.insert(
        std::lower_bound(out.last_path_vertices.begin(), out.last_path_vertices.end(), step.to), step.to);
    out.last_path_initial_slot = p.last_path_initial_slot;
  } else {
    out.last_path_vertices = {std::min(step.from, step.to), std::max(step.from, step.to)};
  }
  out.wedge = p.wedge;
  return out;
}

DpTable DpTable::base(std::size_t edge_count) {
  DpTable t;
  PartialSolution empty;
  empty.edges = EdgeSet(edge_count);
  empty.wedge = {1};
  t.cells[CellKey{}].push_back(std::move(empty));
  return t;
}

const std::vector<PartialSolution>* DpTable::find(CellKey key) const {
  const auto it = cells.find(key);
  return it == cells.end() ? nullptr : &it->second;
}

void DpStats::record(const RoundStat& s) {
  ++rounds;
  cells += s.cells;
  max_cell = std::max(max_cell, s.max_candidates);
  repset_max = std::max(repset_max, s.max_family);
  const auto idx = static_cast<std::size_t>(s.round - 1);
  if (repset_sizes.size() <= idx) repset_sizes.resize(idx + 1, 0);
  repset_sizes[idx] = std::max(repset_sizes[idx], s.max_family);
  round_stats.push_back(s);
}

// ---------------------------------------------------------------------------
// Pruning

Pruner::Pruner(const CographicRep& rep, int budget, const DpOptions& options, std::uint64_t seed)
    : mode_(options.prune), budget_(budget) {
  const int r = static_cast<int>(rep.rank());
  if (mode_ == PruneMode::truncated) {
    matrix_ = truncate(rep, std::min(budget, r), seed, make_field(options.field_bits)).matrix;
  } else if (mode_ == PruneMode::exact) {
    for (int b = 0; b <= std::min(budget, r); ++b) {
      const std::size_t dim = wedge_dimension(r, b);
      if (dim > options.limits.max_coordinates) {
        throw ResourceError("exact pruning needs " + std::to_string(dim) +
                            " wedge coordinates, above the configured limit of " +
                            std::to_string(options.limits.max_coordinates));
      }
    }
    matrix_ = exact_matrix(rep);
  } else {
    throw std::invalid_argument("a pruner needs a pruning mode");
  }
}

const WedgeLayout& Pruner::layout(int b) {
  auto it = layouts_.find(b);
  if (it == layouts_.end()) it = layouts_.emplace(b, WedgeLayout(rows(), b)).first;
  return it->second;
}

void Pruner::grow(WedgeVector& wedge, int new_size, EdgeId e) {
  wedge = extend_wedge(matrix_, layout(new_size), wedge, e);
}

std::vector<PartialSolution> Pruner::prune(std::vector<PartialSolution> family, int /*round*/) const {
  std::vector<WedgeVector> wedges;
  wedges.reserve(family.size());
  for (auto& p : family) wedges.push_back(std::move(p.wedge));
  const auto kept = select_basis(matrix_.field(), wedges);
  std::vector<PartialSolution> out;
  out.reserve(kept.size());
  for (std::size_t i : kept) {
    out.push_back(std::move(family[i]));
    out.back().wedge = std::move(wedges[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rounds

namespace {

struct MemberKeyHash {
  std::size_t operator()(const PartialSolution* p) const {
    std::size_t h = p->edges.hash();
    for (Vertex v : p->last_path_vertices) h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(v) + 1;
    return h;
  }
};

struct MemberKeyEq {
  bool operator()(const PartialSolution* a, const PartialSolution* b) const {
    return a->edges == b->edges && a->last_path_vertices == b->last_path_vertices;
  }
};

// Collects the children of one round, deduplicated per cell by
// (edges, last_path_vertices) with the first witness kept.
class RoundBuilder {
 public:
  RoundBuilder(const TerminalSlots& slots, int budget, int round, bool feasibility_filter, Pruner* pruner)
      : slots_(slots), budget_(budget), round_(round), feasibility_filter_(feasibility_filter), pruner_(pruner) {}

  bool wanted(SlotMask used, bool in_progress) const {
    if (!feasibility_filter_) return true;
    const int need = slots_.edges_to_finish(used, in_progress);
    return need >= 0 && need <= budget_ - round_;
  }

  void add(PartialSolution child, EdgeId e) {
    const CellKey key{child.used_slots, child.final_vertex};
    if (!wanted(key.used, key.final_vertex != kNoVertex)) return;
    auto& cell = cells_[key];
    if (cell.seen.contains(&child)) return;
    if (pruner_) pruner_->grow(child.wedge, round_, e);
    cell.members.push_back(std::make_unique<PartialSolution>(std::move(child)));
    cell.seen.insert(cell.members.back().get());
  }

  DpTable finish(DpStats* stats) {
    DpTable out;
    out.round = round_;
    RoundStat st;
    st.budget = budget_;
    st.round = round_;
    for (auto& [key, cell] : cells_) {
      std::vector<PartialSolution> family;
      family.reserve(cell.members.size());
      for (auto& m : cell.members) family.push_back(std::move(*m));
      st.candidates += family.size();
      st.max_candidates = std::max(st.max_candidates, family.size());
      if (pruner_) family = pruner_->prune(std::move(family), round_);
      if (family.empty()) continue;
      st.max_family = std::max(st.max_family, family.size());
      ++st.cells;
      out.cells.emplace(key, std::move(family));
    }
    if (stats) stats->record(st);
    return out;
  }

 private:
  struct Cell {
    std::vector<std::unique_ptr<PartialSolution>> members;
    std::unordered_set<const PartialSolution*, MemberKeyHash, MemberKeyEq> seen;
  };

  const TerminalSlots& slots_;
  int budget_;
  int round_;
  bool feasibility_filter_;
  Pruner* pruner_;
  std::map<CellKey, Cell> cells_;
};

// Shared body of both rounds. `out_steps(v)` lists the traversals leaving v.
template <typename OutSteps>
DpTable run_round(const DpTable& prev, const TerminalSlots& slots, int budget, const CographicRep& rep,
                  Pruner* pruner, DpStats* stats, bool feasibility_filter, OutSteps&& out_steps) {
  const int round = prev.round + 1;
  RoundBuilder builder(slots, budget, round, feasibility_filter, pruner);
  std::vector<Traversal> steps;
  for (const auto& [key, family] : prev.cells) {
    for (const PartialSolution& p : family) {
      if (key.final_vertex == kNoVertex) {
        // Open a new path at a free opening slot, and possibly close it at once.
        for (Vertex t : slots.opening_vertices()) {
          const int open = slots.free_opening_slot(t, key.used);
          if (open < 0) continue;
          steps.clear();
          out_steps(t, steps);
          for (const Traversal& step : steps) {
            auto child = compose(p, step, rep);
            if (!child) continue;
            child->used_slots |= SlotMask{1} << open;
            child->last_path_initial_slot = open;
            const int close = slots.free_closing_slot(step.to, child->used_slots);
            if (close >= 0) {
              PartialSolution closed = *child;
              closed.used_slots |= SlotMask{1} << close;
              closed.final_vertex = kNoVertex;
              closed.last_path_vertices.clear();
              closed.last_path_initial_slot = -1;
              builder.add(std::move(closed), step.edge);
            }
            builder.add(std::move(*child), step.edge);
          }
        }
      } else {
        steps.clear();
        out_steps(key.final_vertex, steps);
        for (const Traversal& step : steps) {
          auto child = compose(p, step, rep);
          if (!child) continue;
          const int close = slots.free_closing_slot(step.to, child->used_slots);
          if (close >= 0) {
            PartialSolution closed = *child;
            closed.used_slots |= SlotMask{1} << close;
            closed.final_vertex = kNoVertex;
            closed.last_path_vertices.clear();
            closed.last_path_initial_slot = -1;
            builder.add(std::move(closed), step.edge);
          }
          builder.add(std::move(*child), step.edge);
        }
      }
    }
  }
  return builder.finish(stats);
}

}  // namespace

DpTable dp_round_undirected(const DpTable& prev, const Graph& g, const TerminalSlots& slots, int budget,
                            const CographicRep& rep, Pruner* pruner, DpStats* stats, bool feasibility_filter) {
  return run_round(prev, slots, budget, rep, pruner, stats, feasibility_filter,
                   [&g](Vertex v, std::vector<Traversal>& out) {
                     for (EdgeId e : g.incident(v)) out.push_back({e, v, g.other_end(e, v)});
                   });
}

DpTable dp_round_directed(const DpTable& prev, const Digraph& d, const TerminalSlots& slots, int budget,
                          const CographicRep& rep, Pruner* pruner, DpStats* stats, bool feasibility_filter) {
  return run_round(prev, slots, budget, rep, pruner, stats, feasibility_filter,
                   [&d](Vertex v, std::vector<Traversal>& out) {
                     for (EdgeId a : d.out_arcs(v)) out.push_back({a, v, d.arc(a).v});
                   });
}

// ---------------------------------------------------------------------------
// Solvers

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, int budget, int attempt) {
  return splitmix64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(budget))) +
                    static_cast<std::uint64_t>(attempt));
}

// Drops cycles from the deleted set: removing a cycle keeps every degree
// parity (or balance) and only adds edges back to the remaining graph.
// `next_cycle` returns the edges of some cycle of s, or an empty list.
template <typename FindCycle>
EdgeSet remove_cycles(EdgeSet s, FindCycle&& next_cycle) {
  for (;;) {
    const auto cycle = next_cycle(s);
    if (cycle.empty()) return s;
    for (EdgeId e : cycle) s.erase(e);
  }
}

// Edges of an undirected cycle in (V, s), found by DFS, or empty.
std::vector<EdgeId> undirected_cycle(const Graph& g, const EdgeSet& s) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> depth(n, -1);
  std::vector<EdgeId> via(n, -1);
  for (Vertex root = 0; root < g.vertex_count(); ++root) {
    if (depth[static_cast<std::size_t>(root)] >= 0) continue;
    depth[static_cast<std::size_t>(root)] = 0;
    std::vector<Vertex> stack{root};
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        if (!s.contains(e) || e == via[static_cast<std::size_t>(v)]) continue;
        const Vertex w = g.other_end(e, v);
        if (depth[static_cast<std::size_t>(w)] < 0) {
          depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
          via[static_cast<std::size_t>(w)] = e;
          stack.push_back(w);
          continue;
        }
        // Closing edge: walk both endpoints up to their common ancestor.
        std::vector<EdgeId> cycle{e};
        Vertex a = v;
        Vertex b = w;
        while (a != b) {
          if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
            const EdgeId up = via[static_cast<std::size_t>(a)];
            cycle.push_back(up);
            a = g.other_end(up, a);
          } else {
            const EdgeId up = via[static_cast<std::size_t>(b)];
            cycle.push_back(up);
            b = g.other_end(up, b);
          }
        }
        return cycle;
      }
    }
  }
  return {};
}

// Arcs of a directed cycle in D(s), or empty.
std::vector<EdgeId> directed_cycle(const Digraph& d, const EdgeSet& s) {
  const auto n = static_cast<std::size_t>(d.vertex_count());
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<EdgeId> via(n, -1);
  for (Vertex root = 0; root < d.vertex_count(); ++root) {
    if (state[static_cast<std::size_t>(root)] != 0) continue;
    std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
    state[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto out = d.out_arcs(v);
      if (next == out.size()) {
        state[static_cast<std::size_t>(v)] = 2;
        stack.pop_back();
        continue;
      }
      const EdgeId a = out[next++];
      if (!s.contains(a)) continue;
      const Vertex w = d.arc(a).v;
      if (state[static_cast<std::size_t>(w)] == 0) {
        state[static_cast<std::size_t>(w)] = 1;
        via[static_cast<std::size_t>(w)] = a;
        stack.push_back({w, 0});
      } else if (state[static_cast<std::size_t>(w)] == 1) {
        std::vector<EdgeId> cycle{a};
        for (Vertex x = v; x != w;) {
          const EdgeId up = via[static_cast<std::size_t>(x)];
          cycle.push_back(up);
          x = d.arc(up).u;
        }
        return cycle;
      }
    }
  }
  return {};
}

bool is_co_connected_tjoin(const Graph& g, std::span<const Vertex> terminals, const EdgeSet& s) {
  std::vector<int> parity(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e : s.ids()) {
    parity[static_cast<std::size_t>(g.edge(e).u)] ^= 1;
    parity[static_cast<std::size_t>(g.edge(e).v)] ^= 1;
  }
  for (Vertex t : terminals) parity[static_cast<std::size_t>(t)] ^= 1;
  if (std::any_of(parity.begin(), parity.end(), [](int x) { return x != 0; })) return false;
  return is_connected(g, s);
}

// One budget run: rounds 1..budget, then the completed cell.
template <typename Round>
std::optional<EdgeSet> run_budget(std::size_t edge_count, const TerminalSlots& slots, int budget,
                                  const CographicRep& rep, const DpOptions& options, int attempt, DpStats& stats,
                                  Round&& round) {
  std::optional<Pruner> pruner;
  if (options.prune != PruneMode::none) pruner.emplace(rep, budget, options, derive_seed(options.seed, budget, attempt));
  DpTable table = DpTable::base(edge_count);
  for (int i = 1; i <= budget; ++i) {
    table = round(table, budget, pruner ? &*pruner : nullptr, stats);
    if (table.cells.empty()) return std::nullopt;
  }
  const auto* done = table.find(CellKey{slots.full_mask(), kNoVertex});
  if (!done || done->empty()) return std::nullopt;
  return done->front().edges;
}

}  // namespace

SolveResult solve_co_connected_tjoin(const Graph& g, std::span<const Vertex> terminals, int k,
                                     const DpOptions& options) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (!is_connected(g)) throw std::invalid_argument("input graph is disconnected");
  SolveResult result;
  const auto t = static_cast<int>(terminals.size());
  if (t % 2 != 0 || t > 2 * k) return result;
  if (t == 0) {
    result.solution = g.empty_edge_set();
    return result;
  }
  const auto slots = TerminalSlots::undirected(terminals, g.vertex_count());
  const auto rep = build_cographic(g);

  int start = std::max(1, t / 2);
  if (options.lower_bound_filter && t <= 24) {
    start = std::max(start, static_cast<int>(min_tjoin(g, terminals).size()));
  }

  for (int attempt = 0; attempt < 2; ++attempt) {
    bool failed = false;
    for (int budget = start; budget <= k; ++budget) {
      auto found = run_budget(static_cast<std::size_t>(g.edge_count()), slots, budget, rep, options, attempt,
                              result.stats, [&](const DpTable& prev, int b, Pruner* p, DpStats& st) {
                                return dp_round_undirected(prev, g, slots, b, rep, p, &st,
                                                           options.feasibility_filter);
                              });
      if (!found) continue;
      EdgeSet s = remove_cycles(std::move(*found), [&g](const EdgeSet& x) { return undirected_cycle(g, x); });
      if (is_co_connected_tjoin(g, terminals, s)) {
        result.solution = std::move(s);
        return result;
      }
      failed = true;
      break;
    }
    if (!failed) break;
    ++result.stats.retries;
  }
  if (result.stats.retries > 1) throw SolverError("returned set fails verification after retry");
  return result;
}

SolveResult solve_ueed(const Graph& g, int k, const DpOptions& options) {
  const auto t = odd_vertices(g);
  auto r = solve_co_connected_tjoin(g, t, k, options);
  if (r.solution && !eulerian_after_deletion(g, *r.solution)) throw SolverError("returned set fails verification");
  return r;
}

SolveResult solve_ucoed(const Graph& g, int k, const DpOptions& options) {
  const auto t = even_vertices(g);
  if (t.size() % 2 != 0) {
    if (!is_connected(g)) throw std::invalid_argument("input graph is disconnected");
    return {};
  }
  auto r = solve_co_connected_tjoin(g, t, k, options);
  if (r.solution && !connected_odd_after_deletion(g, *r.solution)) {
    throw SolverError("returned set fails verification");
  }
  return r;
}

SolveResult solve_directed(const Digraph& d, int k, const DpOptions& options) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (!is_weakly_connected(d)) throw std::invalid_argument("input digraph is not weakly connected");
  SolveResult result;
  const auto slots = TerminalSlots::directed(d);
  const int plus = static_cast<int>(slots.path_count());
  if (plus > k) return result;
  if (slots.size() == 0) {
    result.solution = d.empty_arc_set();
    return result;
  }
  const Graph under = d.underlying();
  const auto rep = build_cographic(under);
  const int start = std::max(1, plus);
  for (int attempt = 0; attempt < 2; ++attempt) {
    bool failed = false;
    for (int budget = start; budget <= k; ++budget) {
      auto found = run_budget(static_cast<std::size_t>(d.arc_count()), slots, budget, rep, options, attempt,
                              result.stats, [&](const DpTable& prev, int b, Pruner* p, DpStats& st) {
                                return dp_round_directed(prev, d, slots, b, rep, p, &st, options.feasibility_filter);
                              });
      if (!found) continue;
      EdgeSet s = remove_cycles(std::move(*found), [&d](const EdgeSet& x) { return directed_cycle(d, x); });
      if (eulerian_after_deletion(d, s)) {
        result.solution = std::move(s);
        return result;
      }
      failed = true;
      break;
    }
    if (!failed) break;
    ++result.stats.retries;
  }
  if (result.stats.retries > 1) throw SolverError("returned set fails verification after retry");
  return result;
}

}  // namespace eulerdel
