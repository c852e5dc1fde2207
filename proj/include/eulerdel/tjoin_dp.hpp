#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "eulerdel/cographic.hpp"
#include "eulerdel/errors.hpp"
#include "eulerdel/graph.hpp"
#include "eulerdel/repset.hpp"

namespace eulerdel {

enum class Polarity { undirected, plus, minus };

struct TerminalSlot {
  Vertex vertex;
  Polarity polarity;
};

using SlotMask = std::uint64_t;
inline constexpr std::size_t kMaxSlots = 64;

/// Terminal occurrences indexing the used-slot bitmask. Undirected terminals
/// are distinct vertices; in the directed case a vertex appears once per unit
/// of degree surplus (plus) or deficit (minus).
class TerminalSlots {
 public:
  static TerminalSlots undirected(std::span<const Vertex> terminals, int vertex_count);
  static TerminalSlots directed(const Digraph& d);

  std::size_t size() const { return slots_.size(); }
  const TerminalSlot& operator[](std::size_t i) const { return slots_[i]; }
  std::span<const TerminalSlot> slots() const { return slots_; }
  SlotMask full_mask() const {
    return slots_.size() == 64 ? ~SlotMask{0} : (SlotMask{1} << slots_.size()) - 1;
  }
  /// Number of paths a complete path system has.
  std::size_t path_count() const { return path_count_; }

  /// Lowest-index free slot at v where a path may start, or -1.
  int free_opening_slot(Vertex v, SlotMask used) const;
  /// Lowest-index free slot at v where a path may end, or -1.
  int free_closing_slot(Vertex v, SlotMask used) const;
  /// Vertices owning at least one opening slot, ascending.
  std::span<const Vertex> opening_vertices() const { return opening_vertices_; }
  /// Fewest further edges that can use up every free slot of `used`, or -1
  /// when no completion exists. `in_progress` says a path is still open.
  int edges_to_finish(SlotMask used, bool in_progress) const;

 private:
  TerminalSlots(std::vector<TerminalSlot> slots, int vertex_count);

  std::vector<TerminalSlot> slots_;
  std::vector<SlotMask> opening_at_;  // per vertex
  std::vector<SlotMask> closing_at_;  // per vertex
  SlotMask opening_mask_ = 0;
  SlotMask closing_mask_ = 0;
  bool directed_ = false;
  std::vector<Vertex> opening_vertices_;
  std::size_t path_count_ = 0;
};

/// One member of a DP cell: an edge-disjoint path system whose deletion keeps
/// the graph connected. All paths but the last connect two terminal slots;
/// the last one is still growing when final_vertex is set.
struct PartialSolution {
  EdgeSet edges;
  SlotMask used_slots = 0;
  Vertex final_vertex = kNoVertex;          // kNoVertex: no path in progress
  std::vector<Vertex> last_path_vertices;   // sorted; empty when nothing is in progress
  int last_path_initial_slot = -1;
  WedgeVector wedge;                        // pruning cache, not part of identity
};

/// Traversal of an edge (or arc) from one endpoint to the other.
struct Traversal {
  EdgeId edge;
  Vertex from;
  Vertex to;
};

/// Appends `step` to the path system: it grows the in-progress path when that
/// path ends at step.from, and starts a new single-edge path otherwise.
/// Rejects revisiting a vertex of the in-progress path and any result whose
/// deletion would disconnect the graph. Slot bookkeeping is left to the caller.
std::optional<PartialSolution> compose(const PartialSolution& p, Traversal step, const CographicRep& rep);

struct CellKey {
  SlotMask used = 0;
  Vertex final_vertex = kNoVertex;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

/// All cells of one DP round.
struct DpTable {
  int round = 0;
  std::map<CellKey, std::vector<PartialSolution>> cells;

  /// The round-0 table: only the empty path system, with nothing in progress.
  static DpTable base(std::size_t edge_count);
  const std::vector<PartialSolution>* find(CellKey key) const;
};

enum class PruneMode {
  truncated,  // representative families over a random rank truncation
  exact,      // representative families in the full co-graphic space
  none,       // keep every partial solution
};

struct DpOptions {
  PruneMode prune = PruneMode::truncated;
  int field_bits = 16;
  std::uint64_t seed = 0;
  RepsetLimits limits;
  /// Skip budgets below the minimum unconstrained T-join (undirected only).
  bool lower_bound_filter = true;
  /// Drop cells whose free slots cannot all be used within the remaining budget.
  bool feasibility_filter = true;
};

struct RoundStat {
  int budget = 0;
  int round = 0;
  std::size_t cells = 0;           // nonempty cells after pruning
  std::size_t candidates = 0;      // distinct partial solutions before pruning
  std::size_t max_candidates = 0;  // largest cell before pruning
  std::size_t max_family = 0;      // largest cell after pruning
};

struct DpStats {
  int rounds = 0;
  std::size_t cells = 0;
  std::size_t max_cell = 0;
  std::size_t repset_max = 0;
  std::vector<std::size_t> repset_sizes;  // index i-1: largest family after round i
  std::vector<RoundStat> round_stats;
  int retries = 0;

  void record(const RoundStat& s);
};

/// Representative-family pruning for one budget run. Owns the matrix the
/// wedge vectors are computed against, so partial solutions carry wedges that
/// are only meaningful within the same run.
class Pruner {
 public:
  Pruner(const CographicRep& rep, int budget, const DpOptions& options, std::uint64_t seed);

  PruneMode mode() const { return mode_; }
  int budget() const { return budget_; }
  int rows() const { return static_cast<int>(matrix_.rows()); }

  /// Wedge of the empty set.
  WedgeVector empty_wedge() const { return {1}; }
  /// Replaces `wedge`, a wedge of |edges| - 1 elements, by the wedge including e.
  void grow(WedgeVector& wedge, int new_size, EdgeId e);
  /// Keeps a representative subfamily of a cell at round `round`.
  std::vector<PartialSolution> prune(std::vector<PartialSolution> family, int round) const;

 private:
  const WedgeLayout& layout(int b);

  PruneMode mode_;
  int budget_;
  ExtMatrix matrix_;
  std::map<int, WedgeLayout> layouts_;
};

/// One round of the undirected recurrences: extend the in-progress path,
/// open a path at a free terminal, close at a free terminal, or add a
/// single-edge path between two free terminals; then prune each cell.
/// `pruner` may be null (no pruning).
DpTable dp_round_undirected(const DpTable& prev, const Graph& g, const TerminalSlots& slots, int budget,
                            const CographicRep& rep, Pruner* pruner, DpStats* stats = nullptr,
                            bool feasibility_filter = true);

/// Directed variant: arcs are followed forward only, paths open at plus slots
/// and close at minus slots; independence is tested in the co-graphic matroid
/// of the underlying multigraph (`rep`).
DpTable dp_round_directed(const DpTable& prev, const Digraph& d, const TerminalSlots& slots, int budget,
                          const CographicRep& rep, Pruner* pruner, DpStats* stats = nullptr,
                          bool feasibility_filter = true);

struct SolveResult {
  std::optional<EdgeSet> solution;  // empty: NO
  DpStats stats;
};

SolveResult solve_co_connected_tjoin(const Graph& g, std::span<const Vertex> terminals, int k,
                                     const DpOptions& options = {});
SolveResult solve_ueed(const Graph& g, int k, const DpOptions& options = {});
SolveResult solve_ucoed(const Graph& g, int k, const DpOptions& options = {});
SolveResult solve_directed(const Digraph& d, int k, const DpOptions& options = {});

}  // namespace eulerdel
