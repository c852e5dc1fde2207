#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "eulerdel/errors.hpp"
#include "eulerdel/graph.hpp"

namespace eulerdel {

enum class Problem {
  ueed,   // undirected Eulerian edge deletion
  ucoed,  // undirected connected odd edge deletion
  deed,   // directed Eulerian edge deletion
};

std::string_view to_string(Problem p);
std::optional<Problem> parse_problem(std::string_view name);

/// Exact verifier: deleting `s` leaves the graph with the problem's target
/// property. Throws std::invalid_argument if the instance kind does not fit.
bool is_solution(Problem p, const Instance& instance, const EdgeSet& s);

struct OracleVerdict {
  std::optional<int> min_size;     // empty: no solution with at most k deletions
  std::optional<EdgeSet> witness;  // present iff min_size is
};

/// Enumerates deletion sets by increasing size 0..k and returns the first
/// size with a verifying subset.
OracleVerdict brute_force(Problem p, const Instance& instance, int k, int max_edges = 22);

/// Minimum-cardinality T-join: BFS distances between terminals, an exact
/// minimum perfect matching over subsets of T, and the symmetric difference
/// of the matched shortest paths.
EdgeSet min_tjoin(const Graph& g, std::span<const Vertex> terminals, int max_terminals = 24);

/// False when even an unconstrained T-join needs more than k edges, so no
/// co-connected T-join of size <= k can exist.
bool tjoin_lower_bound_prune(const Graph& g, std::span<const Vertex> terminals, int k);

enum class GenMode { ueed, deed };

struct GeneratedInstance {
  Instance instance;
  int k = 0;
  EdgeSet planted;  // deleting these restores the Eulerian base
};

/// Random connected Eulerian base (a Hamiltonian cycle plus random cycles up
/// to `base_edges` edges, 0 meaning just the cycle) with `extra` new edges or
/// arcs added on top.
GeneratedInstance gen_yes_instance(GenMode mode, int n, int extra, std::uint64_t seed, int base_edges = 0);

}  // namespace eulerdel
