#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "eulerdel/cographic.hpp"
#include "eulerdel/errors.hpp"
#include "eulerdel/gf2.hpp"
#include "eulerdel/graph.hpp"

namespace eulerdel {

struct FamilyMember {
  EdgeSet set;
  std::size_t payload = 0;  // opaque to this module
};

/// Ordered family of equal-size edge sets, deduplicated by set (first payload wins).
class SetFamily {
 public:
  explicit SetFamily(int set_size) : set_size_(set_size) {}

  /// Returns false when the set is already present.
  bool add(EdgeSet set, std::size_t payload);

  int set_size() const { return set_size_; }
  std::span<const FamilyMember> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

 private:
  int set_size_;
  std::vector<FamilyMember> members_;
};

/// All b x b minors of a member's columns, one per b-subset of rows.
using WedgeVector = std::vector<FieldElem>;

/// Colexicographic indexing of the b-subsets of {0, ..., t-1}, plus the
/// bookkeeping needed to grow a (b-1)-wedge into a b-wedge.
class WedgeLayout {
 public:
  WedgeLayout(int rows, int b);

  int rows() const { return rows_; }
  int set_size() const { return b_; }
  std::size_t dimension() const { return dimension_; }
  std::span<const int> subset(std::size_t index) const {
    return {subsets_.data() + index * static_cast<std::size_t>(b_), static_cast<std::size_t>(b_)};
  }
  /// Colex index of the (b-1)-subset obtained by dropping position `pos` of subset `index`.
  std::size_t drop_index(std::size_t index, int pos) const {
    return drops_[index * static_cast<std::size_t>(b_) + static_cast<std::size_t>(pos)];
  }

 private:
  int rows_;
  int b_;
  std::size_t dimension_;
  std::vector<int> subsets_;
  std::vector<std::size_t> drops_;
};

/// Number of coordinates of a b-wedge over `rows` rows, saturating at SIZE_MAX.
std::size_t wedge_dimension(int rows, int b);

/// Coordinates det(rep[R, x]) for every b-subset R of rows, in colex order.
WedgeVector wedge(const ExtMatrix& rep, std::span<const EdgeId> x);
WedgeVector wedge(const TruncatedRep& rep, const EdgeSet& x);

/// wedge(X + e) computed from wedge(X) by Laplace expansion along column e.
/// `grown` must describe |X| + 1 subsets of the same row count. In
/// characteristic 2 the expansion has no signs and the result is
/// independent of column order.
WedgeVector extend_wedge(const ExtMatrix& rep, const WedgeLayout& grown, std::span<const FieldElem> parent,
                         EdgeId e);

/// Greedy basis over the vectors in order; returns the indices kept. Zero
/// vectors are never kept.
std::vector<std::size_t> select_basis(const ExtField& field, std::span<const WedgeVector> vectors);

struct RepsetLimits {
  std::size_t max_coordinates = std::size_t{1} << 24;
};

/// q-representative subfamily with respect to a rank-truncated representation.
/// Requires rep.target_rank == min(b + q, rep.source_rank).
SetFamily representative_family(const SetFamily& family, const TruncatedRep& rep, int q);

/// q-representative subfamily computed in the full (untruncated) space over
/// GF(2); it is representative for every q at once.
SetFamily representative_family(const SetFamily& family, const CographicRep& rep, int q,
                                 const RepsetLimits& limits = {});

}  // namespace eulerdel
