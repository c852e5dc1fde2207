#include "eulerdel/repset.hpp"

#include <limits>
#include <string>

namespace eulerdel {

bool SetFamily::add(EdgeSet set, std::size_t payload) {
  if (set.size() != static_cast<std::size_t>(set_size_)) {
    throw std::invalid_argument("family member has " + std::to_string(set.size()) + " elements, expected " +
                                std::to_string(set_size_));
  }
  for (const auto& m : members_) {
    if (m.set == set) return false;
  }
  members_.push_back({std::move(set), payload});
  return true;
}

std::size_t wedge_dimension(int rows, int b) {
  if (b < 0 || rows < 0 || b > rows) return 0;
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t c = 1;
  for (int i = 1; i <= b; ++i) {
    // c * (rows - b + i) / i stays exact because c == C(rows - b + i - 1, i - 1).
    const auto mult = static_cast<std::size_t>(rows - b + i);
    if (c > kMax / mult) return kMax;
    c = c * mult / static_cast<std::size_t>(i);
  }
  return c;
}

namespace {

// Colex rank of a sorted subset: sum over positions j of C(s_j, j + 1).
std::size_t colex_rank(std::span<const int> sorted) {
  std::size_t r = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) r += wedge_dimension(sorted[j], static_cast<int>(j + 1));
  return r;
}

}  // namespace

WedgeLayout::WedgeLayout(int rows, int b) : rows_(rows), b_(b), dimension_(wedge_dimension(rows, b)) {
  if (b < 0 || b > rows) throw std::invalid_argument("wedge layout needs 0 <= b <= rows");
  const auto bs = static_cast<std::size_t>(b);
  subsets_.reserve(dimension_ * bs);
  drops_.reserve(dimension_ * bs);
  std::vector<int> cur(bs);
  for (int j = 0; j < b; ++j) cur[static_cast<std::size_t>(j)] = j;
  std::vector<int> smaller(bs > 0 ? bs - 1 : 0);
  for (std::size_t idx = 0; idx < dimension_; ++idx) {
    subsets_.insert(subsets_.end(), cur.begin(), cur.end());
    for (std::size_t pos = 0; pos < bs; ++pos) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < bs; ++j) {
        if (j != pos) smaller[k++] = cur[j];
      }
      drops_.push_back(colex_rank(smaller));
    }
    // Next subset in colex order.
    std::size_t j = 0;
    while (j < bs && cur[j] + 1 == (j + 1 < bs ? cur[j + 1] : rows)) ++j;
    if (j == bs) break;
    ++cur[j];
    for (std::size_t i = 0; i < j; ++i) cur[i] = static_cast<int>(i);
  }
}

WedgeVector wedge(const ExtMatrix& rep, std::span<const EdgeId> x) {
  const int t = static_cast<int>(rep.rows());
  const int b = static_cast<int>(x.size());
  if (b > t) throw std::invalid_argument("wedge of a set larger than the representation rank");
  const WedgeLayout layout(t, b);
  WedgeVector w(layout.dimension());
  for (std::size_t i = 0; i < layout.dimension(); ++i) w[i] = det_submatrix(rep, layout.subset(i), x);
  return w;
}

WedgeVector wedge(const TruncatedRep& rep, const EdgeSet& x) {
  const auto ids = x.ids();
  return wedge(rep.matrix, std::span<const EdgeId>(ids));
}

WedgeVector extend_wedge(const ExtMatrix& rep, const WedgeLayout& grown, std::span<const FieldElem> parent,
                         EdgeId e) {
  const ExtField& f = rep.field();
  const int b = grown.set_size();
  if (b < 1) throw std::invalid_argument("extend_wedge needs a layout with b >= 1");
  if (parent.size() != wedge_dimension(grown.rows(), b - 1)) {
    throw std::invalid_argument("parent wedge has the wrong dimension");
  }
  WedgeVector w(grown.dimension(), 0);
  const auto col = static_cast<std::size_t>(e);
  for (std::size_t idx = 0; idx < grown.dimension(); ++idx) {
    const auto rows = grown.subset(idx);
    FieldElem acc = 0;
    for (int pos = 0; pos < b; ++pos) {
      const FieldElem x = rep.at(static_cast<std::size_t>(rows[static_cast<std::size_t>(pos)]), col);
      if (x == 0) continue;
      const FieldElem minor = parent[grown.drop_index(idx, pos)];
      if (minor != 0) acc ^= f.mul(x, minor);
    }
    w[idx] = acc;
  }
  return w;
}

std::vector<std::size_t> select_basis(const ExtField& field, std::span<const WedgeVector> vectors) {
  std::vector<std::size_t> kept;
  if (vectors.empty()) return kept;
  VectorBasis basis(field, vectors.front().size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (basis.insert(vectors[i])) kept.push_back(i);
    if (basis.size() == basis.dim()) break;
  }
  return kept;
}

namespace {

SetFamily select_from(const SetFamily& family, const ExtMatrix& matrix) {
  std::vector<WedgeVector> wedges;
  wedges.reserve(family.size());
  for (const auto& m : family.members()) {
    const auto ids = m.set.ids();
    wedges.push_back(wedge(matrix, std::span<const EdgeId>(ids)));
  }
  SetFamily out(family.set_size());
  for (std::size_t i : select_basis(matrix.field(), wedges)) {
    const auto& m = family.members()[i];
    out.add(m.set, m.payload);
  }
  return out;
}

}  // namespace

SetFamily representative_family(const SetFamily& family, const TruncatedRep& rep, int q) {
  if (q < 0) throw std::invalid_argument("q must be non-negative");
  const int b = family.set_size();
  const int want = std::min(b + q, rep.source_rank);
  if (rep.target_rank != want) {
    throw std::invalid_argument("truncation rank " + std::to_string(rep.target_rank) + " does not match min(b+q, r) = " +
                                std::to_string(want));
  }
  // Sets larger than the representation rank are dependent; none can be extended.
  if (b > rep.target_rank) return SetFamily(b);
  return select_from(family, rep.matrix);
}

SetFamily representative_family(const SetFamily& family, const CographicRep& rep, int q,
                                const RepsetLimits& limits) {
  if (q < 0) throw std::invalid_argument("q must be non-negative");
  const int b = family.set_size();
  const auto r = static_cast<int>(rep.rank());
  if (b > r) return SetFamily(b);
  const std::size_t dim = wedge_dimension(r, b);
  if (dim > limits.max_coordinates) {
    throw ResourceError("exact representative family needs " + std::to_string(dim) +
                        " wedge coordinates, above the configured limit of " +
                        std::to_string(limits.max_coordinates));
  }
  return select_from(family, exact_matrix(rep));
}

}  // namespace eulerdel
