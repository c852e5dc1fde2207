#include "eulerdel/gf2.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace eulerdel {

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), data_(rows * words_per_row_, 0) {}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string_view> rows) {
  const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  BitMatrix m(rows.size(), cols);
  std::size_t r = 0;
  for (std::string_view row : rows) {
    if (row.size() != cols) throw std::invalid_argument("ragged bit matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (row[c] != '0' && row[c] != '1') throw std::invalid_argument("bit matrix entry not 0/1");
      m.set(r, c, row[c] == '1');
    }
    ++r;
  }
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  auto& w = data_[r * words_per_row_ + (c >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  w = value ? (w | bit) : (w & ~bit);
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r, true);
    }
  }
  return t;
}

BitMatrix BitMatrix::select_columns(std::span<const int> cols) const {
  BitMatrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (get(r, static_cast<std::size_t>(cols[j]))) out.set(r, j, true);
    }
  }
  return out;
}

std::size_t rank(BitMatrix m) {
  const std::size_t wpr = m.words_per_row();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      auto a = m.row(pivot);
      auto b = m.row(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const auto prow = m.row(rank);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (!m.get(r, c)) continue;
      auto row = m.row(r);
      for (std::size_t w = c >> 6; w < wpr; ++w) row[w] ^= prow[w];
    }
    ++rank;
  }
  return rank;
}

namespace {

void check_columns(std::size_t cols, std::span<const int> selected) {
  for (int c : selected) {
    if (c < 0 || static_cast<std::size_t>(c) >= cols) {
      throw std::out_of_range("column index " + std::to_string(c) + " out of range");
    }
  }
}

// Greedy xor-basis over packed GF(2) vectors, kept in insertion-order echelon form.
class BitBasis {
 public:
  explicit BitBasis(std::size_t words) : words_(words), scratch_(words) {}

  bool insert(std::span<const std::uint64_t> v) {
    std::copy(v.begin(), v.end(), scratch_.begin());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const std::size_t p = pivots_[i];
      if ((scratch_[p >> 6] >> (p & 63)) & 1U) {
        const std::uint64_t* row = rows_.data() + i * words_;
        for (std::size_t w = 0; w < words_; ++w) scratch_[w] ^= row[w];
      }
    }
    for (std::size_t w = 0; w < words_; ++w) {
      if (scratch_[w]) {
        pivots_.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(scratch_[w])));
        rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
        return true;
      }
    }
    return false;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::uint64_t> scratch_;
};

}  // namespace

std::vector<int> column_basis(const BitMatrix& m, std::span<const int> order) {
  check_columns(m.cols(), order);
  const BitMatrix t = m.transpose();
  BitBasis basis(t.words_per_row());
  std::vector<int> chosen;
  for (int c : order) {
    if (basis.insert(t.row(static_cast<std::size_t>(c)))) chosen.push_back(c);
  }
  return chosen;
}

bool columns_independent(const BitMatrix& m, std::span<const int> cols) {
  return column_basis(m, cols).size() == cols.size();
}

// ---------------------------------------------------------------------------
// ExtField

namespace {

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

}  // namespace

bool ExtField::is_irreducible(std::uint64_t poly) {
  const int deg = poly_degree(poly);
  if (deg < 1) return false;
  for (std::uint64_t d = 2; poly_degree(d) <= deg / 2; ++d) {
    if (poly_mod(poly, d) == 0) return false;
  }
  return true;
}

std::uint64_t ExtField::default_polynomial(int degree) {
  if (degree < 1 || degree > 32) throw std::invalid_argument("field degree must be in [1, 32]");
  if (degree == 16) return 0x1002BULL;  // x^16 + x^5 + x^3 + x + 1
  const std::uint64_t top = std::uint64_t{1} << degree;
  for (std::uint64_t p = top; p < 2 * top; ++p) {
    if (is_irreducible(p)) return p;
  }
  throw std::logic_error("no irreducible polynomial found");
}

ExtField::ExtField(int degree, std::uint64_t reduction_poly) : degree_(degree), poly_(reduction_poly) {
  if (degree < 1 || degree > 32) throw std::invalid_argument("field degree must be in [1, 32]");
  if (poly_degree(reduction_poly) != degree) {
    throw std::invalid_argument("reduction polynomial degree does not match field degree");
  }
  if (!is_irreducible(reduction_poly)) throw std::invalid_argument("reduction polynomial is reducible");

  if (degree <= 16) {
    const std::uint32_t group = static_cast<std::uint32_t>(size() - 1);
    for (FieldElem g = degree == 1 ? 1 : 2; g < size(); ++g) {
      std::vector<FieldElem> powers;
      powers.reserve(group);
      FieldElem x = 1;
      for (std::uint32_t i = 0; i < group; ++i) {
        powers.push_back(x);
        x = slow_mul(x, g);
        if (x == 1 && i + 1 < group) break;
      }
      if (powers.size() != group) continue;
      exp_.resize(2 * static_cast<std::size_t>(group));
      log_.assign(size(), 0);
      for (std::uint32_t i = 0; i < group; ++i) {
        exp_[i] = powers[i];
        exp_[i + group] = powers[i];
        log_[powers[i]] = i;
      }
      return;
    }
    throw std::logic_error("no generator found for multiplicative group");
  }
}

FieldElem ExtField::slow_mul(FieldElem a, FieldElem b) const {
  std::uint64_t prod = 0;
  std::uint64_t aa = a;
  while (b) {
    if (b & 1U) prod ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  return static_cast<FieldElem>(poly_mod(prod, poly_));
}

FieldElem ExtField::pow(FieldElem a, std::uint64_t e) const {
  FieldElem result = 1;
  FieldElem base = a;
  while (e) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FieldElem ExtField::inv(FieldElem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (!log_.empty()) {
    const std::uint32_t group = static_cast<std::uint32_t>(size() - 1);
    return exp_[(group - log_[a]) % group];
  }
  return pow(a, size() - 2);
}

FieldPtr make_field(int degree, std::uint64_t reduction_poly) {
  return std::make_shared<const ExtField>(degree, reduction_poly);
}

FieldPtr make_field(int degree) {
  // Table construction is the expensive part; share one instance per degree.
  static std::mutex mu;
  static std::map<int, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;
  auto field = make_field(degree, ExtField::default_polynomial(degree));
  cache.emplace(degree, field);
  return field;
}

FieldPtr gf2_field() { return make_field(1); }

// ---------------------------------------------------------------------------
// ExtMatrix

ExtMatrix::ExtMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ExtMatrix ExtMatrix::embed(const BitMatrix& m, FieldPtr field) {
  ExtMatrix out(std::move(field), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.data_[r * m.cols() + c] = m.get(r, c) ? 1 : 0;
  }
  return out;
}

void ExtMatrix::set(std::size_t r, std::size_t c, FieldElem value) {
  if (value >= field_->size()) throw std::invalid_argument("field element out of range");
  data_[r * cols_ + c] = value;
}

ExtMatrix ExtMatrix::transpose() const {
  ExtMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  }
  return t;
}

namespace {

// In-place row reduction of a dense rows x cols block. Returns the rank; if
// `det` is non-null and the block is square, stores the determinant.
std::size_t eliminate(const ExtField& f, std::vector<FieldElem>& a, std::size_t rows, std::size_t cols,
                      FieldElem* det) {
  std::size_t rank = 0;
  FieldElem d = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) {
      d = 0;
      continue;
    }
    if (pivot != rank) {
      // Row swaps flip the sign, which is a no-op in characteristic 2.
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    }
    const FieldElem p = a[rank * cols + c];
    d = f.mul(d, p);
    const FieldElem pinv = f.inv(p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const FieldElem x = a[r * cols + c];
      if (x == 0) continue;
      const FieldElem factor = f.mul(x, pinv);
      for (std::size_t k = c; k < cols; ++k) {
        a[r * cols + k] ^= f.mul(factor, a[rank * cols + k]);
      }
    }
    ++rank;
  }
  if (det) *det = (rank == rows && rows == cols) ? d : 0;
  return rank;
}

}  // namespace

std::size_t rank(ExtMatrix m) {
  std::vector<FieldElem> a(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) a[r * m.cols() + c] = m.at(r, c);
  }
  return eliminate(m.field(), a, m.rows(), m.cols(), nullptr);
}

std::vector<int> column_basis(const ExtMatrix& m, std::span<const int> order) {
  check_columns(m.cols(), order);
  VectorBasis basis(m.field(), m.rows());
  std::vector<FieldElem> col(m.rows());
  std::vector<int> chosen;
  for (int c : order) {
    for (std::size_t r = 0; r < m.rows(); ++r) col[r] = m.at(r, static_cast<std::size_t>(c));
    if (basis.insert(col)) chosen.push_back(c);
  }
  return chosen;
}

bool columns_independent(const ExtMatrix& m, std::span<const int> cols) {
  return column_basis(m, cols).size() == cols.size();
}

FieldElem det_submatrix(const ExtMatrix& m, std::span<const int> rows, std::span<const int> cols) {
  if (rows.size() != cols.size()) throw std::invalid_argument("determinant of non-square selection");
  for (int r : rows) {
    if (r < 0 || static_cast<std::size_t>(r) >= m.rows()) throw std::out_of_range("row index out of range");
  }
  check_columns(m.cols(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[i] == rows[j]) throw std::invalid_argument("row selection is not a subset");
    }
  }
  const std::size_t b = rows.size();
  if (b == 0) return 1;
  std::vector<FieldElem> a(b * b);
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      a[i * b + j] = m.at(static_cast<std::size_t>(rows[i]), static_cast<std::size_t>(cols[j]));
    }
  }
  FieldElem det = 0;
  eliminate(m.field(), a, b, b, &det);
  return det;
}

// ---------------------------------------------------------------------------
// VectorBasis

bool VectorBasis::insert(std::span<const FieldElem> v) {
  if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  scratch_.assign(v.begin(), v.end());
  const ExtField& f = *field_;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const FieldElem x = scratch_[pivots_[i]];
    if (x == 0) continue;
    const FieldElem* row = rows_.data() + i * dim_;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (row[k]) scratch_[k] ^= f.mul(x, row[k]);
    }
  }
  for (std::size_t k = 0; k < dim_; ++k) {
    if (scratch_[k] == 0) continue;
    const FieldElem inv = f.inv(scratch_[k]);
    for (std::size_t j = k; j < dim_; ++j) scratch_[j] = f.mul(scratch_[j], inv);
    pivots_.push_back(k);
    rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
    return true;
  }
  return false;
}

}  // namespace eulerdel
