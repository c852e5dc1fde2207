#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace eulerdel {

/// Dense row-major bit-packed matrix over GF(2).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  /// Builds a matrix from rows written as strings of '0'/'1'.
  static BitMatrix from_rows(std::initializer_list<std::string_view> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_per_row_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value);
  void flip(std::size_t r, std::size_t c) {
    data_[r * words_per_row_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
  }

  std::span<std::uint64_t> row(std::size_t r) {
    return {data_.data() + r * words_per_row_, words_per_row_};
  }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return {data_.data() + r * words_per_row_, words_per_row_};
  }

  BitMatrix transpose() const;
  BitMatrix select_columns(std::span<const int> cols) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> data_;
};

std::size_t rank(BitMatrix m);
bool columns_independent(const BitMatrix& m, std::span<const int> cols);
/// Greedy maximal independent subset of `order`, scanned front to back.
std::vector<int> column_basis(const BitMatrix& m, std::span<const int> order);

/// Element of GF(2^s): a polynomial over GF(2) of degree < s stored as bits.
using FieldElem = std::uint32_t;

/// GF(2^s) = GF(2)[x] / (reduction polynomial), 1 <= s <= 32.
class ExtField {
 public:
  ExtField(int degree, std::uint64_t reduction_poly);

  /// x^16+x^5+x^3+x+1 for s = 16; otherwise the numerically smallest
  /// irreducible polynomial of degree s.
  static std::uint64_t default_polynomial(int degree);
  /// Trial division by every polynomial of degree 1..deg/2.
  static bool is_irreducible(std::uint64_t poly);

  int degree() const { return degree_; }
  std::uint64_t polynomial() const { return poly_; }
  std::uint64_t size() const { return std::uint64_t{1} << degree_; }

  static FieldElem add(FieldElem a, FieldElem b) { return a ^ b; }
  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return slow_mul(a, b);
  }
  FieldElem inv(FieldElem a) const;
  FieldElem pow(FieldElem a, std::uint64_t e) const;

 private:
  FieldElem slow_mul(FieldElem a, FieldElem b) const;

  int degree_;
  std::uint64_t poly_;
  // Log/antilog tables relative to a generator of the multiplicative group,
  // populated for degree <= 16. exp_ is doubled to skip the modular reduction.
  std::vector<FieldElem> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const ExtField>;

FieldPtr make_field(int degree);
FieldPtr make_field(int degree, std::uint64_t reduction_poly);
/// GF(2) itself (degree 1), used for untruncated computations.
FieldPtr gf2_field();

/// Dense row-major matrix over an extension field.
class ExtMatrix {
 public:
  ExtMatrix() = default;
  ExtMatrix(FieldPtr field, std::size_t rows, std::size_t cols);

  /// Canonical embedding of a GF(2) matrix.
  static ExtMatrix embed(const BitMatrix& m, FieldPtr field);

  const ExtField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, FieldElem value);

  ExtMatrix transpose() const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> data_;
};

std::size_t rank(ExtMatrix m);
bool columns_independent(const ExtMatrix& m, std::span<const int> cols);
std::vector<int> column_basis(const ExtMatrix& m, std::span<const int> order);
/// Determinant of the square submatrix on the given rows and columns. Rows
/// must be distinct.
FieldElem det_submatrix(const ExtMatrix& m, std::span<const int> rows, std::span<const int> cols);

/// A basis that grows one candidate vector at a time; insert() reports
/// whether the candidate was outside the span of everything accepted so far.
class VectorBasis {
 public:
  VectorBasis(const ExtField& field, std::size_t dim) : field_(&field), dim_(dim) {}

  bool insert(std::span<const FieldElem> v);
  std::size_t size() const { return pivots_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  const ExtField* field_;
  std::size_t dim_;
  std::vector<FieldElem> rows_;  // size() * dim_, each row normalized at its pivot
  std::vector<std::size_t> pivots_;
  std::vector<FieldElem> scratch_;
};

}  // namespace eulerdel
