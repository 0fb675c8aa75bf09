#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fusionforge/kernels.hpp"

namespace ff {

using FpVector = std::vector<std::uint32_t>;

std::uint32_t fp_inv(std::uint32_t a, unsigned p);
/// Representative of v mod p in [0, p).
inline std::uint32_t fp_mod(long long v, unsigned p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

/// Sparse matrix over F_p. Entries are kept in (row, col) order; zero values
/// are never stored.
class FpMatrix {
 public:
  struct Entry {
    std::size_t row, col;
    std::uint32_t value;
  };

  FpMatrix() = default;
  FpMatrix(unsigned p, std::size_t rows, std::size_t cols);
  static FpMatrix from_dense(unsigned p, const std::vector<FpVector>& rows, std::size_t cols = 0);
  static FpMatrix identity(unsigned p, std::size_t n);

  unsigned prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return cells_.size(); }

  void set(std::size_t r, std::size_t c, long long v);
  void add(std::size_t r, std::size_t c, long long v);
  std::uint32_t get(std::size_t r, std::size_t c) const;
  std::vector<Entry> entries() const;
  std::vector<FpVector> to_dense() const;

  FpMatrix operator*(const FpMatrix& rhs) const;
  FpMatrix transpose() const;
  bool operator==(const FpMatrix& o) const;

  /// Sparse column elimination, lightest columns first.
  std::size_t rank() const;
  /// Basis of { x : A x = 0 }.
  std::vector<FpVector> nullspace(Exec exec = default_exec()) const;

 private:
  unsigned p_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> cells_;
};

/// Reduced row echelon form over F_p, grown one row at a time. Pivot rows
/// are normalised and cleared above and below, so reducing a new row needs
/// one subtraction per pivot column it touches.
class FpEchelon {
 public:
  FpEchelon(unsigned p, std::size_t cols, Exec exec = default_exec());

  /// True when the row was independent of the current span (it is added).
  bool add_row(FpVector row);
  bool add_sparse_row(const std::vector<std::pair<std::size_t, long long>>& entries);
  FpVector reduce(FpVector row) const;
  bool in_span(const FpVector& row) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<FpVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Basis of the solutions x of r . x = 0 for all rows r added.
  std::vector<FpVector> nullspace() const;

 private:
  void reduce_in_place(FpVector& row) const;
  unsigned p_;
  std::size_t cols_;
  Exec exec_;
  std::vector<FpVector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<long> pivot_row_;  // column -> row index or -1
};

/// Plain Gaussian elimination on a dense copy; the reference for rank().
std::size_t dense_rank(std::vector<FpVector> a, unsigned p);

/// Coefficients c with sum_j c_j columns[j] = b, or nullopt.
std::optional<FpVector> solve_columns(const std::vector<FpVector>& columns, const FpVector& b, unsigned p);

}  // namespace ff
