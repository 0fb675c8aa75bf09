#include "fusionforge/fpmatrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ff {

std::uint32_t fp_inv(std::uint32_t a, unsigned p) {
  // a^(p-2)
  std::uint64_t r = 1, b = a % p;
  for (unsigned e = p - 2; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  if (a % p == 0) throw std::invalid_argument("zero has no inverse");
  return static_cast<std::uint32_t>(r);
}

FpMatrix::FpMatrix(unsigned p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols) {}

FpMatrix FpMatrix::from_dense(unsigned p, const std::vector<FpVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

FpMatrix FpMatrix::identity(unsigned p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, long long v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  std::uint32_t x = fp_mod(v, p_);
  if (x == 0)
    cells_.erase({r, c});
  else
    cells_[{r, c}] = x;
}

void FpMatrix::add(std::size_t r, std::size_t c, long long v) { set(r, c, static_cast<long long>(get(r, c)) + v); }

std::uint32_t FpMatrix::get(std::size_t r, std::size_t c) const {
  auto it = cells_.find({r, c});
  return it == cells_.end() ? 0 : it->second;
}

std::vector<FpMatrix::Entry> FpMatrix::entries() const {
  std::vector<Entry> out;
  for (const auto& [k, v] : cells_) out.push_back({k.first, k.second, v});
  return out;
}

std::vector<FpVector> FpMatrix::to_dense() const {
  std::vector<FpVector> out(rows_, FpVector(cols_, 0));
  for (const auto& [k, v] : cells_) out[k.first][k.second] = v;
  return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw std::invalid_argument("matrix shapes do not compose");
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> rrows(rhs.rows_);
  for (const auto& [k, v] : rhs.cells_) rrows[k.first].push_back({k.second, v});
  FpMatrix out(p_, rows_, rhs.cols_);
  for (const auto& [k, v] : cells_)
    for (auto [c, w] : rrows[k.second]) out.add(k.first, c, static_cast<long long>(v) * w);
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(p_, cols_, rows_);
  for (const auto& [k, v] : cells_) out.cells_[{k.second, k.first}] = v;
  return out;
}

bool FpMatrix::operator==(const FpMatrix& o) const {
  return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && cells_ == o.cells_;
}

std::size_t FpMatrix::rank() const {
  using Col = std::vector<std::pair<std::size_t, std::uint32_t>>;  // sorted by row
  std::vector<Col> cols(cols_);
  for (const auto& [k, v] : cells_) cols[k.second].push_back({k.first, v});
  std::vector<std::size_t> order(cols_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cols[a].size() < cols[b].size(); });
  std::vector<long> pivot_of_row(rows_, -1);
  std::vector<Col> pivots;
  const unsigned p = p_;
  auto axpy = [p](const Col& x, std::uint32_t f, const Col& y) {  // x - f*y
    Col out;
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        out.push_back(x[i++]);
      } else if (i == x.size() || y[j].first < x[i].first) {
        out.push_back({y[j].first, fp_mod(-static_cast<long long>(f) * y[j].second, p)});
        ++j;
      } else {
        std::uint32_t v = fp_mod(static_cast<long long>(x[i].second) - static_cast<long long>(f) * y[j].second, p);
        if (v) out.push_back({x[i].first, v});
        ++i;
        ++j;
      }
    }
    return out;
  };
  for (std::size_t c : order) {
    Col col = std::move(cols[c]);
    while (!col.empty()) {
      long pr = pivot_of_row[col.front().first];
      if (pr < 0) break;
      const Col& piv = pivots[static_cast<std::size_t>(pr)];
      col = axpy(col, col.front().second, piv);  // pivot columns lead with 1
    }
    if (col.empty()) continue;
    std::uint32_t inv = fp_inv(col.front().second, p);
    for (auto& e : col) e.second = static_cast<std::uint32_t>(static_cast<std::uint64_t>(e.second) * inv % p);
    pivot_of_row[col.front().first] = static_cast<long>(pivots.size());
    pivots.push_back(std::move(col));
  }
  return pivots.size();
}

std::vector<FpVector> FpMatrix::nullspace(Exec exec) const {
  FpEchelon ech(p_, cols_, exec);
  std::vector<std::vector<std::pair<std::size_t, long long>>> rows(rows_);
  for (const auto& [k, v] : cells_) rows[k.first].push_back({k.second, v});
  for (const auto& r : rows)
    if (!r.empty()) ech.add_sparse_row(r);
  return ech.nullspace();
}

// ---------------------------------------------------------------- echelon

FpEchelon::FpEchelon(unsigned p, std::size_t cols, Exec exec) : p_(p), cols_(cols), exec_(exec), pivot_row_(cols, -1) {}

void FpEchelon::reduce_in_place(FpVector& row) const {
  const std::uint64_t p = p_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::uint32_t f = row[pivots_[i]];
    if (!f) continue;
    const auto& piv = rows_[i];
    const std::uint64_t m = p - f;
    for (std::size_t c = pivots_[i]; c < cols_; ++c)
      if (piv[c]) row[c] = static_cast<std::uint32_t>((row[c] + m * piv[c]) % p);
  }
}

FpVector FpEchelon::reduce(FpVector row) const {
  reduce_in_place(row);
  return row;
}

bool FpEchelon::in_span(const FpVector& row) const {
  FpVector r = reduce(row);
  return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

bool FpEchelon::add_sparse_row(const std::vector<std::pair<std::size_t, long long>>& entries) {
  FpVector row(cols_, 0);
  for (auto [c, v] : entries) row[c] = fp_mod(static_cast<long long>(row[c]) + v, p_);
  return add_row(std::move(row));
}

bool FpEchelon::add_row(FpVector row) {
  if (row.size() != cols_) throw std::invalid_argument("row length");
  for (auto& x : row) x %= p_;
  reduce_in_place(row);
  std::size_t lead = 0;
  while (lead < cols_ && row[lead] == 0) ++lead;
  if (lead == cols_) return false;
  const std::uint64_t p = p_;
  const std::uint64_t inv = fp_inv(row[lead], p_);
  for (std::size_t c = lead; c < cols_; ++c) row[c] = static_cast<std::uint32_t>(row[c] * inv % p);
  // clear the new pivot column from the existing rows (independent updates)
  const long n = static_cast<long>(rows_.size());
  auto clear = [&](long i) {
    auto& r = rows_[static_cast<std::size_t>(i)];
    const std::uint32_t f = r[lead];
    if (!f) return;
    const std::uint64_t m = p - f;
    for (std::size_t c = lead; c < cols_; ++c)
      if (row[c]) r[c] = static_cast<std::uint32_t>((r[c] + m * row[c]) % p);
  };
  if (exec_ == Exec::parallel && n * static_cast<long>(cols_) > (1L << 16)) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) clear(i);
  } else {
    for (long i = 0; i < n; ++i) clear(i);
  }
  pivot_row_[lead] = static_cast<long>(rows_.size());
  pivots_.push_back(lead);
  rows_.push_back(std::move(row));
  return true;
}

std::vector<FpVector> FpEchelon::nullspace() const {
  std::vector<FpVector> out;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (pivot_row_[free] >= 0) continue;
    FpVector x(cols_, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i][free]) x[pivots_[i]] = fp_mod(-static_cast<long long>(rows_[i][free]), p_);
    out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------- dense reference

std::size_t dense_rank(std::vector<FpVector> a, unsigned p) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] % p == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const std::uint32_t inv = fp_inv(a[rank][c] % p, p);
    for (auto& x : a[rank]) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x % p) * inv % p);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] % p == 0) continue;
      const std::uint64_t f = a[r][c] % p;
      for (std::size_t k = 0; k < cols; ++k)
        a[r][k] = static_cast<std::uint32_t>((a[r][k] % p + (p - f) * a[rank][k]) % p);
    }
    ++rank;
  }
  return rank;
}

std::optional<FpVector> solve_columns(const std::vector<FpVector>& columns, const FpVector& b, unsigned p) {
  const std::size_t n = columns.size(), m = b.size();
  // augmented rows [A | b]
  std::vector<FpVector> a(m, FpVector(n + 1, 0));
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != m) throw std::invalid_argument("column length");
    for (std::size_t i = 0; i < m; ++i) a[i][j] = columns[j][i] % p;
  }
  for (std::size_t i = 0; i < m; ++i) a[i][n] = b[i] % p;
  std::vector<std::size_t> pivcol;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t piv = rank;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = fp_inv(a[rank][c], p);
    for (auto& x : a[rank]) x = static_cast<std::uint32_t>(x * inv % p);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] = static_cast<std::uint32_t>((a[r][k] + (p - f) * a[rank][k]) % p);
    }
    pivcol.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r)
    if (a[r][n]) return std::nullopt;
  FpVector x(n, 0);
  for (std::size_t i = 0; i < rank; ++i) x[pivcol[i]] = a[i][n];
  return x;
}

}  // namespace ff
