#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fusionforge/fpmatrix.hpp"

using namespace ff;

namespace {

// Independent oracle: rank via determinant-free row reduction on a copy,
// written without pivot bookkeeping beyond swapping.
std::size_t oracle_rank(std::vector<FpVector> a, unsigned p) {
  std::size_t r = 0;
  for (std::size_t c = 0; !a.empty() && c < a[0].size(); ++c) {
    std::size_t i = r;
    while (i < a.size() && a[i][c] % p == 0) ++i;
    if (i == a.size()) continue;
    std::swap(a[i], a[r]);
    for (std::size_t k = r + 1; k < a.size(); ++k) {
      // a_k := a_r[c] a_k - a_k[c] a_r, no inverses needed
      std::uint64_t x = a[r][c] % p, y = a[k][c] % p;
      for (std::size_t j = 0; j < a[k].size(); ++j) a[k][j] = static_cast<std::uint32_t>((x * a[k][j] + (p - y) * a[r][j]) % p);
    }
    ++r;
  }
  return r;
}

std::vector<FpVector> random_dense(std::mt19937_64& rng, std::size_t n, std::size_t m, unsigned p, double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<unsigned> v(1, p - 1);
  std::vector<FpVector> a(n, FpVector(m, 0));
  for (auto& row : a)
    for (auto& x : row)
      if (u(rng) < density) x = v(rng);
  return a;
}

}  // namespace

TEST_CASE("sparse rank matches the dense oracle on random 50x50 matrices") {
  std::mt19937_64 rng(20240611);
  for (unsigned p : {2u, 3u}) {
    for (int trial = 0; trial < 1000; ++trial) {
      double density = 0.01 + 0.2 * (trial % 10) / 10.0;
      // low-rank products now and then, so rank deficiency is exercised
      std::vector<FpVector> a;
      if (trial % 4 == 3) {
        auto l = random_dense(rng, 50, 7 + trial % 30, p, 0.5), r = random_dense(rng, 7 + trial % 30, 50, p, 0.5);
        a = (FpMatrix::from_dense(p, l) * FpMatrix::from_dense(p, r)).to_dense();
      } else {
        a = random_dense(rng, 50, 50, p, density);
      }
      FpMatrix m = FpMatrix::from_dense(p, a);
      std::size_t expect = oracle_rank(a, p);
      REQUIRE(m.rank() == expect);
      REQUIRE(dense_rank(a, p) == expect);
      REQUIRE(m.nullspace().size() == 50 - expect);
    }
  }
}

TEST_CASE("nullspace vectors are solutions") {
  std::mt19937_64 rng(7);
  for (unsigned p : {2u, 3u, 5u}) {
    auto a = random_dense(rng, 20, 30, p, 0.3);
    FpMatrix m = FpMatrix::from_dense(p, a);
    auto ker = m.nullspace(Exec::serial);
    CHECK(ker.size() == 30 - m.rank());
    for (const auto& x : ker)
      for (const auto& row : a) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < row.size(); ++j) acc += static_cast<std::uint64_t>(row[j]) * x[j];
        CHECK(acc % p == 0);
      }
    CHECK(ker == m.nullspace(Exec::parallel));
  }
}

TEST_CASE("entries are reduced and zero-free") {
  FpMatrix m(3, 2, 2);
  m.set(0, 0, 4);
  m.set(1, 1, -1);
  m.add(0, 0, 2);  // 1 + 2 = 0
  CHECK(m.get(0, 0) == 0);
  CHECK(m.get(1, 1) == 2);
  auto e = m.entries();
  REQUIRE(e.size() == 1);
  CHECK(e[0].row == 1);
  CHECK(e[0].value == 2);
  CHECK_THROWS_AS(m.set(2, 0, 1), std::out_of_range);
}

TEST_CASE("products and transposes") {
  std::mt19937_64 rng(11);
  auto a = FpMatrix::from_dense(5, random_dense(rng, 4, 6, 5, 0.6));
  auto b = FpMatrix::from_dense(5, random_dense(rng, 6, 3, 5, 0.6));
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
  CHECK(a * FpMatrix::identity(5, 6) == a);
  CHECK_THROWS_AS(a * a, std::invalid_argument);
}

TEST_CASE("incremental echelon") {
  FpEchelon e(3, 3, Exec::serial);
  CHECK(e.add_row({1, 2, 0}));
  CHECK(e.add_row({0, 1, 1}));
  CHECK(!e.add_row({1, 0, 1}));  // (1,2,0) + 2(0,1,1)
  CHECK(e.rank() == 2);
  CHECK(e.in_span({2, 1, 0}));
  auto ker = e.nullspace();
  REQUIRE(ker.size() == 1);
  CHECK((ker[0][0] + 2 * ker[0][1]) % 3 == 0);
  CHECK((ker[0][1] + ker[0][2]) % 3 == 0);
}

TEST_CASE("solve_columns") {
  std::vector<FpVector> cols{{1, 0, 1}, {0, 1, 1}};
  auto x = solve_columns(cols, {1, 1, 0}, 2);
  REQUIRE(x);
  CHECK(*x == FpVector{1, 1});
  CHECK(!solve_columns(cols, {1, 0, 0}, 2));
  CHECK(fp_inv(2, 5) == 3);
}
