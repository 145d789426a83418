#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cohoforge/fp_linalg.hpp"

using namespace cohoforge;

namespace {

using Dense = std::vector<std::vector<int>>;

// Plain Gaussian elimination on ints; the oracle for rank.
std::size_t naive_rank(Dense a, int p) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] % p == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    int inv = 1;
    while ((a[r][c] * inv) % p != 1) ++inv;
    for (auto& x : a[r]) x = (x * inv) % p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r) continue;
      const int f = a[i][c] % p;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

FpMatrix random_matrix(std::mt19937& rng, std::uint32_t p, std::size_t rows, std::size_t cols,
                       Dense* dense = nullptr) {
  FpMatrix m(p, rows, cols);
  std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
  // Low-rank structure shows up more often when rows repeat.
  if (dense) dense->assign(rows, std::vector<int>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = (r % 3 == 2 && r >= 2) ? (m.get(r - 1, c) + m.get(r - 2, c)) % p : d(rng);
      m.set(r, c, v);
      if (dense) (*dense)[r][c] = static_cast<int>(v);
    }
  return m;
}

FpVector random_vector(std::mt19937& rng, std::uint32_t p, std::size_t n) {
  FpVector v(p, n);
  std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
  for (std::size_t i = 0; i < n; ++i) v.set(i, d(rng));
  return v;
}

}  // namespace

TEST_CASE("rref examples") {
  auto id = FpMatrix::identity(3, 4);
  auto r = rref(id);
  CHECK(r.matrix == id);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2, 3});

  auto z = rref(FpMatrix(2, 3, 5));
  CHECK(z.matrix.rows() == 0);
  CHECK(z.pivots.empty());

  auto m = rref(FpMatrix::from_values(2, {{1, 1}, {1, 1}}));
  CHECK(m.matrix == FpMatrix::from_values(2, {{1, 1}}));
  CHECK(m.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel, image and solve examples") {
  CHECK(kernel_basis(FpMatrix::identity(5, 3)).dim() == 0);

  auto k = kernel_basis(FpMatrix::from_values(3, {{1, 2}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.basis().row(0) == FpVector(3, {1, 1}));

  auto m = FpMatrix::from_values(5, {{1, 2, 3}, {0, 1, 4}});
  auto x = solve(m, FpVector(5, 2));
  REQUIRE(x);
  CHECK((m * *x).is_zero());

  auto rhs = FpVector(5, {1, 1});
  auto y = solve(m, rhs);
  REQUIRE(y);
  CHECK(m * *y == rhs);

  CHECK_FALSE(solve(FpMatrix::from_values(2, {{1, 1}, {1, 1}}), FpVector(2, {1, 0})));
  CHECK_THROWS_AS(solve(m, FpVector(5, 3)), DimensionMismatch);
}

TEST_CASE("packed storage crosses word boundaries") {
  for (std::uint32_t p : {2u, 3u, 7u}) {
    FpMatrix m(p, 3, 130);
    m.set(1, 63, 1);
    m.set(1, 64, p - 1);
    m.set(2, 129, 1);
    CHECK(m.get(1, 63) == 1);
    CHECK(m.get(1, 64) == p - 1);
    CHECK(m.get(2, 129) == 1);
    CHECK(rank(m) == 2);
    CHECK(m.transpose().transpose() == m);
  }
}

TEST_CASE("property: rank plus nullity equals columns") {
  std::mt19937 rng(12345);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 75;
      Dense dense;
      auto m = random_matrix(rng, p, rows, cols, &dense);
      const auto r = rank(m);
      CHECK(r == naive_rank(dense, static_cast<int>(p)));
      auto ker = kernel_basis(m);
      CHECK(r + ker.dim() == cols);
      for (std::size_t i = 0; i < ker.dim(); ++i) CHECK((m * ker.basis().row(i)).is_zero());
    }
  }
}

TEST_CASE("property: rref idempotent and deterministic") {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 30; ++trial) {
      auto m = random_matrix(rng, p, 1 + rng() % 10, 1 + rng() % 70);
      auto a = rref(m);
      auto b = rref(a.matrix);
      CHECK(a.matrix == b.matrix);
      CHECK(a.pivots == b.pivots);
      auto c = rref(m);
      CHECK(a.matrix == c.matrix);
      for (std::size_t i = 1; i < a.pivots.size(); ++i) CHECK(a.pivots[i - 1] < a.pivots[i]);
    }
  }
}

TEST_CASE("property: image membership and solve") {
  std::mt19937 rng(99);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t rows = 1 + rng() % 15, cols = 1 + rng() % 15;
      auto m = random_matrix(rng, p, rows, cols);
      auto x = random_vector(rng, p, cols);
      auto y = m * x;
      CHECK(member(image_basis(m), y));
      auto s = solve(m, y);
      REQUIRE(s);
      CHECK(m * *s == y);
    }
  }
}

TEST_CASE("property: RowSolver matches left multiplication") {
  std::mt19937 rng(2024);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t rows = 1 + rng() % 20, cols = 1 + rng() % 90;
      auto m = random_matrix(rng, p, rows, cols);
      RowSolver solver(m);
      CHECK(solver.rank() == rank(m));
      CHECK(solver.left_kernel().dim() + solver.rank() == rows);
      for (std::size_t i = 0; i < solver.left_kernel().dim(); ++i)
        CHECK(m.left_multiply(solver.left_kernel().basis().row(i)).is_zero());
      auto x = random_vector(rng, p, rows);
      auto y = m.left_multiply(x);
      auto s = solver.solve(y);
      REQUIRE(s);
      CHECK(m.left_multiply(*s) == y);
    }
  }
}

TEST_CASE("subspace sum, containment and coordinates") {
  auto a = Subspace::span(FpMatrix::from_values(3, {{1, 0, 0}}));
  auto b = Subspace::span(FpMatrix::from_values(3, {{0, 1, 2}}));
  auto s = sum(a, b);
  CHECK(s.dim() == 2);
  CHECK(s.contains(a));
  CHECK(s.contains(b));
  CHECK_FALSE(a.contains(s));
  auto c = s.coordinates(FpVector(3, {2, 1, 2}));
  REQUIRE(c);
  CHECK(*c == FpVector(3, {2, 1}));
  CHECK_FALSE(s.coordinates(FpVector(3, {0, 0, 1})));
  CHECK(s.reduce(FpVector(3, {2, 1, 2})).is_zero());
}
