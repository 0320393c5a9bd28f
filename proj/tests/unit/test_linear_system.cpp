#include <doctest.h>

#include <random>

#include "jetvar/errors.hpp"
#include "jetvar/linear_system.hpp"

using namespace jetvar;

namespace {

using Row = SparseLinearSystem::Row;

// Dense Gauss-Jordan rank of an m x (n+1) augmented matrix, restricted to the first `cols` columns.
std::size_t dense_rank(std::vector<std::vector<Rational>> a, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) {
      ++p;
    }
    if (p == a.size()) {
      continue;
    }
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r != rank && a[r][c] != 0) {
        Rational f = a[r][c] / a[rank][c];
        for (std::size_t k = 0; k < a[r].size(); ++k) {
          a[r][k] -= f * a[rank][k];
        }
      }
    }
    ++rank;
  }
  return rank;
}

} // namespace

TEST_CASE("unique solution") {
  SparseLinearSystem s(2);
  s.add_equation({{0, 1}, {1, 1}}, 3);
  s.add_equation({{0, 1}, {1, -1}}, 1);
  auto out = s.solve();
  REQUIRE(std::holds_alternative<SparseLinearSystem::Solution>(out));
  const auto& sol = std::get<SparseLinearSystem::Solution>(out);
  CHECK(sol.values[0] == 2);
  CHECK(sol.values[1] == 1);
  CHECK(sol.rank == 2);
  CHECK(s.rank() == 2);
}

TEST_CASE("free unknowns default to zero") {
  SparseLinearSystem s(3);
  s.add_equation({{0, 1}, {1, 1}}, 2);
  auto sol = std::get<SparseLinearSystem::Solution>(s.solve());
  CHECK(sol.values[0] + sol.values[1] == 2);
  CHECK(sol.values[2] == 0);
  CHECK((sol.values[0] == 0 || sol.values[1] == 0));
}

TEST_CASE("inconsistent system reports a witness") {
  SparseLinearSystem s(2);
  s.add_equation({{0, 1}, {1, 1}}, 1);
  s.add_equation({{0, 2}, {1, 2}}, 3);
  auto out = s.solve();
  REQUIRE(std::holds_alternative<SparseLinearSystem::Infeasible>(out));
  auto bad = std::get<SparseLinearSystem::Infeasible>(out);
  CHECK(bad.witness_equation < 2);
  CHECK(bad.rank == 1);
  CHECK(s.rank() == 1);
}

TEST_CASE("zero rows and range checks") {
  SparseLinearSystem s(1);
  s.add_equation({{0, 0}}, 0);
  CHECK(std::holds_alternative<SparseLinearSystem::Solution>(s.solve()));
  s.add_equation({}, 5);
  CHECK(std::holds_alternative<SparseLinearSystem::Infeasible>(s.solve()));
  CHECK_THROWS_AS(s.add_equation({{1, 1}}, 0), PreconditionViolation);
}

TEST_CASE("random sparse systems agree with dense elimination") {
  std::mt19937_64 rng(17);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(pick(1, 9));
    const std::size_t m = static_cast<std::size_t>(pick(1, 9));
    SparseLinearSystem s(n);
    std::vector<std::vector<Rational>> dense(m, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t r = 0; r < m; ++r) {
      Row row;
      for (std::size_t c = 0; c < n; ++c) {
        if (pick(0, 2) == 0) {
          Rational v(pick(-3, 3), pick(1, 3));
          v.canonicalize();
          row[c] = v;
          dense[r][c] = v;
        }
      }
      Rational rhs(pick(-2, 2));
      dense[r][n] = rhs;
      s.add_equation(row, rhs);
    }
    const std::size_t rank_a = dense_rank(dense, n);
    const std::size_t rank_ab = dense_rank(dense, n + 1);
    CHECK(s.rank() == rank_a);
    auto out = s.solve();
    if (rank_a == rank_ab) {
      REQUIRE(std::holds_alternative<SparseLinearSystem::Solution>(out));
      const auto& z = std::get<SparseLinearSystem::Solution>(out).values;
      for (std::size_t r = 0; r < m; ++r) {
        Rational lhs = 0;
        for (std::size_t c = 0; c < n; ++c) {
          lhs += dense[r][c] * z[c];
        }
        CHECK(lhs == dense[r][n]);
      }
    } else {
      CHECK(std::holds_alternative<SparseLinearSystem::Infeasible>(out));
    }
  }
}
