#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "jetvar/rational.hpp"

namespace jetvar {

/// Sparse linear system A·z = b over the rationals, solved exactly.
class SparseLinearSystem {
public:
  using Row = std::map<std::size_t, Rational>;

  explicit SparseLinearSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  std::size_t unknowns() const noexcept { return unknowns_; }
  std::size_t equations() const noexcept { return rows_.size(); }

  void add_equation(Row coefficients, Rational rhs);

  struct Solution {
    /// Free unknowns are set to zero.
    std::vector<Rational> values;
    std::size_t rank;
  };
  struct Infeasible {
    /// Rank reached before the contradiction was found.
    std::size_t rank;
    /// Index of an equation that reduced to 0 = c with c != 0.
    std::size_t witness_equation;
  };

  std::variant<Solution, Infeasible> solve() const;

  /// Rank of the coefficient matrix (right-hand sides ignored).
  std::size_t rank() const;

private:
  std::size_t unknowns_;
  std::vector<Row> rows_;
  std::vector<Rational> rhs_;
};

} // namespace jetvar
