#include "jetvar/linear_system.hpp"

#include <cstdint>
#include <optional>
#include <set>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

using Row = SparseLinearSystem::Row;

struct Outcome {
  std::vector<Rational> values;
  std::size_t rank = 0;
  std::optional<std::size_t> contradiction;
};

// Sparse Gaussian elimination with Markowitz pivoting: each step takes the
// pivot (r, c) with the smallest (|row r| - 1)(|column c| - 1) among a few of
// the shortest rows, which keeps fill-in low on the very sparse systems the
// ansatz solvers produce.
class Markowitz {
public:
  Markowitz(std::size_t unknowns, std::vector<Row> rows, std::vector<Rational> rhs)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), col_rows_(unknowns),
        active_(rows_.size(), 1) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& entry : rows_[r]) {
        col_rows_[entry.first].insert(r);
      }
      by_length_.emplace(rows_[r].size(), r);
    }
    for (std::size_t c = 0; c < unknowns; ++c) {
      if (!col_rows_[c].empty()) {
        by_count_.emplace(col_rows_[c].size(), c);
      }
    }
  }

  Outcome run() {
    Outcome out;
    while (!by_length_.empty()) {
      auto [length, r] = *by_length_.begin();
      if (length == 0) {
        by_length_.erase(by_length_.begin());
        active_[r] = 0;
        if (rhs_[r] != 0) {
          out.rank = pivots_.size();
          out.contradiction = r;
          return out;
        }
        continue;
      }
      auto [pr, pc] = choose();
      eliminate(pr, pc);
    }
    out.rank = pivots_.size();
    out.values.assign(col_rows_.size(), Rational(0));
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      auto [r, c] = *it;
      Rational value = rhs_[r];
      for (const auto& [col, v] : rows_[r]) {
        if (col != c) {
          value -= v * out.values[col];
        }
      }
      out.values[c] = value / rows_[r].at(c);
    }
    return out;
  }

private:
  static constexpr int kRowsScanned = 4;

  std::pair<std::size_t, std::size_t> choose() const {
    if (!by_count_.empty() && by_count_.begin()->first == 1) {
      std::size_t c = by_count_.begin()->second;
      return {*col_rows_[c].begin(), c};
    }
    std::size_t best_cost = SIZE_MAX;
    std::pair<std::size_t, std::size_t> best{0, 0};
    int scanned = 0;
    for (auto it = by_length_.begin(); it != by_length_.end() && scanned < kRowsScanned;
         ++it, ++scanned) {
      const std::size_t r = it->second;
      const std::size_t row_cost = rows_[r].size() - 1;
      for (const auto& entry : rows_[r]) {
        std::size_t cost = row_cost * (col_rows_[entry.first].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best = {r, entry.first};
        }
      }
      if (best_cost == 0) {
        break;
      }
    }
    return best;
  }

  void set_count(std::size_t c, std::size_t before) {
    by_count_.erase({before, c});
    if (!col_rows_[c].empty()) {
      by_count_.emplace(col_rows_[c].size(), c);
    }
  }

  void eliminate(std::size_t pr, std::size_t pc) {
    const Row& pivot = rows_[pr];
    const Rational pivot_value = pivot.at(pc);
    by_length_.erase({pivot.size(), pr});
    active_[pr] = 0;
    for (const auto& entry : pivot) {
      const std::size_t before = col_rows_[entry.first].size();
      col_rows_[entry.first].erase(pr);
      set_count(entry.first, before);
    }
    pivots_.emplace_back(pr, pc);

    const std::vector<std::size_t> targets(col_rows_[pc].begin(), col_rows_[pc].end());
    for (std::size_t r : targets) {
      Row& row = rows_[r];
      by_length_.erase({row.size(), r});
      const Rational factor = row.at(pc) / pivot_value;
      for (const auto& [col, v] : pivot) {
        auto [it, inserted] = row.try_emplace(col, -factor * v);
        if (inserted) {
          const std::size_t before = col_rows_[col].size();
          col_rows_[col].insert(r);
          set_count(col, before);
          continue;
        }
        if (col == pc) {
          it->second = 0;
        } else {
          it->second -= factor * v;
        }
        if (it->second == 0) {
          row.erase(it);
          const std::size_t before = col_rows_[col].size();
          col_rows_[col].erase(r);
          set_count(col, before);
        }
      }
      rhs_[r] -= factor * rhs_[pr];
      by_length_.emplace(row.size(), r);
    }
  }

  std::vector<Row> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::set<std::size_t>> col_rows_;
  std::vector<char> active_;
  std::set<std::pair<std::size_t, std::size_t>> by_length_;
  std::set<std::pair<std::size_t, std::size_t>> by_count_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;
};

Outcome eliminate(std::size_t unknowns, std::vector<Row> rows, std::vector<Rational> rhs) {
  return Markowitz(unknowns, std::move(rows), std::move(rhs)).run();
}

} // namespace

void SparseLinearSystem::add_equation(Row coefficients, Rational rhs) {
  for (auto it = coefficients.begin(); it != coefficients.end();) {
    if (it->first >= unknowns_) {
      throw PreconditionViolation("linear system column out of range");
    }
    it = it->second == 0 ? coefficients.erase(it) : std::next(it);
  }
  rows_.push_back(std::move(coefficients));
  rhs_.push_back(std::move(rhs));
}

std::variant<SparseLinearSystem::Solution, SparseLinearSystem::Infeasible>
SparseLinearSystem::solve() const {
  Outcome out = eliminate(unknowns_, rows_, rhs_);
  if (out.contradiction) {
    return Infeasible{out.rank, *out.contradiction};
  }
  return Solution{std::move(out.values), out.rank};
}

std::size_t SparseLinearSystem::rank() const {
  return eliminate(unknowns_, rows_, std::vector<Rational>(rows_.size(), Rational(0))).rank;
}

} // namespace jetvar
