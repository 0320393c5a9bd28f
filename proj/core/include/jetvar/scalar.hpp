#pragma once

// Exact polynomial ring over the adapted jet coordinates (x^λ, y^i_Λ) of a
// trivial bundle R^{n+m} -> R^n.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "jetvar/errors.hpp"
#include "jetvar/rational.hpp"

namespace jetvar {

/// Dimensions of the bundle: n base coordinates, m fibre coordinates.
class Bundle {
public:
  Bundle(int n, int m);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }

  void check_base_index(int lambda) const;
  void check_fibre_index(int i) const;

  friend bool operator==(const Bundle&, const Bundle&) = default;

private:
  int n_;
  int m_;
};

void require_same_bundle(const Bundle& a, const Bundle& b);

/// Symmetric multi-index: a multiset of base directions, stored sorted.
class MultiIndex {
public:
  MultiIndex() = default;
  /// Any order is accepted; directions are sorted on construction.
  explicit MultiIndex(std::vector<int> dirs);
  MultiIndex(std::initializer_list<int> dirs) : MultiIndex(std::vector<int>(dirs)) {}

  std::size_t order() const noexcept { return dirs_.size(); }
  bool empty() const noexcept { return dirs_.empty(); }
  const std::vector<int>& dirs() const noexcept { return dirs_; }

  /// Multiset merge Λ + Σ.
  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex plus(int lambda) const;
  /// Number of occurrences of the direction.
  int count(int lambda) const;

  void check(const Bundle& bundle) const;

  /// Ordered by length, then lexicographically.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
  std::vector<int> dirs_;
};

/// A coordinate: base x^λ or jet y^i_Λ (Λ empty for y^i itself).
class Variable {
public:
  enum class Kind { base, jet };

  static Variable base(int lambda);
  static Variable jet(int i, MultiIndex multi = {});

  Kind kind() const noexcept { return kind_; }
  bool is_base() const noexcept { return kind_ == Kind::base; }
  bool is_jet() const noexcept { return kind_ == Kind::jet; }
  /// λ for a base variable, i for a jet variable.
  int index() const noexcept { return index_; }
  const MultiIndex& multi() const noexcept { return multi_; }

  void check(const Bundle& bundle) const;

  /// Base variables by λ, then jet variables by (i, |Λ|, lexicographic Λ).
  friend std::strong_ordering operator<=>(const Variable& a, const Variable& b);
  friend bool operator==(const Variable&, const Variable&) = default;

private:
  Variable(Kind kind, int index, MultiIndex multi)
      : kind_(kind), index_(index), multi_(std::move(multi)) {}

  Kind kind_;
  int index_;
  MultiIndex multi_;
};

/// Power product of variables with positive exponents.
class Monomial {
public:
  using Power = std::pair<Variable, int>;

  Monomial() = default;
  explicit Monomial(std::vector<Power> powers);

  const std::vector<Power>& powers() const noexcept { return powers_; }
  bool is_one() const noexcept { return powers_.empty(); }

  int degree() const noexcept;
  /// Total degree in jet variables only.
  int fibre_degree() const noexcept;
  int jet_order() const noexcept;
  int exponent(const Variable& v) const noexcept;

  Monomial operator*(const Monomial& other) const;
  /// (exponent, monomial / v); exponent 0 when v does not occur.
  std::pair<int, Monomial> divide_by(const Variable& v) const;

  /// Graded lexicographic over the canonical variable order.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

private:
  std::vector<Power> powers_;
};

/// Multivariate polynomial with exact rational coefficients in canonical form.
/// Terms iterate in descending graded-lexicographic monomial order; zero
/// coefficients are never stored.
class ScalarExpr {
public:
  using Terms = std::map<Monomial, Rational, std::greater<>>;

  explicit ScalarExpr(Bundle bundle) : bundle_(bundle) {}
  ScalarExpr(Bundle bundle, const Rational& constant);

  static ScalarExpr variable(Bundle bundle, const Variable& v);
  static ScalarExpr base(Bundle bundle, int lambda);
  static ScalarExpr jet(Bundle bundle, int i, MultiIndex multi = {});
  static ScalarExpr monomial(Bundle bundle, const Monomial& mono, const Rational& coef);

  const Bundle& bundle() const noexcept { return bundle_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// True for 0 and for nonzero rational constants.
  bool is_constant() const noexcept;
  /// Coefficient of the monomial 1.
  Rational constant_term() const;

  /// Adds coef·mono in place, dropping the term if it cancels.
  void add_term(const Monomial& mono, const Rational& coef);

  ScalarExpr& operator+=(const ScalarExpr& other);
  ScalarExpr& operator-=(const ScalarExpr& other);
  ScalarExpr& operator*=(const Rational& q);

  friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
  friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(ScalarExpr a, const Rational& q) { return a *= q; }
  friend ScalarExpr operator*(const Rational& q, ScalarExpr a) { return a *= q; }
  friend ScalarExpr operator-(ScalarExpr a);

  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
    return a.bundle_ == b.bundle_ && a.terms_ == b.terms_;
  }

private:
  Bundle bundle_;
  Terms terms_;
};

enum class ArithOp { add, sub, mul };
ScalarExpr arith(const ScalarExpr& a, const ScalarExpr& b, ArithOp op);

ScalarExpr pow(const ScalarExpr& base, unsigned exponent);

/// ∂/∂x^λ with every jet variable held constant.
ScalarExpr partial_base(const ScalarExpr& f, int lambda);
/// ∂/∂y^i_Λ.
ScalarExpr partial_jet(const ScalarExpr& f, int i, const MultiIndex& multi);
ScalarExpr partial(const ScalarExpr& f, const Variable& v);

/// d_λ = ∂_λ + Σ y^i_{Λ+λ} ∂_i^Λ, summed over the jet variables present in f.
ScalarExpr total_derivative(const ScalarExpr& f, int lambda);
/// d_Λ; the identity for the empty multi-index.
ScalarExpr total_derivative(const ScalarExpr& f, const MultiIndex& multi);

/// Polynomial in a formal parameter t: power of t -> coefficient.
using TPolynomial = std::map<int, ScalarExpr>;

/// Substitutes y^i_Λ -> t·y^i_Λ; base variables are untouched.
TPolynomial fibre_scale(const ScalarExpr& f);

/// Substitutes y^i_Λ -> 0.
ScalarExpr restrict_to_zero_section(const ScalarExpr& f);

int jet_order(const ScalarExpr& f);
/// Maximum total monomial degree; 0 for the zero polynomial.
int degree(const ScalarExpr& f);

/// Jet variables occurring in f, in canonical order.
std::set<Variable> jet_variables(const ScalarExpr& f);

} // namespace jetvar
