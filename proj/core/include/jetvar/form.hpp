#pragma once

// Exterior algebra of pull-back forms in the contact basis {θ^i_Λ, dx^λ}.

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "jetvar/scalar.hpp"

namespace jetvar {

/// A basic 1-form. Dy (dy^i_Λ) only appears in input forms; every form that
/// leaves convert_dy_to_contact is written in Theta and Dx generators.
class Generator {
public:
  enum class Kind { theta = 0, dy = 1, dx = 2 };

  static Generator theta(int i, MultiIndex multi = {});
  static Generator dy(int i, MultiIndex multi = {});
  static Generator dx(int lambda);

  Kind kind() const noexcept { return kind_; }
  bool is_theta() const noexcept { return kind_ == Kind::theta; }
  bool is_dy() const noexcept { return kind_ == Kind::dy; }
  bool is_dx() const noexcept { return kind_ == Kind::dx; }
  /// i for Theta/Dy, λ for Dx.
  int index() const noexcept { return index_; }
  const MultiIndex& multi() const noexcept { return multi_; }

  void check(const Bundle& bundle) const;

  /// Theta (by i, |Λ|, Λ) < Dy (same key) < Dx (by λ).
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b);
  friend bool operator==(const Generator&, const Generator&) = default;

private:
  Generator(Kind kind, int index, MultiIndex multi)
      : kind_(kind), index_(index), multi_(std::move(multi)) {}

  Kind kind_;
  int index_;
  MultiIndex multi_;
};

/// Strictly increasing wedge word of generators.
using Word = std::vector<Generator>;

struct Bidegree {
  int contact;    // k: number of θ factors
  int horizontal; // s: number of dx factors
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

Bidegree bidegree_of(const Word& word);

/// Sorts a word into canonical order. Returns the permutation sign, or 0 when
/// a generator repeats.
int canonicalize_word(Word& word);

/// Finite sum of coef·word with canonical words, merged and free of zeros.
class Form {
public:
  using Terms = std::map<Word, ScalarExpr>;

  explicit Form(Bundle bundle) : bundle_(bundle) {}
  /// The 0-form f.
  explicit Form(const ScalarExpr& f);

  static Form generator(Bundle bundle, const Generator& g);
  /// coef · (w1 ∧ w2 ∧ ...) for a word in arbitrary order.
  static Form term(const ScalarExpr& coef, Word word);

  const Bundle& bundle() const noexcept { return bundle_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool has_dy() const noexcept;
  bool has_theta() const noexcept;

  /// Bidegree shared by every term, or nullopt for mixed forms and for zero.
  std::optional<Bidegree> bidegree() const;
  /// The scalar coefficient of the empty word (the 0-form part).
  ScalarExpr scalar_part() const;
  ScalarExpr coefficient(const Word& word) const;

  /// Adds coef·word; the word must already be canonical.
  void add_canonical(const Word& word, const ScalarExpr& coef);

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(const ScalarExpr& f);
  Form& operator*=(const Rational& q);

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const ScalarExpr& f, Form a) { return a *= f; }
  friend Form operator*(Form a, const ScalarExpr& f) { return a *= f; }
  friend Form operator*(const Rational& q, Form a) { return a *= q; }
  friend Form operator-(Form a);

  friend bool operator==(const Form& a, const Form& b) {
    return a.bundle_ == b.bundle_ && a.terms_ == b.terms_;
  }

private:
  Bundle bundle_;
  Terms terms_;
};

/// ω = dx^1 ∧ ... ∧ dx^n.
Word volume_word(const Bundle& bundle);
Form volume_form(const Bundle& bundle);

Form wedge(const Form& a, const Form& b);

/// Rewrites every dy^i_Λ as θ^i_Λ + Σ_λ y^i_{Λ+λ} dx^λ.
Form convert_dy_to_contact(const Form& phi);

struct BidegreeComponent {
  Bidegree bidegree;
  Form form;
};

/// Pure-bidegree components ordered by (k, s).
std::vector<BidegreeComponent> split_bidegree(const Form& phi);

/// h_k: the contact-degree-k part (Dy input is converted first).
Form contact_projection(const Form& phi, int k);
inline Form horizontal_projection(const Form& phi) { return contact_projection(phi, 0); }

/// Pull-back by the zero section: y^i_Λ -> 0, contact terms dropped.
Form zero_section_pullback(const Form& phi);

/// Graded interior product with ȳ = y^i_Λ ∂_i^Λ.
Form euler_contraction(const Form& phi);

/// Interior product with the vector dual to θ^i_Λ, from the left.
Form contract_theta(const Form& phi, int i, const MultiIndex& multi);

/// Maximum jet order over coefficients and contact generators.
int jet_order(const Form& phi);
/// Maximum coefficient degree.
int degree(const Form& phi);

void require_contact_basis(const Form& phi, const char* operation);

} // namespace jetvar
