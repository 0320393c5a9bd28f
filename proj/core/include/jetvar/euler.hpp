#pragma once

// Interior Euler projection and the maps of the variational complex.

#include <vector>

#include "jetvar/form.hpp"

namespace jetvar {

/// Σ_i Δ_i θ^i ∧ ω: an element of E_1.
class SourceForm {
public:
  explicit SourceForm(Bundle bundle);
  /// components[i-1] = Δ_i; exactly m entries.
  SourceForm(Bundle bundle, std::vector<ScalarExpr> components);

  /// Reads a (1, n)-form whose contact factors are all order-zero θ^i.
  static SourceForm from_form(const Form& phi);

  const Bundle& bundle() const noexcept { return bundle_; }
  const std::vector<ScalarExpr>& components() const noexcept { return components_; }
  /// 1-based fibre index.
  const ScalarExpr& component(int i) const;
  bool is_zero() const noexcept;

  Form to_form() const;

  friend bool operator==(const SourceForm&, const SourceForm&) = default;

private:
  Bundle bundle_;
  std::vector<ScalarExpr> components_;
};

/// A form of pure bidegree (k, n), k >= 1.
class KContactTopForm {
public:
  KContactTopForm(Form form, int k);

  const Form& form() const noexcept { return form_; }
  int contact_degree() const noexcept { return k_; }

private:
  Form form_;
  int k_;
};

/// τ_k(φ) = (1/k) Σ_i θ^i ∧ Σ_Λ (-1)^{|Λ|} d_Λ(ρ_{i,Λ} φ), with ρ_{i,Λ} the
/// contraction with the vector dual to θ^i_Λ.
KContactTopForm interior_euler(const KContactTopForm& phi);
/// Validates that φ has bidegree (k, n) and applies τ_k.
Form interior_euler(const Form& phi, int k);

/// ε_1: Δ_i = Σ_Λ (-1)^{|Λ|} d_Λ(∂_i^Λ L).
SourceForm euler_lagrange(const ScalarExpr& lagrangian);

/// ε_k = τ_k ∘ d on (k-1, n)-forms.
Form variational_differential(const Form& phi, int k);

/// ε_2 = τ_2 ∘ d on source forms.
Form helmholtz(const SourceForm& source);

bool is_variationally_trivial(const ScalarExpr& lagrangian);
bool is_locally_variational(const SourceForm& source);

} // namespace jetvar
