#pragma once

// Potentials: fibre-scaling homotopy, d_H-potentials by exact linear ansatz,
// Tonti Lagrangians and the Ker d_H d_V decomposition.

#include <optional>
#include <string>
#include <vector>

#include "jetvar/euler.hpp"
#include "jetvar/form.hpp"

namespace jetvar {

/// Caps on the ansatz searched by the potential solvers.
struct SolveBounds {
  int max_jet_order = 2;
  int max_poly_degree = 3;
  /// Walk order, then degree, upward from the smallest admissible start;
  /// otherwise try the final bounds only.
  bool deepening = true;

  void validate() const;
};

/// The solver found no potential inside the ansatz fixed by the final bounds.
class NotFoundWithinBounds : public Error {
public:
  NotFoundWithinBounds(SolveBounds bounds, std::string witness);

  const SolveBounds& bounds() const noexcept { return bounds_; }
  const std::string& witness() const noexcept { return witness_; }

private:
  SolveBounds bounds_;
  std::string witness_;
};

/// Fibre-scaling homotopy: a term of contact degree k whose coefficient
/// monomial has fibre degree p goes to (ȳ⌋term)/(k+p); k = p = 0 goes to 0.
Form koszul_homotopy(const Form& phi);

/// Same operator evaluated as ∫_0^1 t^{k-1} (ȳ⌋φ)(x, t·y) dt with exact
/// termwise integration of the t-polynomial.
Form koszul_homotopy_by_integration(const Form& phi);

struct VerticalDecomposition {
  Form potential; // σ
  Form base_part; // φ_X
};

/// φ = d_V σ + φ_X for d_V-closed φ.
VerticalDecomposition dv_potential(const Form& phi);

struct DeRhamDecomposition {
  Form base_part; // φ_X, closed, in x and dx only
  Form potential; // ξ
};

/// φ = φ_X + d ξ for d-closed φ.
DeRhamDecomposition poincare_decompose(const Form& phi);

/// σ with d_H σ = φ, for φ of pure bidegree (k, s) that is d_H-exact.
Form dh_potential(const Form& phi, const SolveBounds& bounds);

/// Bounds that start the deepening at the order guaranteed for Lagrangians
/// and leave one extra order and degree of room.
SolveBounds default_bounds(const Form& phi);

/// L = Σ_i y^i ∫_0^1 Δ_i(x, t·y) dt, self-checked against ε_1(L) = Δ.
ScalarExpr tonti_lagrangian(const SourceForm& source);

struct KerDhDvDecomposition {
  Form dh_closed;  // σ
  Form dv_closed;  // ξ
  Form base_part;  // φ_X
  Form dv_primitive; // β with ξ = d_V β
  /// α with σ = d_H α. Absent only when a top-horizontal-degree part of σ is
  /// d_H-closed but not d_H-exact.
  std::optional<Form> dh_primitive;
};

/// φ = σ + ξ + φ_X for φ with d_H d_V φ = 0.
KerDhDvDecomposition ker_dhdv_decompose(const Form& phi, const SolveBounds& bounds);

/// Every monomial with jet order <= max_order and degree <= max_degree.
std::vector<Monomial> enumerate_monomials(const Bundle& bundle, int max_order, int max_degree);

/// Multi-indices of order <= max_order, in canonical order.
std::vector<MultiIndex> enumerate_multi_indices(int n, int max_order);

/// Linear-ansatz inverse problem: some L within bounds with ε_1(L) = Δ, or
/// nullopt when the exact system is infeasible.
std::optional<ScalarExpr> lagrangian_by_ansatz(const SourceForm& source, const SolveBounds& bounds);

} // namespace jetvar
