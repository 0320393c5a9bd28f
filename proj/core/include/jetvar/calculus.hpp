#pragma once

// The differentials d = d_H + d_V of the variational bicomplex.

#include "jetvar/form.hpp"

namespace jetvar {

/// Total derivative d_λ acting on a contact-basis form: on coefficients, and
/// θ^i_Λ -> θ^i_{Λ+λ}; dx^μ is constant.
Form total_derivative(const Form& phi, int lambda);
Form total_derivative(const Form& phi, const MultiIndex& multi);

/// d_H φ = dx^λ ∧ d_λ φ.
Form d_h(const Form& phi);
/// d_V φ = θ^i_Λ ∧ ∂_i^Λ φ over the jet variables in the coefficients.
Form d_v(const Form& phi);
/// d_H + d_V.
Form d_full(const Form& phi);
/// Exterior derivative of a form written in dx/dy generators, all
/// coordinates independent. The result is again in dx/dy generators.
Form d_classic(const Form& phi);

enum class Differential { horizontal, vertical, full };

Form apply(Differential op, const Form& phi);
bool is_closed(const Form& phi, Differential op);

} // namespace jetvar
