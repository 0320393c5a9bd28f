#include "jetvar/euler.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "jetvar/calculus.hpp"

namespace jetvar {

SourceForm::SourceForm(Bundle bundle)
    : bundle_(bundle), components_(static_cast<std::size_t>(bundle.m()), ScalarExpr(bundle)) {}

SourceForm::SourceForm(Bundle bundle, std::vector<ScalarExpr> components)
    : bundle_(bundle), components_(std::move(components)) {
  if (components_.size() != static_cast<std::size_t>(bundle.m())) {
    throw PreconditionViolation("source form needs exactly m = " + std::to_string(bundle.m()) +
                                " components");
  }
  for (const auto& c : components_) {
    require_same_bundle(bundle_, c.bundle());
  }
}

SourceForm SourceForm::from_form(const Form& phi) {
  const Form contact = convert_dy_to_contact(phi);
  const Bundle& bundle = contact.bundle();
  const Word omega = volume_word(bundle);
  SourceForm out(bundle);
  for (const auto& [word, coef] : contact.terms()) {
    bool shaped = word.size() == omega.size() + 1 && word.front().is_theta() &&
                  word.front().multi().empty() &&
                  std::equal(omega.begin(), omega.end(), word.begin() + 1);
    if (!shaped) {
      throw PreconditionViolation(
          "not a source form: every term must be Δ_i θ^i ∧ dx^1 ∧ ... ∧ dx^n");
    }
    out.components_[static_cast<std::size_t>(word.front().index() - 1)] += coef;
  }
  return out;
}

const ScalarExpr& SourceForm::component(int i) const {
  bundle_.check_fibre_index(i);
  return components_[static_cast<std::size_t>(i - 1)];
}

bool SourceForm::is_zero() const noexcept {
  for (const auto& c : components_) {
    if (!c.is_zero()) {
      return false;
    }
  }
  return true;
}

Form SourceForm::to_form() const {
  Form out(bundle_);
  const Word omega = volume_word(bundle_);
  for (int i = 1; i <= bundle_.m(); ++i) {
    Word w{Generator::theta(i)};
    w.insert(w.end(), omega.begin(), omega.end());
    out.add_canonical(w, components_[static_cast<std::size_t>(i - 1)]);
  }
  return out;
}

KContactTopForm::KContactTopForm(Form form, int k) : form_(std::move(form)), k_(k) {
  if (k < 1) {
    throw PreconditionViolation("interior Euler operator needs contact degree k >= 1");
  }
  require_contact_basis(form_, "interior_euler");
  const int n = form_.bundle().n();
  for (const auto& term : form_.terms()) {
    Bidegree b = bidegree_of(term.first);
    if (b.contact != k || b.horizontal != n) {
      throw PreconditionViolation("interior Euler operator expects bidegree (" +
                                  std::to_string(k) + ", " + std::to_string(n) + "), got (" +
                                  std::to_string(b.contact) + ", " +
                                  std::to_string(b.horizontal) + ")");
    }
  }
}

KContactTopForm interior_euler(const KContactTopForm& phi) {
  const Form& form = phi.form();
  const Bundle& bundle = form.bundle();

  std::set<Generator> thetas;
  for (const auto& term : form.terms()) {
    for (const auto& g : term.first) {
      if (g.is_theta()) {
        thetas.insert(g);
      }
    }
  }

  Form out(bundle);
  for (int i = 1; i <= bundle.m(); ++i) {
    Form inner(bundle);
    for (const auto& g : thetas) {
      if (g.index() != i) {
        continue;
      }
      Form piece = total_derivative(contract_theta(form, i, g.multi()), g.multi());
      if (g.multi().order() % 2 == 1) {
        inner -= piece;
      } else {
        inner += piece;
      }
    }
    out += wedge(Form::generator(bundle, Generator::theta(i)), inner);
  }
  out *= Rational(1, phi.contact_degree());
  return KContactTopForm(std::move(out), phi.contact_degree());
}

Form interior_euler(const Form& phi, int k) {
  return interior_euler(KContactTopForm(convert_dy_to_contact(phi), k)).form();
}

SourceForm euler_lagrange(const ScalarExpr& lagrangian) {
  const Bundle& bundle = lagrangian.bundle();
  std::vector<ScalarExpr> comps(static_cast<std::size_t>(bundle.m()), ScalarExpr(bundle));
  for (const auto& v : jet_variables(lagrangian)) {
    ScalarExpr term = total_derivative(partial(lagrangian, v), v.multi());
    auto& slot = comps[static_cast<std::size_t>(v.index() - 1)];
    if (v.multi().order() % 2 == 1) {
      slot -= term;
    } else {
      slot += term;
    }
  }
  return SourceForm(bundle, std::move(comps));
}

Form variational_differential(const Form& phi, int k) {
  return interior_euler(contact_projection(d_full(phi), k), k);
}

Form helmholtz(const SourceForm& source) { return variational_differential(source.to_form(), 2); }

bool is_variationally_trivial(const ScalarExpr& lagrangian) {
  return euler_lagrange(lagrangian).is_zero();
}

bool is_locally_variational(const SourceForm& source) { return helmholtz(source).is_zero(); }

} // namespace jetvar
