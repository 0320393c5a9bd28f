#include "jetvar/calculus.hpp"

namespace jetvar {

Form total_derivative(const Form& phi, int lambda) {
  require_contact_basis(phi, "total_derivative");
  const Bundle& bundle = phi.bundle();
  bundle.check_base_index(lambda);
  Form out(bundle);
  for (const auto& [word, coef] : phi.terms()) {
    out.add_canonical(word, total_derivative(coef, lambda));
    for (std::size_t j = 0; j < word.size() && word[j].is_theta(); ++j) {
      Word lifted = word;
      lifted[j] = Generator::theta(word[j].index(), word[j].multi().plus(lambda));
      out += Form::term(coef, std::move(lifted));
    }
  }
  return out;
}

Form total_derivative(const Form& phi, const MultiIndex& multi) {
  multi.check(phi.bundle());
  Form out = phi;
  for (int lambda : multi.dirs()) {
    out = total_derivative(out, lambda);
  }
  return out;
}

Form d_h(const Form& phi) {
  require_contact_basis(phi, "d_h");
  const Bundle& bundle = phi.bundle();
  Form out(bundle);
  for (int lambda = 1; lambda <= bundle.n(); ++lambda) {
    out += wedge(Form::generator(bundle, Generator::dx(lambda)), total_derivative(phi, lambda));
  }
  return out;
}

Form d_v(const Form& phi) {
  require_contact_basis(phi, "d_v");
  const Bundle& bundle = phi.bundle();
  Form out(bundle);
  for (const auto& [word, coef] : phi.terms()) {
    Form rest = Form::term(ScalarExpr(bundle, Rational(1)), word);
    for (const auto& v : jet_variables(coef)) {
      Form theta = Form::generator(bundle, Generator::theta(v.index(), v.multi()));
      out += wedge(theta, partial(coef, v) * rest);
    }
  }
  return out;
}

Form d_full(const Form& phi) { return d_h(phi) + d_v(phi); }

Form d_classic(const Form& phi) {
  if (phi.has_theta()) {
    throw PreconditionViolation("d_classic expects a form written in dx/dy generators");
  }
  const Bundle& bundle = phi.bundle();
  Form out(bundle);
  for (const auto& [word, coef] : phi.terms()) {
    Form rest = Form::term(ScalarExpr(bundle, Rational(1)), word);
    std::set<Variable> vars;
    for (const auto& term : coef.terms()) {
      for (const auto& p : term.first.powers()) {
        vars.insert(p.first);
      }
    }
    for (const auto& v : vars) {
      Generator g = v.is_base() ? Generator::dx(v.index()) : Generator::dy(v.index(), v.multi());
      out += wedge(Form::generator(bundle, g), partial(coef, v) * rest);
    }
  }
  return out;
}

Form apply(Differential op, const Form& phi) {
  switch (op) {
  case Differential::horizontal:
    return d_h(phi);
  case Differential::vertical:
    return d_v(phi);
  case Differential::full:
    return d_full(phi);
  }
  throw PreconditionViolation("unknown differential");
}

bool is_closed(const Form& phi, Differential op) { return apply(op, phi).is_zero(); }

} // namespace jetvar
