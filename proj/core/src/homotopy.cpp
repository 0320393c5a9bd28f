#include "jetvar/homotopy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "jetvar/calculus.hpp"
#include "jetvar/linear_system.hpp"
#include "jetvar/syntax.hpp"

namespace jetvar {

void SolveBounds::validate() const {
  if (max_jet_order < 0 || max_poly_degree < 0) {
    throw PreconditionViolation("solver bounds must be nonnegative");
  }
}

NotFoundWithinBounds::NotFoundWithinBounds(SolveBounds bounds, std::string witness)
    : Error("no potential within bounds (max_jet_order=" + std::to_string(bounds.max_jet_order) +
            ", max_poly_degree=" + std::to_string(bounds.max_poly_degree) + "): " + witness),
      bounds_(bounds), witness_(std::move(witness)) {}

// ---------------------------------------------------------------------------
// Fibre-scaling homotopy

Form koszul_homotopy(const Form& phi) {
  require_contact_basis(phi, "koszul_homotopy");
  const Bundle& bundle = phi.bundle();
  Form out(bundle);
  for (const auto& [word, coef] : phi.terms()) {
    const int k = bidegree_of(word).contact;
    if (k == 0) {
      continue;
    }
    for (const auto& [mono, c] : coef.terms()) {
      Form term = Form::term(ScalarExpr::monomial(bundle, mono, c), word);
      out += Rational(1, k + mono.fibre_degree()) * euler_contraction(term);
    }
  }
  return out;
}

Form koszul_homotopy_by_integration(const Form& phi) {
  require_contact_basis(phi, "koszul_homotopy_by_integration");
  const Bundle& bundle = phi.bundle();
  // t-exponent -> form coefficient of the integrand t^{k-1} (ȳ⌋φ)(x, t·y).
  std::map<int, Form> integrand;
  for (const auto& [word, coef] : phi.terms()) {
    const int k = bidegree_of(word).contact;
    if (k == 0) {
      continue;
    }
    for (const auto& [p, part] : fibre_scale(coef)) {
      auto [it, _] = integrand.try_emplace(k - 1 + p, bundle);
      it->second += euler_contraction(Form::term(part, word));
    }
  }
  Form out(bundle);
  for (const auto& [q, form] : integrand) {
    out += Rational(1, q + 1) * form;
  }
  return out;
}

VerticalDecomposition dv_potential(const Form& phi) {
  require_contact_basis(phi, "dv_potential");
  if (!d_v(phi).is_zero()) {
    throw PreconditionViolation("dv_potential expects a d_V-closed form");
  }
  VerticalDecomposition out{koszul_homotopy(phi), zero_section_pullback(phi)};
  if (!(d_v(out.potential) + out.base_part == phi)) {
    throw InternalInconsistency("vertical homotopy identity failed");
  }
  return out;
}

DeRhamDecomposition poincare_decompose(const Form& phi) {
  require_contact_basis(phi, "poincare_decompose");
  if (!d_full(phi).is_zero()) {
    throw PreconditionViolation("poincare_decompose expects a d-closed form");
  }
  DeRhamDecomposition out{zero_section_pullback(phi), koszul_homotopy(phi)};
  if (!(out.base_part + d_full(out.potential) == phi)) {
    throw InternalInconsistency("de Rham homotopy identity failed");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration helpers

std::vector<MultiIndex> enumerate_multi_indices(int n, int max_order) {
  std::vector<MultiIndex> out{MultiIndex{}};
  std::vector<MultiIndex> layer{MultiIndex{}};
  for (int r = 1; r <= max_order; ++r) {
    std::vector<MultiIndex> next;
    for (const auto& multi : layer) {
      int from = multi.empty() ? 1 : multi.dirs().back();
      for (int lambda = from; lambda <= n; ++lambda) {
        next.push_back(multi.plus(lambda));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> enumerate_monomials(const Bundle& bundle, int max_order, int max_degree) {
  std::vector<Variable> vars;
  for (int lambda = 1; lambda <= bundle.n(); ++lambda) {
    vars.push_back(Variable::base(lambda));
  }
  const auto multis = enumerate_multi_indices(bundle.n(), max_order);
  for (int i = 1; i <= bundle.m(); ++i) {
    for (const auto& multi : multis) {
      vars.push_back(Variable::jet(i, multi));
    }
  }
  std::vector<Monomial> out;
  std::vector<Monomial::Power> powers;
  auto recurse = [&](auto&& self, std::size_t next, int budget) -> void {
    out.emplace_back(powers);
    for (std::size_t v = next; v < vars.size(); ++v) {
      for (int e = 1; e <= budget; ++e) {
        powers.emplace_back(vars[v], e);
        self(self, v + 1, budget - e);
        powers.pop_back();
      }
    }
  };
  recurse(recurse, 0, max_degree);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Exact solve of Σ_j z_j images[j] = target, matching every (word, monomial)
// coefficient.
struct AnsatzResult {
  std::optional<std::vector<Rational>> values;
  std::string witness;
};

AnsatzResult solve_ansatz(const std::vector<Form>& images, const Form& target) {
  using Key = std::pair<Word, Monomial>;
  std::map<Key, std::size_t> row_index;
  std::vector<SparseLinearSystem::Row> rows;
  std::vector<Rational> rhs;
  auto row_of = [&](const Word& w, const Monomial& mono) -> std::size_t {
    auto [it, inserted] = row_index.try_emplace(Key{w, mono}, rows.size());
    if (inserted) {
      rows.emplace_back();
      rhs.emplace_back(0);
    }
    return it->second;
  };
  for (std::size_t j = 0; j < images.size(); ++j) {
    for (const auto& [word, coef] : images[j].terms()) {
      for (const auto& [mono, c] : coef.terms()) {
        rows[row_of(word, mono)][j] = c;
      }
    }
  }
  for (const auto& [word, coef] : target.terms()) {
    for (const auto& [mono, c] : coef.terms()) {
      rhs[row_of(word, mono)] = c;
    }
  }

  SparseLinearSystem system(images.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    system.add_equation(std::move(rows[r]), rhs[r]);
  }
  auto solved = system.solve();
  if (auto* sol = std::get_if<SparseLinearSystem::Solution>(&solved)) {
    return {std::move(sol->values), {}};
  }
  const auto& bad = std::get<SparseLinearSystem::Infeasible>(solved);
  std::string where = "?";
  for (const auto& [key, idx] : row_index) {
    if (idx == bad.witness_equation) {
      where = to_string(key.second) + (key.first.empty() ? "" : " * " + to_string(key.first));
      break;
    }
  }
  std::ostringstream os;
  os << "unknowns=" << system.unknowns() << " equations=" << system.equations()
     << " rank=" << bad.rank << " inconsistent at coefficient of " << where;
  return {std::nullopt, os.str()};
}

// Multigrading preserved by d_H: per base direction, the number of
// occurrences in jet/θ multi-indices minus the x-exponent minus the dx count;
// per fibre, the jet count and the θ count.
struct Grade {
  std::vector<int> dir;
  std::vector<int> jets;
  std::vector<int> thetas;
  friend auto operator<=>(const Grade&, const Grade&) = default;
};

Grade grade_of(const Bundle& bundle, const Word& word, const Monomial& mono) {
  Grade g{std::vector<int>(static_cast<std::size_t>(bundle.n()), 0),
          std::vector<int>(static_cast<std::size_t>(bundle.m()), 0),
          std::vector<int>(static_cast<std::size_t>(bundle.m()), 0)};
  auto add_dirs = [&](const MultiIndex& multi, int weight) {
    for (int d : multi.dirs()) {
      g.dir[static_cast<std::size_t>(d - 1)] += weight;
    }
  };
  for (const auto& [v, e] : mono.powers()) {
    if (v.is_base()) {
      g.dir[static_cast<std::size_t>(v.index() - 1)] -= e;
    } else {
      g.jets[static_cast<std::size_t>(v.index() - 1)] += e;
      add_dirs(v.multi(), e);
    }
  }
  for (const auto& gen : word) {
    if (gen.is_dx()) {
      g.dir[static_cast<std::size_t>(gen.index() - 1)] -= 1;
    } else {
      g.thetas[static_cast<std::size_t>(gen.index() - 1)] += 1;
      add_dirs(gen.multi(), 1);
    }
  }
  return g;
}

// Enumerates every (θ-word ∧ dx-word, monomial) of a given grade and
// horizontal degree with jet order <= R and coefficient degree <= D.
class GradedAnsatz {
public:
  GradedAnsatz(const Bundle& bundle, int horizontal, int max_order, int max_degree)
      : bundle_(bundle), horizontal_(horizontal), max_degree_(max_degree),
        multis_(enumerate_multi_indices(bundle.n(), max_order)) {}

  void collect(const Grade& grade, std::set<std::pair<Word, Monomial>>& out) {
    grade_ = &grade;
    out_ = &out;
    p_ = std::accumulate(grade.jets.begin(), grade.jets.end(), 0);
    if (p_ > max_degree_) {
      return;
    }
    slots_.clear();
    for (int i = 1; i <= bundle_.m(); ++i) {
      for (int t = 0; t < grade.thetas[static_cast<std::size_t>(i - 1)]; ++t) {
        slots_.push_back({i, true, t == 0});
      }
      for (int a = 0; a < grade.jets[static_cast<std::size_t>(i - 1)]; ++a) {
        slots_.push_back({i, false, a == 0});
      }
    }
    std::vector<int> dxs;
    choose_dx(1, dxs);
  }

private:
  struct Slot {
    int fibre;
    bool theta;
    bool first_of_group;
  };

  void choose_dx(int from, std::vector<int>& dxs) {
    if (static_cast<int>(dxs.size()) == horizontal_) {
      lo_.assign(static_cast<std::size_t>(bundle_.n()), 0);
      for (int lambda = 1; lambda <= bundle_.n(); ++lambda) {
        lo_[static_cast<std::size_t>(lambda - 1)] =
            grade_->dir[static_cast<std::size_t>(lambda - 1)];
      }
      for (int lambda : dxs) {
        lo_[static_cast<std::size_t>(lambda - 1)] += 1;
      }
      dxs_ = dxs;
      counts_.assign(static_cast<std::size_t>(bundle_.n()), 0);
      chosen_.assign(slots_.size(), 0);
      fill(0);
      return;
    }
    for (int lambda = from; lambda <= bundle_.n(); ++lambda) {
      dxs.push_back(lambda);
      choose_dx(lambda + 1, dxs);
      dxs.pop_back();
    }
  }

  int excess() const {
    int e = 0;
    for (std::size_t l = 0; l < counts_.size(); ++l) {
      e += std::max(0, counts_[l] - lo_[l]);
    }
    return e;
  }

  void fill(std::size_t slot) {
    if (excess() > max_degree_ - p_) {
      return;
    }
    if (slot == slots_.size()) {
      emit();
      return;
    }
    const Slot& s = slots_[slot];
    std::size_t start = 0;
    if (!s.first_of_group) {
      start = chosen_[slot - 1] + (s.theta ? 1 : 0);
    }
    for (std::size_t idx = start; idx < multis_.size(); ++idx) {
      chosen_[slot] = idx;
      for (int d : multis_[idx].dirs()) {
        counts_[static_cast<std::size_t>(d - 1)] += 1;
      }
      fill(slot + 1);
      for (int d : multis_[idx].dirs()) {
        counts_[static_cast<std::size_t>(d - 1)] -= 1;
      }
    }
  }

  void emit() {
    std::vector<Monomial::Power> powers;
    for (std::size_t l = 0; l < counts_.size(); ++l) {
      int e = counts_[l] - lo_[l];
      if (e < 0) {
        return;
      }
      if (e > 0) {
        powers.emplace_back(Variable::base(static_cast<int>(l) + 1), e);
      }
    }
    Word word;
    for (std::size_t j = 0; j < slots_.size(); ++j) {
      const MultiIndex& multi = multis_[chosen_[j]];
      if (slots_[j].theta) {
        word.push_back(Generator::theta(slots_[j].fibre, multi));
      } else {
        powers.emplace_back(Variable::jet(slots_[j].fibre, multi), 1);
      }
    }
    for (int lambda : dxs_) {
      word.push_back(Generator::dx(lambda));
    }
    out_->emplace(std::move(word), Monomial(std::move(powers)));
  }

  Bundle bundle_;
  int horizontal_;
  int max_degree_;
  std::vector<MultiIndex> multis_;

  const Grade* grade_ = nullptr;
  std::set<std::pair<Word, Monomial>>* out_ = nullptr;
  int p_ = 0;
  std::vector<Slot> slots_;
  std::vector<int> lo_;
  std::vector<int> dxs_;
  std::vector<int> counts_;
  std::vector<std::size_t> chosen_;
};

std::optional<Form> try_dh_potential(const Form& phi, Bidegree b, int max_order, int max_degree,
                                     std::string& witness) {
  const Bundle& bundle = phi.bundle();
  std::set<Grade> grades;
  for (const auto& [word, coef] : phi.terms()) {
    for (const auto& term : coef.terms()) {
      grades.insert(grade_of(bundle, word, term.first));
    }
  }
  std::set<std::pair<Word, Monomial>> basis;
  GradedAnsatz ansatz(bundle, b.horizontal - 1, max_order, max_degree);
  for (const auto& g : grades) {
    ansatz.collect(g, basis);
  }

  std::vector<Form> candidates;
  std::vector<Form> images;
  candidates.reserve(basis.size());
  images.reserve(basis.size());
  for (const auto& [word, mono] : basis) {
    candidates.push_back(Form::term(ScalarExpr::monomial(bundle, mono, Rational(1)), word));
    images.push_back(d_h(candidates.back()));
  }
  AnsatzResult result = solve_ansatz(images, phi);
  if (!result.values) {
    witness = std::move(result.witness);
    return std::nullopt;
  }
  Form sigma(bundle);
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if ((*result.values)[j] != 0) {
      sigma += (*result.values)[j] * candidates[j];
    }
  }
  return sigma;
}

// For a top-degree form Ψ of contact degree k: d_H(shift(Ψ, λ)) = d_λ Ψ.
Form shift(const Form& psi, int lambda, int k) {
  Form out(psi.bundle());
  const bool negative = (k + lambda - 1) % 2 == 1;
  for (const auto& [word, coef] : psi.terms()) {
    Word rest;
    for (const auto& g : word) {
      if (!(g.is_dx() && g.index() == lambda)) {
        rest.push_back(g);
      }
    }
    out.add_canonical(rest, negative ? -coef : coef);
  }
  return out;
}

// θ^i_Λ ∧ P = (-1)^|Λ| θ^i ∧ d_Λ P + d_H(result), for P of bidegree (k-1, n).
Form peel(int i, const MultiIndex& multi, const Form& p, int k) {
  if (multi.empty()) {
    return Form(p.bundle());
  }
  std::vector<int> dirs = multi.dirs();
  const int lambda = dirs.back();
  dirs.pop_back();
  MultiIndex lower(std::move(dirs));
  Form first = wedge(Form::generator(p.bundle(), Generator::theta(i, lower)), p);
  return shift(first, lambda, k) - peel(i, lower, total_derivative(p, lambda), k);
}

// k φ = Σ θ^i_Λ ∧ ρ_{i,Λ}(φ); peeling every d_λ off θ^i_Λ leaves k τ_k(φ)
// plus d_H of the returned form (before division by k).
Form integration_by_parts_potential(const Form& phi, int k) {
  std::set<std::pair<int, MultiIndex>> thetas;
  for (const auto& [word, coef] : phi.terms()) {
    for (const auto& g : word) {
      if (g.is_theta()) {
        thetas.emplace(g.index(), g.multi());
      }
    }
  }
  Form eta(phi.bundle());
  for (const auto& [i, multi] : thetas) {
    eta += peel(i, multi, contract_theta(phi, i, multi), k);
  }
  return make_rational(1, k) * eta;
}

} // namespace

SolveBounds default_bounds(const Form& phi) {
  return SolveBounds{jet_order(phi), degree(phi) + 1, true};
}

Form dh_potential(const Form& phi, const SolveBounds& bounds) {
  bounds.validate();
  require_contact_basis(phi, "dh_potential");
  const Bundle& bundle = phi.bundle();
  if (phi.is_zero()) {
    return Form(bundle);
  }
  auto b = phi.bidegree();
  if (!b) {
    throw PreconditionViolation("dh_potential expects a form of pure bidegree");
  }
  if (b->horizontal == 0) {
    throw PreconditionViolation("a nonzero form of horizontal degree 0 is never d_H-exact");
  }
  if (b->horizontal < bundle.n()) {
    if (!d_h(phi).is_zero()) {
      throw PreconditionViolation("dh_potential expects a d_H-closed form");
    }
  } else if (b->contact == 0) {
    if (!is_variationally_trivial(phi.coefficient(volume_word(bundle)))) {
      throw PreconditionViolation(
          "dh_potential: Lagrangian is not variationally trivial (Euler-Lagrange form is nonzero)");
    }
  } else if (!interior_euler(phi, b->contact).is_zero()) {
    throw PreconditionViolation("dh_potential: interior Euler projection of the form is nonzero");
  }

  if (b->horizontal == bundle.n() && b->contact >= 1) {
    Form sigma = integration_by_parts_potential(phi, b->contact);
    if (!(d_h(sigma) == phi)) {
      throw InternalInconsistency("integration by parts produced a wrong potential");
    }
    if (jet_order(sigma) <= bounds.max_jet_order && degree(sigma) <= bounds.max_poly_degree) {
      return sigma;
    }
  }

  std::vector<std::pair<int, int>> attempts;
  if (bounds.deepening) {
    const int r0 = std::min(std::max(jet_order(phi) - 1, 0), bounds.max_jet_order);
    const int d0 = std::min(degree(phi), bounds.max_poly_degree);
    for (int r = r0; r <= bounds.max_jet_order; ++r) {
      attempts.emplace_back(r, d0);
    }
    for (int d = d0 + 1; d <= bounds.max_poly_degree; ++d) {
      attempts.emplace_back(bounds.max_jet_order, d);
    }
  } else {
    attempts.emplace_back(bounds.max_jet_order, bounds.max_poly_degree);
  }

  std::string witness;
  for (auto [r, d] : attempts) {
    if (auto sigma = try_dh_potential(phi, *b, r, d, witness)) {
      if (!(d_h(*sigma) == phi)) {
        throw InternalInconsistency("dh_potential produced a wrong potential");
      }
      return *sigma;
    }
  }
  throw NotFoundWithinBounds(bounds, witness);
}

// ---------------------------------------------------------------------------

ScalarExpr tonti_lagrangian(const SourceForm& source) {
  if (!is_locally_variational(source)) {
    throw PreconditionViolation(
        "tonti_lagrangian: source form violates the Helmholtz conditions (helmholtz != 0)");
  }
  const Bundle& bundle = source.bundle();
  ScalarExpr lagrangian(bundle);
  for (int i = 1; i <= bundle.m(); ++i) {
    const ScalarExpr y = ScalarExpr::jet(bundle, i);
    for (const auto& [mono, c] : source.component(i).terms()) {
      Rational weight = c / (mono.fibre_degree() + 1);
      lagrangian += y * ScalarExpr::monomial(bundle, mono, weight);
    }
  }
  if (!(euler_lagrange(lagrangian) == source)) {
    throw InternalInconsistency("tonti_lagrangian self-check failed: ε1(L) != Δ");
  }
  return lagrangian;
}

KerDhDvDecomposition ker_dhdv_decompose(const Form& phi, const SolveBounds& bounds) {
  require_contact_basis(phi, "ker_dhdv_decompose");
  const Bundle& bundle = phi.bundle();
  if (phi.is_zero()) {
    return {Form(bundle), Form(bundle), Form(bundle), Form(bundle), Form(bundle)};
  }
  const Form dv_phi = d_v(phi);
  if (!d_h(dv_phi).is_zero()) {
    throw PreconditionViolation("ker_dhdv_decompose expects d_H d_V φ = 0");
  }

  KerDhDvDecomposition out{Form(bundle), Form(bundle), zero_section_pullback(phi),
                           koszul_homotopy(phi), std::nullopt};
  out.dv_closed = d_v(out.dv_primitive);
  // φ - d_V Hφ - φ_X = H d_V φ, and H anticommutes with d_H.
  out.dh_closed = phi - out.dv_closed - out.base_part;
  if (!d_h(out.dh_closed).is_zero()) {
    throw InternalInconsistency("ker_dhdv_decompose: remainder is not d_H-closed");
  }

  Form alpha(bundle);
  for (const auto& part : split_bidegree(out.dh_closed)) {
    const bool top = part.bidegree.horizontal == bundle.n();
    if (top) {
      const bool exact =
          part.bidegree.contact == 0
              ? is_variationally_trivial(part.form.coefficient(volume_word(bundle)))
              : interior_euler(part.form, part.bidegree.contact).is_zero();
      if (!exact) {
        return out;
      }
    }
    alpha += dh_potential(part.form, bounds);
  }
  out.dh_primitive = std::move(alpha);
  return out;
}

std::optional<ScalarExpr> lagrangian_by_ansatz(const SourceForm& source,
                                               const SolveBounds& bounds) {
  bounds.validate();
  const Bundle& bundle = source.bundle();
  const auto monomials = enumerate_monomials(bundle, bounds.max_jet_order, bounds.max_poly_degree);
  std::vector<Form> images;
  images.reserve(monomials.size());
  for (const auto& mono : monomials) {
    images.push_back(euler_lagrange(ScalarExpr::monomial(bundle, mono, Rational(1))).to_form());
  }
  AnsatzResult result = solve_ansatz(images, source.to_form());
  if (!result.values) {
    return std::nullopt;
  }
  ScalarExpr lagrangian(bundle);
  for (std::size_t j = 0; j < monomials.size(); ++j) {
    lagrangian.add_term(monomials[j], (*result.values)[j]);
  }
  return lagrangian;
}

} // namespace jetvar
