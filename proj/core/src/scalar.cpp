#include "jetvar/scalar.hpp"

#include <algorithm>
#include <string>

namespace jetvar {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) {
    return q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---------------------------------------------------------------------------
// Bundle

Bundle::Bundle(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1) {
    throw PreconditionViolation("bundle dimensions must satisfy n >= 1, m >= 1 (got n=" +
                                std::to_string(n) + ", m=" + std::to_string(m) + ")");
  }
}

void Bundle::check_base_index(int lambda) const {
  if (lambda < 1 || lambda > n_) {
    throw IndexOutOfRange("base index " + std::to_string(lambda) + " outside [1, " +
                          std::to_string(n_) + "]");
  }
}

void Bundle::check_fibre_index(int i) const {
  if (i < 1 || i > m_) {
    throw IndexOutOfRange("fibre index " + std::to_string(i) + " outside [1, " +
                          std::to_string(m_) + "]");
  }
}

void require_same_bundle(const Bundle& a, const Bundle& b) {
  if (!(a == b)) {
    throw BundleMismatch("operands live on different bundles (n=" + std::to_string(a.n()) +
                         ",m=" + std::to_string(a.m()) + " vs n=" + std::to_string(b.n()) +
                         ",m=" + std::to_string(b.m()) + ")");
  }
}

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> dirs) : dirs_(std::move(dirs)) {
  std::sort(dirs_.begin(), dirs_.end());
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex out;
  out.dirs_.reserve(dirs_.size() + other.dirs_.size());
  std::merge(dirs_.begin(), dirs_.end(), other.dirs_.begin(), other.dirs_.end(),
             std::back_inserter(out.dirs_));
  return out;
}

MultiIndex MultiIndex::plus(int lambda) const {
  MultiIndex out = *this;
  out.dirs_.insert(std::upper_bound(out.dirs_.begin(), out.dirs_.end(), lambda), lambda);
  return out;
}

int MultiIndex::count(int lambda) const {
  auto [lo, hi] = std::equal_range(dirs_.begin(), dirs_.end(), lambda);
  return static_cast<int>(hi - lo);
}

void MultiIndex::check(const Bundle& bundle) const {
  for (int d : dirs_) {
    bundle.check_base_index(d);
  }
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.dirs_.size() <=> b.dirs_.size(); c != 0) {
    return c;
  }
  return a.dirs_ <=> b.dirs_;
}

// ---------------------------------------------------------------------------
// Variable

Variable Variable::base(int lambda) { return Variable(Kind::base, lambda, {}); }

Variable Variable::jet(int i, MultiIndex multi) { return Variable(Kind::jet, i, std::move(multi)); }

void Variable::check(const Bundle& bundle) const {
  if (is_base()) {
    bundle.check_base_index(index_);
  } else {
    bundle.check_fibre_index(index_);
    multi_.check(bundle);
  }
}

std::strong_ordering operator<=>(const Variable& a, const Variable& b) {
  if (a.kind_ != b.kind_) {
    return a.is_base() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.index_ <=> b.index_; c != 0) {
    return c;
  }
  return a.multi_ <=> b.multi_;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Power> powers) {
  std::sort(powers.begin(), powers.end(),
            [](const Power& a, const Power& b) { return a.first < b.first; });
  for (auto& [var, e] : powers) {
    if (e < 0) {
      throw PreconditionViolation("negative exponent in monomial");
    }
    if (e == 0) {
      continue;
    }
    if (!powers_.empty() && powers_.back().first == var) {
      powers_.back().second += e;
    } else {
      powers_.emplace_back(std::move(var), e);
    }
  }
}

int Monomial::degree() const noexcept {
  int d = 0;
  for (const auto& p : powers_) {
    d += p.second;
  }
  return d;
}

int Monomial::fibre_degree() const noexcept {
  int d = 0;
  for (const auto& [v, e] : powers_) {
    if (v.is_jet()) {
      d += e;
    }
  }
  return d;
}

int Monomial::jet_order() const noexcept {
  int r = 0;
  for (const auto& p : powers_) {
    if (p.first.is_jet()) {
      r = std::max(r, static_cast<int>(p.first.multi().order()));
    }
  }
  return r;
}

int Monomial::exponent(const Variable& v) const noexcept {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), v,
                             [](const Power& p, const Variable& x) { return p.first < x; });
  return (it != powers_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.powers_.reserve(powers_.size() + other.powers_.size());
  auto a = powers_.begin();
  auto b = other.powers_.begin();
  while (a != powers_.end() && b != other.powers_.end()) {
    if (a->first < b->first) {
      out.powers_.push_back(*a++);
    } else if (b->first < a->first) {
      out.powers_.push_back(*b++);
    } else {
      out.powers_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.powers_.insert(out.powers_.end(), a, powers_.end());
  out.powers_.insert(out.powers_.end(), b, other.powers_.end());
  return out;
}

std::pair<int, Monomial> Monomial::divide_by(const Variable& v) const {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), v,
                             [](const Power& p, const Variable& x) { return p.first < x; });
  if (it == powers_.end() || !(it->first == v)) {
    return {0, Monomial{}};
  }
  Monomial out = *this;
  auto pos = out.powers_.begin() + (it - powers_.begin());
  int e = pos->second;
  if (--pos->second == 0) {
    out.powers_.erase(pos);
  }
  return {e, std::move(out)};
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) {
    return c;
  }
  // Lexicographic on exponent vectors: the first variable (in canonical order)
  // where the exponents differ decides, larger exponent is larger.
  auto ia = a.powers_.begin();
  auto ib = b.powers_.begin();
  for (; ia != a.powers_.end() && ib != b.powers_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) {
      return ia->first < ib->first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (ia->second != ib->second) {
      return ia->second <=> ib->second;
    }
  }
  if (ia != a.powers_.end()) {
    return std::strong_ordering::greater;
  }
  if (ib != b.powers_.end()) {
    return std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// ScalarExpr

ScalarExpr::ScalarExpr(Bundle bundle, const Rational& constant) : bundle_(bundle) {
  add_term(Monomial{}, constant);
}

ScalarExpr ScalarExpr::variable(Bundle bundle, const Variable& v) {
  v.check(bundle);
  ScalarExpr out(bundle);
  out.terms_.emplace(Monomial({{v, 1}}), Rational(1));
  return out;
}

ScalarExpr ScalarExpr::base(Bundle bundle, int lambda) {
  return variable(bundle, Variable::base(lambda));
}

ScalarExpr ScalarExpr::jet(Bundle bundle, int i, MultiIndex multi) {
  return variable(bundle, Variable::jet(i, std::move(multi)));
}

ScalarExpr ScalarExpr::monomial(Bundle bundle, const Monomial& mono, const Rational& coef) {
  for (const auto& p : mono.powers()) {
    p.first.check(bundle);
  }
  ScalarExpr out(bundle);
  out.add_term(mono, coef);
  return out;
}

bool ScalarExpr::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational ScalarExpr::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

void ScalarExpr::add_term(const Monomial& mono, const Rational& coef) {
  if (coef == 0) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(mono, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& other) {
  require_same_bundle(bundle_, other.bundle_);
  for (const auto& [mono, c] : other.terms_) {
    add_term(mono, c);
  }
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& other) {
  require_same_bundle(bundle_, other.bundle_);
  for (const auto& [mono, c] : other.terms_) {
    add_term(mono, -c);
  }
  return *this;
}

ScalarExpr& ScalarExpr::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& term : terms_) {
    term.second *= q;
  }
  return *this;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  require_same_bundle(a.bundle_, b.bundle_);
  ScalarExpr out(a.bundle_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

ScalarExpr operator-(ScalarExpr a) {
  for (auto& term : a.terms_) {
    term.second = -term.second;
  }
  return a;
}

ScalarExpr arith(const ScalarExpr& a, const ScalarExpr& b, ArithOp op) {
  switch (op) {
  case ArithOp::add:
    return a + b;
  case ArithOp::sub:
    return a - b;
  case ArithOp::mul:
    return a * b;
  }
  throw PreconditionViolation("unknown arithmetic operation");
}

ScalarExpr pow(const ScalarExpr& base, unsigned exponent) {
  ScalarExpr result(base.bundle(), Rational(1));
  ScalarExpr square = base;
  while (exponent != 0) {
    if (exponent & 1u) {
      result = result * square;
    }
    exponent >>= 1;
    if (exponent != 0) {
      square = square * square;
    }
  }
  return result;
}

ScalarExpr partial(const ScalarExpr& f, const Variable& v) {
  v.check(f.bundle());
  ScalarExpr out(f.bundle());
  for (const auto& [mono, c] : f.terms()) {
    auto [e, rest] = mono.divide_by(v);
    if (e != 0) {
      out.add_term(rest, c * e);
    }
  }
  return out;
}

ScalarExpr partial_base(const ScalarExpr& f, int lambda) {
  return partial(f, Variable::base(lambda));
}

ScalarExpr partial_jet(const ScalarExpr& f, int i, const MultiIndex& multi) {
  return partial(f, Variable::jet(i, multi));
}

ScalarExpr total_derivative(const ScalarExpr& f, int lambda) {
  f.bundle().check_base_index(lambda);
  const Variable x = Variable::base(lambda);
  ScalarExpr out(f.bundle());
  for (const auto& [mono, c] : f.terms()) {
    for (const auto& [v, e] : mono.powers()) {
      if (v.is_base()) {
        if (v == x) {
          out.add_term(mono.divide_by(v).second, c * e);
        }
        continue;
      }
      Monomial lifted({{Variable::jet(v.index(), v.multi().plus(lambda)), 1}});
      out.add_term(mono.divide_by(v).second * lifted, c * e);
    }
  }
  return out;
}

ScalarExpr total_derivative(const ScalarExpr& f, const MultiIndex& multi) {
  multi.check(f.bundle());
  ScalarExpr out = f;
  for (int lambda : multi.dirs()) {
    out = total_derivative(out, lambda);
  }
  return out;
}

TPolynomial fibre_scale(const ScalarExpr& f) {
  TPolynomial out;
  for (const auto& [mono, c] : f.terms()) {
    auto [it, _] = out.try_emplace(mono.fibre_degree(), f.bundle());
    it->second.add_term(mono, c);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

ScalarExpr restrict_to_zero_section(const ScalarExpr& f) {
  ScalarExpr out(f.bundle());
  for (const auto& [mono, c] : f.terms()) {
    if (mono.fibre_degree() == 0) {
      out.add_term(mono, c);
    }
  }
  return out;
}

int jet_order(const ScalarExpr& f) {
  int r = 0;
  for (const auto& term : f.terms()) {
    r = std::max(r, term.first.jet_order());
  }
  return r;
}

int degree(const ScalarExpr& f) {
  int d = 0;
  for (const auto& term : f.terms()) {
    d = std::max(d, term.first.degree());
  }
  return d;
}

std::set<Variable> jet_variables(const ScalarExpr& f) {
  std::set<Variable> out;
  for (const auto& term : f.terms()) {
    for (const auto& p : term.first.powers()) {
      if (p.first.is_jet()) {
        out.insert(p.first);
      }
    }
  }
  return out;
}

} // namespace jetvar
