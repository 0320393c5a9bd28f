#include "jetvar/form.hpp"

#include <algorithm>
#include <string>

namespace jetvar {

Generator Generator::theta(int i, MultiIndex multi) { return {Kind::theta, i, std::move(multi)}; }

Generator Generator::dy(int i, MultiIndex multi) { return {Kind::dy, i, std::move(multi)}; }

Generator Generator::dx(int lambda) { return {Kind::dx, lambda, {}}; }

void Generator::check(const Bundle& bundle) const {
  if (is_dx()) {
    bundle.check_base_index(index_);
  } else {
    bundle.check_fibre_index(index_);
    multi_.check(bundle);
  }
}

std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
  if (auto c = static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_); c != 0) {
    return c;
  }
  if (auto c = a.index_ <=> b.index_; c != 0) {
    return c;
  }
  return a.multi_ <=> b.multi_;
}

Bidegree bidegree_of(const Word& word) {
  Bidegree b{0, 0};
  for (const auto& g : word) {
    (g.is_dx() ? b.horizontal : b.contact) += 1;
  }
  return b;
}

int canonicalize_word(Word& word) {
  int sign = 1;
  // Insertion sort; words are short.
  for (std::size_t i = 1; i < word.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      auto c = word[j - 1] <=> word[j];
      if (c == 0) {
        return 0;
      }
      if (c < 0) {
        break;
      }
      std::swap(word[j - 1], word[j]);
      sign = -sign;
    }
  }
  return sign;
}

// ---------------------------------------------------------------------------
// Form

Form::Form(const ScalarExpr& f) : bundle_(f.bundle()) {
  if (!f.is_zero()) {
    terms_.emplace(Word{}, f);
  }
}

Form Form::generator(Bundle bundle, const Generator& g) {
  g.check(bundle);
  Form out(bundle);
  out.terms_.emplace(Word{g}, ScalarExpr(bundle, Rational(1)));
  return out;
}

Form Form::term(const ScalarExpr& coef, Word word) {
  for (const auto& g : word) {
    g.check(coef.bundle());
  }
  Form out(coef.bundle());
  int sign = canonicalize_word(word);
  if (sign == 0 || coef.is_zero()) {
    return out;
  }
  out.terms_.emplace(std::move(word), sign > 0 ? coef : -coef);
  return out;
}

bool Form::has_dy() const noexcept {
  for (const auto& term : terms_) {
    for (const auto& g : term.first) {
      if (g.is_dy()) {
        return true;
      }
    }
  }
  return false;
}

bool Form::has_theta() const noexcept {
  for (const auto& term : terms_) {
    for (const auto& g : term.first) {
      if (g.is_theta()) {
        return true;
      }
    }
  }
  return false;
}

std::optional<Bidegree> Form::bidegree() const {
  std::optional<Bidegree> out;
  for (const auto& term : terms_) {
    Bidegree b = bidegree_of(term.first);
    if (out && *out != b) {
      return std::nullopt;
    }
    out = b;
  }
  return out;
}

ScalarExpr Form::scalar_part() const { return coefficient(Word{}); }

ScalarExpr Form::coefficient(const Word& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? ScalarExpr(bundle_) : it->second;
}

void Form::add_canonical(const Word& word, const ScalarExpr& coef) {
  require_same_bundle(bundle_, coef.bundle());
  if (coef.is_zero()) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(word, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
}

Form& Form::operator+=(const Form& other) {
  require_same_bundle(bundle_, other.bundle_);
  for (const auto& [word, coef] : other.terms_) {
    add_canonical(word, coef);
  }
  return *this;
}

Form& Form::operator-=(const Form& other) {
  require_same_bundle(bundle_, other.bundle_);
  for (const auto& [word, coef] : other.terms_) {
    add_canonical(word, -coef);
  }
  return *this;
}

Form& Form::operator*=(const ScalarExpr& f) {
  require_same_bundle(bundle_, f.bundle());
  Terms out;
  for (auto& [word, coef] : terms_) {
    ScalarExpr c = coef * f;
    if (!c.is_zero()) {
      out.emplace(word, std::move(c));
    }
  }
  terms_ = std::move(out);
  return *this;
}

Form& Form::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& term : terms_) {
    term.second *= q;
  }
  return *this;
}

Form operator-(Form a) {
  for (auto& term : a.terms_) {
    term.second = -term.second;
  }
  return a;
}

// ---------------------------------------------------------------------------

Word volume_word(const Bundle& bundle) {
  Word w;
  for (int lambda = 1; lambda <= bundle.n(); ++lambda) {
    w.push_back(Generator::dx(lambda));
  }
  return w;
}

Form volume_form(const Bundle& bundle) {
  return Form::term(ScalarExpr(bundle, Rational(1)), volume_word(bundle));
}

namespace {

// Merges two canonical words; returns the sign of the shuffle or 0.
int merge_words(const Word& a, const Word& b, Word& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  int sign = 1;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = a[i] <=> b[j];
    if (c == 0) {
      return 0;
    }
    if (c < 0) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining a[i..].
      if ((a.size() - i) % 2 == 1) {
        sign = -sign;
      }
      out.push_back(b[j++]);
    }
  }
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return sign;
}

} // namespace

Form wedge(const Form& a, const Form& b) {
  require_same_bundle(a.bundle(), b.bundle());
  Form out(a.bundle());
  Word merged;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      int sign = merge_words(wa, wb, merged);
      if (sign == 0) {
        continue;
      }
      ScalarExpr c = ca * cb;
      out.add_canonical(merged, sign > 0 ? c : -c);
    }
  }
  return out;
}

Form convert_dy_to_contact(const Form& phi) {
  if (!phi.has_dy()) {
    return phi;
  }
  const Bundle& bundle = phi.bundle();
  const ScalarExpr one(bundle, Rational(1));
  Form out(bundle);
  for (const auto& [word, coef] : phi.terms()) {
    Form acc(coef);
    for (const auto& g : word) {
      Form factor = Form::generator(bundle, g.is_dy() ? Generator::theta(g.index(), g.multi()) : g);
      if (g.is_dy()) {
        for (int lambda = 1; lambda <= bundle.n(); ++lambda) {
          factor += Form::term(ScalarExpr::jet(bundle, g.index(), g.multi().plus(lambda)),
                               {Generator::dx(lambda)});
        }
      }
      acc = wedge(acc, factor);
    }
    out += acc;
  }
  return out;
}

std::vector<BidegreeComponent> split_bidegree(const Form& phi) {
  const Form contact = convert_dy_to_contact(phi);
  std::map<Bidegree, Form> parts;
  for (const auto& [word, coef] : contact.terms()) {
    auto [it, _] = parts.try_emplace(bidegree_of(word), contact.bundle());
    it->second.add_canonical(word, coef);
  }
  std::vector<BidegreeComponent> out;
  for (auto& [b, form] : parts) {
    out.push_back({b, std::move(form)});
  }
  return out;
}

Form contact_projection(const Form& phi, int k) {
  if (k < 0) {
    throw PreconditionViolation("contact projection degree must be >= 0");
  }
  const Form contact = convert_dy_to_contact(phi);
  Form out(contact.bundle());
  for (const auto& [word, coef] : contact.terms()) {
    if (bidegree_of(word).contact == k) {
      out.add_canonical(word, coef);
    }
  }
  return out;
}

void require_contact_basis(const Form& phi, const char* operation) {
  if (phi.has_dy()) {
    throw PreconditionViolation(std::string(operation) +
                                " expects a form in the contact basis (convert dy first)");
  }
}

Form zero_section_pullback(const Form& phi) {
  require_contact_basis(phi, "zero_section_pullback");
  Form out(phi.bundle());
  for (const auto& [word, coef] : phi.terms()) {
    if (bidegree_of(word).contact == 0) {
      out.add_canonical(word, restrict_to_zero_section(coef));
    }
  }
  return out;
}

Form euler_contraction(const Form& phi) {
  require_contact_basis(phi, "euler_contraction");
  const Bundle& bundle = phi.bundle();
  Form out(bundle);
  for (const auto& [word, coef] : phi.terms()) {
    // θ generators lead the canonical word, so position j carries sign (-1)^j.
    for (std::size_t j = 0; j < word.size() && word[j].is_theta(); ++j) {
      Word rest = word;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      ScalarExpr c = coef * ScalarExpr::jet(bundle, word[j].index(), word[j].multi());
      out.add_canonical(rest, j % 2 == 0 ? c : -c);
    }
  }
  return out;
}

Form contract_theta(const Form& phi, int i, const MultiIndex& multi) {
  require_contact_basis(phi, "contract_theta");
  const Generator target = Generator::theta(i, multi);
  target.check(phi.bundle());
  Form out(phi.bundle());
  for (const auto& [word, coef] : phi.terms()) {
    auto it = std::find(word.begin(), word.end(), target);
    if (it == word.end()) {
      continue;
    }
    auto pos = it - word.begin();
    Word rest = word;
    rest.erase(rest.begin() + pos);
    out.add_canonical(rest, pos % 2 == 0 ? coef : -coef);
  }
  return out;
}

int jet_order(const Form& phi) {
  int r = 0;
  for (const auto& [word, coef] : phi.terms()) {
    r = std::max(r, jet_order(coef));
    for (const auto& g : word) {
      if (!g.is_dx()) {
        r = std::max(r, static_cast<int>(g.multi().order()));
      }
    }
  }
  return r;
}

int degree(const Form& phi) {
  int d = 0;
  for (const auto& term : phi.terms()) {
    d = std::max(d, degree(term.second));
  }
  return d;
}

} // namespace jetvar
