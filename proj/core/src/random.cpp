#include "jetvar/random.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace jetvar {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

void RunConfig::validate() const {
  (void)bundle();
  if (max_order < 0 || max_degree < 0 || max_terms < 0) {
    throw PreconditionViolation("generator caps must be >= 0");
  }
  if (cases < 1) {
    throw PreconditionViolation("cases must be >= 1");
  }
}

FormGenerator::FormGenerator(const RunConfig& config, std::uint64_t case_index)
    : config_(config), bundle_(config.bundle()),
      rng_(splitmix64(config.seed ^ splitmix64(case_index))) {
  config.validate();
}

// Modulo reduction instead of std::uniform_int_distribution keeps streams
// identical across standard libraries.
int FormGenerator::uniform(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng_() % span);
}

Rational FormGenerator::coefficient() {
  static const std::array<std::pair<int, int>, 8> pool{
      {{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 3}, {3, 1}, {3, 2}}};
  const auto& [p, q] = pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))];
  return make_rational(p, q);
}

MultiIndex FormGenerator::multi_index(int max_order) {
  const int order = uniform(0, max_order);
  std::vector<int> dirs;
  for (int j = 0; j < order; ++j) {
    dirs.push_back(uniform(1, bundle_.n()));
  }
  return MultiIndex(std::move(dirs));
}

ScalarExpr FormGenerator::monomial() {
  const int deg = uniform(0, config_.max_degree);
  std::vector<Monomial::Power> powers;
  for (int j = 0; j < deg; ++j) {
    // Jets twice as likely as base coordinates.
    if (uniform(0, 2) == 0) {
      powers.emplace_back(Variable::base(uniform(1, bundle_.n())), 1);
    } else {
      powers.emplace_back(Variable::jet(uniform(1, bundle_.m()), multi_index(config_.max_order)),
                          1);
    }
  }
  return ScalarExpr::monomial(bundle_, Monomial(std::move(powers)), coefficient());
}

ScalarExpr FormGenerator::scalar() {
  ScalarExpr out(bundle_);
  const int terms = uniform(0, config_.max_terms);
  for (int t = 0; t < terms; ++t) {
    out += monomial();
  }
  return out;
}

Word FormGenerator::word(int thetas, int dys, int dxs, bool& ok) {
  ok = true;
  Word w;
  auto distinct_fibre_gen = [&](bool theta) {
    // Bounded retries: small caps may not have enough distinct generators.
    for (int attempt = 0; attempt < 32; ++attempt) {
      const int i = uniform(1, bundle_.m());
      Generator g = theta ? Generator::theta(i, multi_index(config_.max_order))
                          : Generator::dy(i, multi_index(config_.max_order));
      if (std::find(w.begin(), w.end(), g) == w.end()) {
        w.push_back(std::move(g));
        return true;
      }
    }
    return false;
  };
  for (int j = 0; j < thetas && ok; ++j) {
    ok = distinct_fibre_gen(true);
  }
  for (int j = 0; j < dys && ok; ++j) {
    ok = distinct_fibre_gen(false);
  }
  std::vector<int> dirs(static_cast<std::size_t>(bundle_.n()));
  for (int l = 0; l < bundle_.n(); ++l) {
    dirs[static_cast<std::size_t>(l)] = l + 1;
  }
  for (int j = 0; j < dxs; ++j) {
    const int pick = uniform(j, bundle_.n() - 1);
    std::swap(dirs[static_cast<std::size_t>(j)], dirs[static_cast<std::size_t>(pick)]);
    w.push_back(Generator::dx(dirs[static_cast<std::size_t>(j)]));
  }
  return w;
}

Form FormGenerator::form(Bidegree b) {
  if (b.contact < 0 || b.horizontal < 0 || b.horizontal > bundle_.n()) {
    throw PreconditionViolation("impossible bidegree (" + std::to_string(b.contact) + ", " +
                                std::to_string(b.horizontal) + ") for n = " +
                                std::to_string(bundle_.n()));
  }
  Form out(bundle_);
  const int terms = uniform(1, std::max(config_.max_terms, 1));
  for (int t = 0; t < terms && t < config_.max_terms; ++t) {
    bool ok = false;
    Word w = word(b.contact, 0, b.horizontal, ok);
    if (ok) {
      out += Form::term(monomial(), std::move(w));
    }
  }
  return out;
}

Form FormGenerator::dy_form(int dys, int dxs) {
  if (dys < 0 || dxs < 0 || dxs > bundle_.n()) {
    throw PreconditionViolation("impossible dy/dx degree");
  }
  Form out(bundle_);
  const int terms = uniform(1, std::max(config_.max_terms, 1));
  for (int t = 0; t < terms && t < config_.max_terms; ++t) {
    bool ok = false;
    Word w = word(0, dys, dxs, ok);
    if (ok) {
      out += Form::term(monomial(), std::move(w));
    }
  }
  return out;
}

Form gen_random_form(const RunConfig& config, Bidegree bidegree, std::uint64_t case_index) {
  FormGenerator gen(config, case_index);
  return gen.form(bidegree);
}

} // namespace jetvar
