#pragma once

// Seeded generators for the property suites. Every draw is a deterministic
// function of (seed, case index), independent of threading.

#include <cstdint>
#include <random>

#include "jetvar/euler.hpp"
#include "jetvar/form.hpp"
#include "jetvar/syntax.hpp"

namespace jetvar {

struct RunConfig {
  int n = 1;
  int m = 1;
  std::uint64_t seed = 1;
  int cases = 100;
  int max_order = 3;
  int max_degree = 3;
  int max_terms = 3;
  OutputFormat format = OutputFormat::text;

  Bundle bundle() const { return Bundle(n, m); }
  void validate() const;
};

class FormGenerator {
public:
  FormGenerator(const RunConfig& config, std::uint64_t case_index);

  /// Up to max_terms terms of bidegree (k, s); zero when not enough distinct
  /// contact generators exist below max_order.
  Form form(Bidegree bidegree);
  /// Up to max_terms terms whose word has `dys` dy generators and `dxs` dx.
  Form dy_form(int dys, int dxs);
  ScalarExpr scalar();
  /// A coefficient polynomial of a single monomial.
  ScalarExpr monomial();
  Rational coefficient();
  int uniform(int lo, int hi);

  const Bundle& bundle() const noexcept { return bundle_; }

private:
  MultiIndex multi_index(int max_order);
  Word word(int thetas, int dys, int dxs, bool& ok);

  RunConfig config_;
  Bundle bundle_;
  std::mt19937_64 rng_;
};

Form gen_random_form(const RunConfig& config, Bidegree bidegree, std::uint64_t case_index);

} // namespace jetvar
