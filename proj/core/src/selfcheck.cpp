#include "jetvar/selfcheck.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "jetvar/calculus.hpp"
#include "jetvar/homotopy.hpp"

namespace jetvar {

namespace {

enum class Verdict { pass, fail, skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass() { return {Verdict::pass, {}}; }
Outcome skip() { return {Verdict::skip, {}}; }
Outcome expect(bool ok, const std::string& what, const Form& input) {
  if (ok) {
    return pass();
  }
  return {Verdict::fail, what + " on " + print_form(input)};
}

using Check = std::function<Outcome(FormGenerator&)>;

struct Identity {
  const char* name;
  Check run;
};

Bidegree any_bidegree(FormGenerator& g, int max_contact = 2) {
  return {g.uniform(0, max_contact), g.uniform(0, g.bundle().n())};
}

Form mixed_form(FormGenerator& g) { return g.form(any_bidegree(g)) + g.form(any_bidegree(g)); }

int total_degree(Bidegree b) { return b.contact + b.horizontal; }

const std::vector<Identity>& identities() {
  static const std::vector<Identity> table = {
      {"forms.wedge_graded_commutative",
       [](FormGenerator& g) {
         Bidegree ba = any_bidegree(g);
         Bidegree bb = any_bidegree(g);
         Form a = g.form(ba);
         Form b = g.form(bb);
         Form ab = wedge(a, b);
         Form ba_ = wedge(b, a);
         bool odd = (total_degree(ba) * total_degree(bb)) % 2 == 1;
         return expect(ab == (odd ? -ba_ : ba_), "a^b != ±b^a", a);
       }},
      {"forms.wedge_associative",
       [](FormGenerator& g) {
         Form a = mixed_form(g);
         Form b = mixed_form(g);
         Form c = mixed_form(g);
         return expect(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)), "(a^b)^c != a^(b^c)", a);
       }},
      {"forms.convert_algebra_map",
       [](FormGenerator& g) {
         Form a = g.dy_form(g.uniform(0, 2), g.uniform(0, g.bundle().n()));
         Form b = g.dy_form(g.uniform(0, 1), g.uniform(0, g.bundle().n()));
         return expect(convert_dy_to_contact(wedge(a, b)) ==
                           wedge(convert_dy_to_contact(a), convert_dy_to_contact(b)),
                       "convert(a^b) != convert(a)^convert(b)", a);
       }},
      {"forms.split_projection",
       [](FormGenerator& g) {
         Form phi = mixed_form(g);
         Form sum(g.bundle());
         for (const auto& part : split_bidegree(phi)) {
           sum += part.form;
           const int k = part.bidegree.contact;
           if (!(contact_projection(part.form, k) == part.form) ||
               !contact_projection(part.form, k + 1).is_zero()) {
             return expect(false, "h_k not idempotent on a split component", phi);
           }
         }
         return expect(sum == phi, "split components do not sum to input", phi);
       }},
      {"forms.contraction_derivation",
       [](FormGenerator& g) {
         Bidegree ba = any_bidegree(g);
         Form a = g.form(ba);
         Form b = mixed_form(g);
         Form rhs = wedge(euler_contraction(a), b);
         Form second = wedge(a, euler_contraction(b));
         rhs += total_degree(ba) % 2 == 1 ? -second : second;
         return expect(euler_contraction(wedge(a, b)) == rhs, "contraction is not a derivation", a);
       }},
      {"forms.contraction_nilpotent",
       [](FormGenerator& g) {
         Form phi = mixed_form(g);
         return expect(euler_contraction(euler_contraction(phi)).is_zero(), "ȳ⌋ȳ⌋φ != 0", phi);
       }},
      {"calculus.dh_dh",
       [](FormGenerator& g) {
         Form phi = g.form(any_bidegree(g));
         return expect(d_h(d_h(phi)).is_zero(), "d_H d_H != 0", phi);
       }},
      {"calculus.dv_dv",
       [](FormGenerator& g) {
         Form phi = g.form(any_bidegree(g));
         return expect(d_v(d_v(phi)).is_zero(), "d_V d_V != 0", phi);
       }},
      {"calculus.dh_dv_anticommute",
       [](FormGenerator& g) {
         Form phi = g.form(any_bidegree(g));
         return expect((d_h(d_v(phi)) + d_v(d_h(phi))).is_zero(), "d_H d_V + d_V d_H != 0", phi);
       }},
      {"calculus.bidegree_shift",
       [](FormGenerator& g) {
         Bidegree b = any_bidegree(g);
         Form phi = g.form(b);
         auto bh = d_h(phi).bidegree();
         auto bv = d_v(phi).bidegree();
         bool ok = (!bh || *bh == Bidegree{b.contact, b.horizontal + 1}) &&
                   (!bv || *bv == Bidegree{b.contact + 1, b.horizontal});
         return expect(ok, "differential moved the bidegree wrongly", phi);
       }},
      {"calculus.h0_d",
       [](FormGenerator& g) {
         Form phi = mixed_form(g);
         return expect(horizontal_projection(d_full(phi)) == d_h(horizontal_projection(phi)),
                       "h0 d != d_H h0", phi);
       }},
      {"calculus.hk_d_hk",
       [](FormGenerator& g) {
         Form phi = mixed_form(g);
         const int k = g.uniform(0, 2);
         Form hk = contact_projection(phi, k);
         return expect(contact_projection(d_full(hk), k) == d_h(hk), "h_k d h_k != d_H h_k", phi);
       }},
      {"calculus.de_rham_compat",
       [](FormGenerator& g) {
         Form phi = g.dy_form(g.uniform(0, 2), g.uniform(0, g.bundle().n()));
         return expect(convert_dy_to_contact(d_classic(phi)) == d_full(convert_dy_to_contact(phi)),
                       "convert(d phi) != d_full(convert phi)", phi);
       }},
      {"calculus.dh_kernel_constants",
       [](FormGenerator& g) {
         ScalarExpr f = g.scalar();
         return expect(is_closed(Form(f), Differential::horizontal) == f.is_constant(),
                       "d_H f = 0 disagrees with f constant", Form(f));
       }},
      {"euler.tau_idempotent",
       [](FormGenerator& g) {
         const int k = g.uniform(1, 2);
         Form phi = g.form({k, g.bundle().n()});
         Form tau = interior_euler(phi, k);
         return expect(interior_euler(tau, k) == tau, "τ_k τ_k != τ_k", phi);
       }},
      {"euler.tau_kills_dh",
       [](FormGenerator& g) {
         const int k = g.uniform(1, 2);
         Form psi = g.form({k, g.bundle().n() - 1});
         return expect(interior_euler(d_h(psi), k).is_zero(), "τ_k d_H != 0", psi);
       }},
      {"euler.tau_complement_exact",
       [](FormGenerator& g) {
         const int k = g.uniform(1, 2);
         Form phi = g.form({k, g.bundle().n()});
         Form rest = phi - interior_euler(phi, k);
         Form sigma = dh_potential(rest, default_bounds(rest));
         return expect(d_h(sigma) == rest, "φ - τ_k φ has no d_H-potential", phi);
       }},
      {"euler.el_factorization",
       [](FormGenerator& g) {
         ScalarExpr lagrangian = g.scalar();
         const Bundle& b = g.bundle();
         Form lw = Form::term(lagrangian, volume_word(b));
         Form via_tau = interior_euler(contact_projection(d_full(lw), 1), 1);
         return expect(euler_lagrange(lagrangian).to_form() == via_tau, "ε1 != τ1 h1 d", lw);
       }},
      {"euler.complex_property",
       [](FormGenerator& g) {
         ScalarExpr lagrangian = g.scalar();
         return expect(helmholtz(euler_lagrange(lagrangian)).is_zero(), "ε2 ε1 != 0",
                       Form(lagrangian));
       }},
      {"euler.divergence_trivial",
       [](FormGenerator& g) {
         const Bundle& b = g.bundle();
         Form sigma = g.form({0, b.n() - 1});
         ScalarExpr lagrangian = d_h(sigma).coefficient(volume_word(b));
         return expect(euler_lagrange(lagrangian).is_zero(), "ε1(d_H σ) != 0", sigma);
       }},
      {"homotopy.koszul_dv",
       [](FormGenerator& g) {
         Form phi = mixed_form(g);
         Form lhs = d_v(koszul_homotopy(phi)) + koszul_homotopy(d_v(phi));
         return expect(lhs == phi - zero_section_pullback(phi), "d_V H + H d_V != 1 - pullback",
                       phi);
       }},
      {"homotopy.koszul_d",
       [](FormGenerator& g) {
         Form phi = mixed_form(g);
         Form lhs = d_full(koszul_homotopy(phi)) + koszul_homotopy(d_full(phi));
         return expect(lhs == phi - zero_section_pullback(phi), "d H + H d != 1 - pullback", phi);
       }},
      {"homotopy.integral_agrees",
       [](FormGenerator& g) {
         Form phi = mixed_form(g);
         return expect(koszul_homotopy(phi) == koszul_homotopy_by_integration(phi),
                       "closed form and t-integral disagree", phi);
       }},
      {"homotopy.dh_roundtrip",
       [](FormGenerator& g) {
         const Bundle& b = g.bundle();
         Form psi = g.form({g.uniform(0, 1), g.uniform(0, b.n() - 1)});
         Form phi = d_h(psi);
         if (phi.is_zero()) {
           return skip();
         }
         SolveBounds bounds{jet_order(psi), std::max(degree(psi), degree(phi)), true};
         return expect(d_h(dh_potential(phi, bounds)) == phi, "dh_potential round trip", psi);
       }},
      {"homotopy.order_bound",
       [](FormGenerator& g) {
         const Bundle& b = g.bundle();
         Form sigma0 = g.form({0, b.n() - 1});
         Form lw = d_h(sigma0);
         if (lw.is_zero() || jet_order(lw) != jet_order(sigma0) + 1) {
           return skip();
         }
         SolveBounds bounds{jet_order(lw) - 1, std::max(degree(sigma0), degree(lw)), true};
         return expect(d_h(dh_potential(lw, bounds)) == lw, "order r-1 potential not found",
                       sigma0);
       }},
      {"homotopy.tonti_selfcheck",
       [](FormGenerator& g) {
         SourceForm delta = euler_lagrange(g.scalar());
         return expect(euler_lagrange(tonti_lagrangian(delta)) == delta, "ε1(L_T) != Δ",
                       delta.to_form());
       }},
      {"homotopy.ker_dhdv",
       [](FormGenerator& g) {
         const Bundle& b = g.bundle();
         const int k = g.uniform(0, 1);
         const int s = g.uniform(1, b.n());
         Form phi = d_h(g.form({k, s - 1}));
         if (k >= 1) {
           phi += d_v(g.form({k - 1, s}));
         } else {
           phi += zero_section_pullback(g.form({0, s}));
         }
         SolveBounds bounds{jet_order(phi) + 1, degree(phi) + 1, true};
         auto dec = ker_dhdv_decompose(phi, bounds);
         bool ok = dec.dh_closed + dec.dv_closed + dec.base_part == phi &&
                   d_h(dec.dh_closed).is_zero() && d_v(dec.dv_closed).is_zero() &&
                   !dec.base_part.has_theta() && jet_order(dec.base_part) == 0 &&
                   zero_section_pullback(dec.base_part) == dec.base_part &&
                   d_v(dec.dv_primitive) == dec.dv_closed &&
                   (!dec.dh_primitive || d_h(*dec.dh_primitive) == dec.dh_closed);
         return expect(ok, "Ker d_H d_V decomposition conditions", phi);
       }},
      {"syntax.roundtrip",
       [](FormGenerator& g) {
         Form phi = mixed_form(g);
         return expect(parse_form(print_form(phi), g.bundle()) == phi, "parse(print φ) != φ", phi);
       }},
  };
  return table;
}

} // namespace

std::vector<std::string> selfcheck_identities() {
  std::vector<std::string> out;
  for (const auto& id : identities()) {
    out.emplace_back(id.name);
  }
  return out;
}

bool SelfcheckReport::ok() const {
  return std::all_of(tallies.begin(), tallies.end(),
                     [](const IdentityTally& t) { return t.failed == 0; });
}

std::string SelfcheckReport::render(OutputFormat format) const {
  if (format == OutputFormat::json) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& t : tallies) {
      nlohmann::ordered_json row = {
          {"identity", t.name}, {"passed", t.passed}, {"failed", t.failed}, {"skipped", t.skipped}};
      if (!t.first_failure.empty()) {
        row["first_failure"] = t.first_failure;
      }
      rows.push_back(std::move(row));
    }
    nlohmann::ordered_json doc = {{"schema", "jetvar-1"},
                                  {"n", config.n},
                                  {"m", config.m},
                                  {"seed", config.seed},
                                  {"cases", config.cases},
                                  {"max_order", config.max_order},
                                  {"max_degree", config.max_degree},
                                  {"max_terms", config.max_terms},
                                  {"identities", std::move(rows)},
                                  {"ok", ok()}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "selfcheck n=" << config.n << " m=" << config.m << " seed=" << config.seed
     << " cases=" << config.cases << " max_order=" << config.max_order
     << " max_degree=" << config.max_degree << " max_terms=" << config.max_terms << "\n";
  os << std::left << std::setw(36) << "identity" << std::right << std::setw(8) << "passed"
     << std::setw(8) << "failed" << std::setw(8) << "skipped" << "  status\n";
  for (const auto& t : tallies) {
    os << std::left << std::setw(36) << t.name << std::right << std::setw(8) << t.passed
       << std::setw(8) << t.failed << std::setw(8) << t.skipped << "  "
       << (t.failed == 0 ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& t : tallies) {
    if (!t.first_failure.empty()) {
      os << "first failure of " << t.name << ": " << t.first_failure << "\n";
    }
  }
  os << "overall: " << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

SelfcheckReport run_selfcheck(const RunConfig& config, unsigned threads) {
  config.validate();
  const auto& table = identities();
  const std::size_t cases = static_cast<std::size_t>(config.cases);
  std::vector<std::vector<Outcome>> results(cases);

  auto run_case = [&](std::size_t c) {
    std::vector<Outcome> row;
    row.reserve(table.size());
    for (std::size_t j = 0; j < table.size(); ++j) {
      // Independent stream per (case, identity).
      FormGenerator gen(config, static_cast<std::uint64_t>(c) * 1024 + j);
      try {
        row.push_back(table[j].run(gen));
      } catch (const std::exception& e) {
        row.push_back({Verdict::fail, std::string("exception: ") + e.what()});
      }
    }
    results[c] = std::move(row);
  };

  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cases));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t c = next++; c < cases; c = next++) {
          run_case(c);
        }
      });
    }
  }

  SelfcheckReport report{config, {}};
  for (std::size_t j = 0; j < table.size(); ++j) {
    IdentityTally tally;
    tally.name = table[j].name;
    for (std::size_t c = 0; c < cases; ++c) {
      const Outcome& o = results[c][j];
      switch (o.verdict) {
      case Verdict::pass:
        ++tally.passed;
        break;
      case Verdict::skip:
        ++tally.skipped;
        break;
      case Verdict::fail:
        if (tally.failed++ == 0) {
          tally.first_failure = "case " + std::to_string(c) + ": " + o.detail;
        }
        break;
      }
    }
    report.tallies.push_back(std::move(tally));
  }
  return report;
}

} // namespace jetvar
