#include "cli.hpp"

#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "jetvar/calculus.hpp"
#include "jetvar/euler.hpp"
#include "jetvar/homotopy.hpp"
#include "jetvar/selfcheck.hpp"
#include "jetvar/syntax.hpp"

namespace jetvar::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  int n = 1;
  int m = 1;
  std::string format = "text";

  OutputFormat output() const { return format == "json" ? OutputFormat::json : OutputFormat::text; }
};

class Printer {
public:
  Printer(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}

  void form(const Form& phi) { out_ << print_form(phi, format_) << "\n"; }

  void scalar(const ScalarExpr& f) { out_ << print_scalar(f, format_) << "\n"; }

  void boolean(bool value) {
    if (format_ == OutputFormat::json) {
      out_ << Json{{"schema", "jetvar-1"}, {"result", value}}.dump() << "\n";
    } else {
      out_ << (value ? "true" : "false") << "\n";
    }
  }

  /// Named forms, printed as "name: form" lines or one JSON object.
  void named(const std::vector<std::pair<std::string, std::optional<Form>>>& items) {
    if (format_ == OutputFormat::json) {
      Json doc = {{"schema", "jetvar-1"}};
      for (const auto& [name, phi] : items) {
        doc[name] = phi ? Json::parse(print_form(*phi, OutputFormat::json)) : Json(nullptr);
      }
      out_ << doc.dump() << "\n";
      return;
    }
    for (const auto& [name, phi] : items) {
      out_ << name << ": " << (phi ? print_form(*phi) : std::string("none")) << "\n";
    }
  }

  void split(const std::vector<BidegreeComponent>& parts) {
    if (format_ == OutputFormat::json) {
      Json comps = Json::array();
      for (const auto& p : parts) {
        comps.push_back({{"k", p.bidegree.contact},
                         {"s", p.bidegree.horizontal},
                         {"form", Json::parse(print_form(p.form, OutputFormat::json))}});
      }
      out_ << Json{{"schema", "jetvar-1"}, {"components", std::move(comps)}}.dump() << "\n";
      return;
    }
    if (parts.empty()) {
      out_ << "0\n";
    }
    for (const auto& p : parts) {
      out_ << "(" << p.bidegree.contact << "," << p.bidegree.horizontal
           << "): " << print_form(p.form) << "\n";
    }
  }

private:
  std::ostream& out_;
  OutputFormat format_;
};

ScalarExpr lagrangian_from(const Form& phi) {
  if (phi.is_zero()) {
    return ScalarExpr(phi.bundle());
  }
  auto b = phi.bidegree();
  if (b && b->contact == 0 && b->horizontal == 0) {
    return phi.scalar_part();
  }
  if (b && b->contact == 0 && b->horizontal == phi.bundle().n()) {
    return phi.coefficient(volume_word(phi.bundle()));
  }
  throw PreconditionViolation("expected a Lagrangian: a scalar L or a horizontal top form L*dx1^...^dxn");
}

std::vector<const char*> as_argv(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"jv"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  return argv;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"jv: exact variational bicomplex calculator on the trivial bundle R^{n+m} -> R^n"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("-n", g.n, "base dimension")->check(CLI::PositiveNumber);
  app.add_option("-m", g.m, "fibre dimension")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string expr;
  std::function<void()> action;

  auto with_expr = [&](CLI::App* sub) {
    sub->add_option("expr", expr, "input expression (read from stdin when omitted)");
    return sub;
  };

  auto read_input = [&]() -> std::string {
    if (!expr.empty()) {
      return expr;
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
  };

  auto form_cmd = [&](const char* name, const char* help, std::function<Form(const Form&)> fn) {
    auto* sub = with_expr(app.add_subcommand(name, help));
    sub->callback([&, fn] {
      action = [&, fn] {
        Bundle bundle(g.n, g.m);
        Printer(out, g.output()).form(fn(parse_form(read_input(), bundle)));
      };
    });
  };

  form_cmd("dh", "horizontal differential d_H", [](const Form& phi) { return d_h(phi); });
  form_cmd("dv", "vertical differential d_V", [](const Form& phi) { return d_v(phi); });
  form_cmd("d", "exterior differential d = d_H + d_V", [](const Form& phi) { return d_full(phi); });

  int k = 0;
  {
    auto* sub = with_expr(app.add_subcommand("hk", "k-contact projection h_k"));
    sub->add_option("-k", k, "contact degree")->required()->check(CLI::NonNegativeNumber);
    sub->callback([&] {
      action = [&] {
        Printer(out, g.output()).form(contact_projection(parse_form(read_input(), Bundle(g.n, g.m)), k));
      };
    });
  }
  {
    auto* sub = with_expr(app.add_subcommand("tau", "interior Euler projection τ_k on (k,n)-forms"));
    sub->add_option("-k", k, "contact degree")->required()->check(CLI::PositiveNumber);
    sub->callback([&] {
      action = [&] {
        Printer(out, g.output()).form(interior_euler(parse_form(read_input(), Bundle(g.n, g.m)), k));
      };
    });
  }
  with_expr(app.add_subcommand("split", "bidegree components"))->callback([&] {
    action = [&] {
      Printer(out, g.output()).split(split_bidegree(parse_form(read_input(), Bundle(g.n, g.m))));
    };
  });
  with_expr(app.add_subcommand("el", "Euler-Lagrange source form of a Lagrangian"))->callback([&] {
    action = [&] {
      ScalarExpr lagrangian = lagrangian_from(parse_form(read_input(), Bundle(g.n, g.m)));
      Printer(out, g.output()).form(euler_lagrange(lagrangian).to_form());
    };
  });
  with_expr(app.add_subcommand("helmholtz", "Helmholtz-Sonin map of a source form"))->callback([&] {
    action = [&] {
      SourceForm source = SourceForm::from_form(parse_form(read_input(), Bundle(g.n, g.m)));
      Printer(out, g.output()).form(helmholtz(source));
    };
  });
  with_expr(app.add_subcommand("trivial", "is the Lagrangian variationally trivial?"))->callback([&] {
    action = [&] {
      ScalarExpr lagrangian = lagrangian_from(parse_form(read_input(), Bundle(g.n, g.m)));
      Printer(out, g.output()).boolean(is_variationally_trivial(lagrangian));
    };
  });
  with_expr(app.add_subcommand("variational", "is the source form locally variational?"))
      ->callback([&] {
        action = [&] {
          SourceForm source = SourceForm::from_form(parse_form(read_input(), Bundle(g.n, g.m)));
          Printer(out, g.output()).boolean(is_locally_variational(source));
        };
      });
  with_expr(app.add_subcommand("tonti", "Tonti Lagrangian of a locally variational source form"))
      ->callback([&] {
        action = [&] {
          SourceForm source = SourceForm::from_form(parse_form(read_input(), Bundle(g.n, g.m)));
          Printer(out, g.output()).scalar(tonti_lagrangian(source));
        };
      });

  std::string target = "dh";
  std::optional<int> max_order;
  std::optional<int> max_degree;
  bool no_deepening = false;
  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--max-order", max_order, "jet-order cap of the ansatz")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--max-degree", max_degree, "polynomial-degree cap of the ansatz")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--no-deepening", no_deepening, "only try the final bounds");
  };
  auto bounds_for = [&](const Form& phi) {
    SolveBounds b = default_bounds(phi);
    if (max_order) {
      b.max_jet_order = *max_order;
    }
    if (max_degree) {
      b.max_poly_degree = *max_degree;
    }
    b.deepening = !no_deepening;
    return b;
  };
  {
    auto* sub = with_expr(app.add_subcommand("potential", "potential for d_H, d_V or d"));
    sub->add_option("--target", target, "differential to invert")
        ->check(CLI::IsMember({"dh", "dv", "d"}));
    add_bounds(sub);
    sub->callback([&] {
      action = [&] {
        Form phi = parse_form(read_input(), Bundle(g.n, g.m));
        Printer p(out, g.output());
        if (target == "dh") {
          p.named({{"sigma", dh_potential(phi, bounds_for(phi))}});
        } else if (target == "dv") {
          auto dec = dv_potential(phi);
          p.named({{"sigma", dec.potential}, {"phi_X", dec.base_part}});
        } else {
          auto dec = poincare_decompose(phi);
          p.named({{"phi_X", dec.base_part}, {"xi", dec.potential}});
        }
      };
    });
  }
  {
    auto* sub = with_expr(
        app.add_subcommand("decompose-kerdhdv", "σ + ξ + φ_X decomposition of φ with d_H d_V φ = 0"));
    add_bounds(sub);
    sub->callback([&] {
      action = [&] {
        Form phi = parse_form(read_input(), Bundle(g.n, g.m));
        SolveBounds b = bounds_for(phi);
        b.max_jet_order = max_order.value_or(jet_order(phi) + 1);
        auto dec = ker_dhdv_decompose(phi, b);
        Printer(out, g.output())
            .named({{"sigma", dec.dh_closed},
                    {"xi", dec.dv_closed},
                    {"phi_X", dec.base_part},
                    {"alpha", dec.dh_primitive},
                    {"beta", dec.dv_primitive}});
      };
    });
  }

  RunConfig config;
  unsigned threads = 0;
  {
    auto* sub = app.add_subcommand("selfcheck", "run the seeded invariant suite");
    sub->add_option("--seed", config.seed, "generator seed");
    sub->add_option("--cases", config.cases, "cases per identity")->check(CLI::PositiveNumber);
    sub->add_option("--max-order", config.max_order, "jet-order cap")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-degree", config.max_degree, "degree cap")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-terms", config.max_terms, "term-count cap")->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", threads, "worker threads (0: hardware)");
    sub->callback([&] {
      action = [&] {
        config.n = g.n;
        config.m = g.m;
        config.format = g.output();
        SelfcheckReport report = run_selfcheck(config, threads);
        out << report.render(config.format);
        if (!report.ok()) {
          throw InternalInconsistency("selfcheck reported failures");
        }
      };
    });
  }

  auto argv = as_argv(args);
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "jv: " << e.what() << "\n";
    return usage_error;
  }

  try {
    action();
    return ok;
  } catch (const ParseError& e) {
    err << "jv: parse error: " << e.what() << "\n";
    return usage_error;
  } catch (const IndexOutOfRange& e) {
    err << "jv: " << e.what() << "\n";
    return usage_error;
  } catch (const NotFoundWithinBounds& e) {
    err << "jv: " << e.what() << "\n";
    return not_found_within_bounds;
  } catch (const PreconditionViolation& e) {
    err << "jv: precondition violated: " << e.what() << "\n";
    return precondition_violation;
  } catch (const InternalInconsistency& e) {
    err << "jv: " << e.what() << "\n";
    return check_failed;
  } catch (const Error& e) {
    err << "jv: " << e.what() << "\n";
    return usage_error;
  }
}

} // namespace jetvar::cli
