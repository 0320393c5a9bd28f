#include <doctest.h>

#include <json.hpp>

#include "jetvar/random.hpp"
#include "support.hpp"

using namespace jetvar;
using test::F;
using test::S;

namespace {

const Bundle b11(1, 1);
const Bundle b22(2, 2);

Form u1_dx() {
  return Form::term(ScalarExpr::jet(b11, 1, {1}), {Generator::dx(1)});
}

std::pair<std::size_t, std::size_t> error_position(std::string_view src, const Bundle& b) {
  try {
    parse_form(src, b);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

} // namespace

TEST_CASE("parsing builds the expected forms") {
  CHECK(F(b11, "u1_1 * dx1") == u1_dx());
  Form theta = Form::generator(b11, Generator::theta(1));
  CHECK(F(b11, "du1") == theta + u1_dx());
  CHECK(F(b11, "th1 ^ th1").is_zero());
  CHECK(F(b11, "2*(u1 + x1)") == F(b11, "2*u1 + 2*x1"));
  CHECK(F(b11, "-x1**2") == F(b11, "-(x1*x1)"));
  CHECK(F(b11, "3/6*u1") == F(b11, "1/2*u1"));
  CHECK(F(b11, "(u1 + 1)**0") == F(b11, "1"));
  CHECK_THROWS_AS(F(b22, "u1_21"), ParseError);
  CHECK(F(b22, "dx2 ^ dx1") == -F(b22, "dx1^dx2"));
}

TEST_CASE("scalar parsing") {
  CHECK(S(b11, "x1*u1_1") == ScalarExpr::base(b11, 1) * ScalarExpr::jet(b11, 1, {1}));
  CHECK_THROWS_AS(S(b11, "th1"), ParseError);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(F(b11, "u1_2"), ParseError);
  CHECK_THROWS_AS(F(b11, "u2"), ParseError);
  CHECK_THROWS_AS(F(b11, "th1**2"), ParseError);
  CHECK_THROWS_AS(F(b11, "dx1*dx1"), ParseError);
  CHECK_THROWS_AS(F(b11, "1/0"), ParseError);
  CHECK_THROWS_AS(F(b11, "x1**-1"), ParseError);
  CHECK_THROWS_AS(F(b11, "y1"), ParseError);
  CHECK_THROWS_AS(F(b11, ""), ParseError);
  CHECK(error_position("(u1 +", b11) == std::pair<std::size_t, std::size_t>{1, 6});
  CHECK(error_position("u1 +\n  * x1", b11) == std::pair<std::size_t, std::size_t>{2, 3});
}

TEST_CASE("text printing") {
  CHECK(test::str(u1_dx()) == "u1_1*dx1");
  CHECK(test::str(Form(b11)) == "0");
  CHECK(test::str(F(b11, "-th1_1^dx1")) == "-th1_1^dx1");
  CHECK(test::str(F(b11, "th1 + u1_1*dx1")) == "th1 + u1_1*dx1");
  CHECK(test::str(F(b11, "(x1 - 1/2*u1)*dx1")) == "x1*dx1 - 1/2*u1*dx1");
  CHECK(test::str(F(b22, "u2_12*th1^th2_2^dx1")) == "u2_12*th1^th2_2^dx1");
  CHECK(print_scalar(S(b11, "3")) == "3");
  CHECK(multi_index_suffix(MultiIndex{1, 2}) == "12");
  CHECK(multi_index_suffix(MultiIndex{9, 10}) == "[9,10]");
}

TEST_CASE("json printing") {
  auto doc = nlohmann::json::parse(print_form(F(b11, "th1^dx1"), OutputFormat::json));
  CHECK(doc["schema"] == "jetvar-1");
  CHECK(doc["n"] == 1);
  CHECK(doc["m"] == 1);
  REQUIRE(doc["terms"].size() == 1);
  const auto& term = doc["terms"][0];
  REQUIRE(term["coef"].size() == 1);
  CHECK(term["coef"][0]["num"] == 1);
  CHECK(term["coef"][0]["den"] == 1);
  CHECK(term["coef"][0]["powers"].empty());
  CHECK(term["thetas"] == nlohmann::json::parse("[[1,[]]]"));
  CHECK(term["dxs"] == nlohmann::json::parse("[1]"));

  auto two = nlohmann::json::parse(print_form(F(b11, "-2/3*x1*u1**2*dx1"), OutputFormat::json));
  const auto& coef = two["terms"][0]["coef"][0];
  CHECK(coef["num"] == -2);
  CHECK(coef["den"] == 3);
  CHECK(coef["powers"] == nlohmann::json::parse(R"([["x1",1],["u1",2]])"));
}

TEST_CASE("equal forms print identically") {
  Form a = F(b22, "x1*th1^dx2 + u2*dx1 - th2_1");
  Form b = F(b22, "-th2_1 + u2*dx1 - x1*dx2^th1");
  CHECK(a == b);
  CHECK(print_form(a) == print_form(b));
  CHECK(print_form(a, OutputFormat::json) == print_form(b, OutputFormat::json));
}

TEST_CASE("bracketed multi-indices for large base dimension") {
  const Bundle big(12, 1);
  Form phi = F(big, "u1_[10,12]*dx11");
  CHECK(test::str(phi) == "u1_[10,12]*dx11");
  CHECK(F(big, test::str(phi)) == phi);
  CHECK_THROWS_AS(F(big, "u1_[12,10]"), ParseError);
}

TEST_CASE("property: parse(print(φ)) = φ") {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 2; ++m) {
      RunConfig config;
      config.n = n;
      config.m = m;
      for (std::uint64_t k = 0; k < 50; ++k) {
        FormGenerator g(config, k);
        Form phi = g.form({g.uniform(0, 2), g.uniform(0, n)}) + g.form({g.uniform(0, 2), 0});
        CHECK(parse_form(print_form(phi), config.bundle()) == phi);
      }
    }
  }
}
