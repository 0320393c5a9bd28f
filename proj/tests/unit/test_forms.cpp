#include <doctest.h>

#include "support.hpp"

using namespace jetvar;
using test::F;
using test::S;
using test::str;

namespace {
const Bundle b11(1, 1);
const Bundle b22(2, 2);
} // namespace

TEST_CASE("wedge") {
  CHECK(wedge(F(b11, "dx1"), F(b11, "dx1")).is_zero());
  CHECK(wedge(F(b11, "dx1"), F(b11, "th1")) == -F(b11, "th1^dx1"));
  CHECK(str(wedge(F(b11, "dx1"), F(b11, "th1"))) == "-th1^dx1");
  CHECK(wedge(F(b11, "u1*th1"), F(b11, "dx1")) == F(b11, "u1*th1^dx1"));
  CHECK(wedge(F(b22, "th2"), F(b22, "th1_1")) == -F(b22, "th1_1^th2"));
  CHECK(wedge(F(b22, "dx2"), F(b22, "x1*dx1")) == -F(b22, "x1*dx1^dx2"));
}

TEST_CASE("generator order puts thetas before dx") {
  CHECK(Generator::theta(2, {}) < Generator::dx(1));
  CHECK(Generator::theta(1, {2}) < Generator::theta(2, {}));
  CHECK(Generator::theta(1, {}) < Generator::theta(1, {1}));
  CHECK(Generator::theta(1, {2}) < Generator::theta(1, {1, 1}));
  Word w{Generator::dx(1), Generator::theta(1, {})};
  CHECK(canonicalize_word(w) == -1);
  CHECK(w == Word{Generator::theta(1, {}), Generator::dx(1)});
  Word rep{Generator::dx(1), Generator::dx(1)};
  CHECK(canonicalize_word(rep) == 0);
}

TEST_CASE("dy to contact basis") {
  Form du = parse_form_raw("du1", b11);
  CHECK(du.has_dy());
  CHECK(convert_dy_to_contact(du) == F(b11, "th1 + u1_1*dx1"));
  CHECK(convert_dy_to_contact(parse_form_raw("du1_1^dx1", b11)) == F(b11, "th1_1^dx1"));
  CHECK(convert_dy_to_contact(parse_form_raw("dx1", b11)) == F(b11, "dx1"));
  Form du2 = convert_dy_to_contact(parse_form_raw("du2_1", b22));
  CHECK(du2 == F(b22, "th2_1 + u2_11*dx1 + u2_12*dx2"));
}

TEST_CASE("bidegree split") {
  auto parts = split_bidegree(F(b11, "th1^dx1 + u1*dx1"));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].bidegree == Bidegree{0, 1});
  CHECK(parts[0].form == F(b11, "u1*dx1"));
  CHECK(parts[1].bidegree == Bidegree{1, 1});
  CHECK(parts[1].form == F(b11, "th1^dx1"));
  CHECK(split_bidegree(Form(b11)).empty());
  parts = split_bidegree(F(b11, "th1^th1_1"));
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].bidegree == Bidegree{2, 0});
  CHECK(F(b11, "th1^dx1 + u1*dx1").bidegree() == std::nullopt);
  CHECK(F(b11, "th1^dx1").bidegree() == Bidegree{1, 1});
}

TEST_CASE("contact projections") {
  CHECK(contact_projection(parse_form_raw("du1", b11), 0) == F(b11, "u1_1*dx1"));
  CHECK(horizontal_projection(F(b11, "du1")) == F(b11, "u1_1*dx1"));
  CHECK(contact_projection(F(b11, "th1^dx1 + u1*dx1"), 1) == F(b11, "th1^dx1"));
  CHECK(contact_projection(F(b11, "u1*dx1"), 2).is_zero());
}

TEST_CASE("zero section pullback") {
  CHECK(zero_section_pullback(F(b11, "x1**2*dx1 + u1*dx1")) == F(b11, "x1**2*dx1"));
  CHECK(zero_section_pullback(F(b11, "th1^dx1")).is_zero());
  CHECK(zero_section_pullback(F(b11, "u1 + x1")) == F(b11, "x1"));
  CHECK(zero_section_pullback(F(b11, "(1 + u1_1)*x1*dx1")) == F(b11, "x1*dx1"));
}

TEST_CASE("euler contraction") {
  CHECK(euler_contraction(F(b11, "u1*th1")) == F(b11, "u1**2"));
  CHECK(euler_contraction(F(b11, "th1^th1_1")) == F(b11, "u1*th1_1 - u1_1*th1"));
  CHECK(euler_contraction(F(b11, "u1**2*dx1")).is_zero());
  CHECK(euler_contraction(F(b11, "th1^dx1")) == F(b11, "u1*dx1"));
}

TEST_CASE("theta contraction and its Euler identity") {
  Form phi = F(b22, "u1*th1^th2_1^dx1 + th1_2^th2^dx2");
  CHECK(contract_theta(phi, 2, {1}) == -F(b22, "u1*th1^dx1"));
  CHECK(contract_theta(phi, 1, {}) == F(b22, "u1*th2_1^dx1"));
  Form sum(b22);
  for (auto [i, multi] : {std::pair<int, MultiIndex>{1, {}}, {2, {1}}, {1, {2}}, {2, {}}}) {
    sum += wedge(Form::generator(b22, Generator::theta(i, multi)), contract_theta(phi, i, multi));
  }
  CHECK(sum == make_rational(2) * phi);
}

TEST_CASE("form bookkeeping") {
  Form phi = F(b22, "x1*u2_12*th1_122^dx1 + dx2");
  CHECK(jet_order(phi) == 3);
  CHECK(degree(phi) == 2);
  CHECK(phi.coefficient({Generator::dx(2)}) == S(b22, "1"));
  CHECK(volume_form(b22) == F(b22, "dx1^dx2"));
  CHECK(F(b22, "3 + th1").scalar_part() == S(b22, "3"));
  CHECK_THROWS_AS(require_contact_basis(parse_form_raw("du1", b22), "test"), PreconditionViolation);
  CHECK_THROWS_AS(wedge(F(b11, "dx1"), F(b22, "dx1")), BundleMismatch);
}
