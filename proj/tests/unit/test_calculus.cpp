#include <doctest.h>

#include "support.hpp"

using namespace jetvar;
using test::F;

namespace {
const Bundle b11(1, 1);
const Bundle b21(2, 1);
const Bundle b32(3, 2);
} // namespace

TEST_CASE("d_h") {
  CHECK(d_h(F(b11, "u1")) == F(b11, "u1_1*dx1"));
  CHECK(d_h(F(b11, "th1")) == F(b11, "-th1_1^dx1"));
  CHECK(d_h(F(b11, "u1*dx1")).is_zero());
  CHECK(d_h(F(b21, "u1")) == F(b21, "u1_1*dx1 + u1_2*dx2"));
  CHECK(d_h(F(b21, "x2*dx1")) == F(b21, "-dx1^dx2"));
}

TEST_CASE("d_v") {
  CHECK(d_v(F(b11, "u1**2")) == F(b11, "2*u1*th1"));
  CHECK(d_v(F(b11, "u1_1*dx1")) == F(b11, "th1_1^dx1"));
  CHECK(d_v(F(b11, "th1")).is_zero());
  CHECK(d_v(F(b11, "x1**2*dx1")).is_zero());
}

TEST_CASE("d_full") {
  CHECK(d_full(F(b11, "u1")) == F(b11, "th1 + u1_1*dx1"));
  CHECK(d_full(F(b11, "u1")) == F(b11, "du1"));
  CHECK(d_full(F(b11, "x1*dx1")).is_zero());
  CHECK(d_full(F(b11, "th1")) == F(b11, "-th1_1^dx1"));
  CHECK(d_full(F(b11, "x1")) == F(b11, "dx1"));
}

TEST_CASE("d_classic") {
  CHECK(d_classic(parse_form_raw("u1", b11)) == parse_form_raw("du1", b11));
  CHECK(d_classic(parse_form_raw("u1_1*dx1", b11)) == parse_form_raw("du1_1^dx1", b11));
  CHECK(d_classic(parse_form_raw("du1", b11)).is_zero());
  CHECK(d_classic(parse_form_raw("x1*u1", b11)) == parse_form_raw("u1*dx1 + x1*du1", b11));
  CHECK_THROWS_AS(d_classic(F(b11, "th1")), PreconditionViolation);
}

TEST_CASE("contact form identity follows from the single rule for d") {
  // dθ = dx ∧ θ_1 in the classical picture.
  Form theta = F(b11, "th1");
  Form classic = convert_dy_to_contact(d_classic(parse_form_raw("du1 - u1_1*dx1", b11)));
  CHECK(d_full(theta) == classic);
  CHECK(d_full(theta) == wedge(F(b11, "dx1"), F(b11, "th1_1")));
}

TEST_CASE("closedness predicates") {
  CHECK(is_closed(F(b11, "u1_1*dx1"), Differential::horizontal));
  CHECK_FALSE(is_closed(F(b11, "u1"), Differential::vertical));
  CHECK(is_closed(F(b21, "x1*dx1"), Differential::horizontal));
  CHECK_FALSE(is_closed(F(b21, "x2*dx1"), Differential::horizontal));
  CHECK(is_closed(F(b11, "dx1"), Differential::full));
  CHECK(apply(Differential::vertical, F(b11, "u1")) == F(b11, "th1"));
}

TEST_CASE("bidegree shifts on a mixed example") {
  Form phi = F(b32, "x3*u2_13*th1_2^dx1");
  CHECK(d_h(phi).bidegree() == Bidegree{1, 2});
  CHECK(d_v(phi).bidegree() == Bidegree{2, 1});
  CHECK(d_h(d_h(phi)).is_zero());
  CHECK((d_h(d_v(phi)) + d_v(d_h(phi))).is_zero());
}

TEST_CASE("total derivative of forms") {
  CHECK(total_derivative(F(b21, "u1*th1_1"), 2) == F(b21, "u1_2*th1_1 + u1*th1_12"));
  CHECK(total_derivative(F(b21, "th1"), MultiIndex{1, 2}) == F(b21, "th1_12"));
  CHECK(total_derivative(F(b21, "dx1"), 1).is_zero());
}
