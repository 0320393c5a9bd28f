#pragma once

#include <string_view>

#include "jetvar/calculus.hpp"
#include "jetvar/euler.hpp"
#include "jetvar/homotopy.hpp"
#include "jetvar/syntax.hpp"

namespace test {

using namespace jetvar;

inline Form F(const Bundle& b, std::string_view src) { return parse_form(src, b); }
inline ScalarExpr S(const Bundle& b, std::string_view src) { return parse_scalar(src, b); }
inline std::string str(const Form& phi) { return print_form(phi); }
inline std::string str(const ScalarExpr& f) { return print_scalar(f); }

} // namespace test
