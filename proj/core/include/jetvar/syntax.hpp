#pragma once

// Text grammar for scalars and forms, and the canonical text/JSON printers.
//
//   form    := wedge (('+' | '-') wedge)*
//   wedge   := product ('^' product)*
//   product := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := atom ('**' integer)?
//   atom    := rational | x<λ> | u<i>[_<Λ>] | dx<λ> | du<i>[_<Λ>] | th<i>[_<Λ>]
//            | '(' form ')'
//
// Λ is a non-decreasing digit string ("112") or a bracketed list ("[10,12]").
// '*' needs a 0-form on at least one side; '^' is the wedge product.

#include <cstddef>
#include <string>
#include <string_view>

#include "jetvar/form.hpp"

namespace jetvar {

class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

enum class OutputFormat { text, json };

/// Parses and converts dy generators to the contact basis.
Form parse_form(std::string_view source, const Bundle& bundle);
/// Parses without basis conversion; dy generators are kept.
Form parse_form_raw(std::string_view source, const Bundle& bundle);
/// Parses a 0-form.
ScalarExpr parse_scalar(std::string_view source, const Bundle& bundle);

/// "112" when every direction is a single digit, otherwise "[10,12]".
std::string multi_index_suffix(const MultiIndex& multi);
std::string to_string(const Variable& v);
std::string to_string(const Monomial& mono);
std::string to_string(const ScalarExpr& f);
std::string to_string(const Generator& g);
std::string to_string(const Word& word);

/// Canonical rendering; equal forms print byte-identically.
std::string print_form(const Form& phi, OutputFormat format = OutputFormat::text);
std::string print_scalar(const ScalarExpr& f, OutputFormat format = OutputFormat::text);

} // namespace jetvar
