#include "jetvar/syntax.hpp"

#include <cctype>
#include <limits>
#include <optional>

#include <json.hpp>

namespace jetvar {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            message),
      line_(line), column_(column) {}

// ---------------------------------------------------------------------------
// Printing

std::string multi_index_suffix(const MultiIndex& multi) {
  bool digits = true;
  for (int d : multi.dirs()) {
    digits = digits && d >= 1 && d <= 9;
  }
  std::string out;
  if (digits) {
    for (int d : multi.dirs()) {
      out += static_cast<char>('0' + d);
    }
    return out;
  }
  out = "[";
  for (std::size_t j = 0; j < multi.dirs().size(); ++j) {
    out += (j ? "," : "") + std::to_string(multi.dirs()[j]);
  }
  return out + "]";
}

namespace {

std::string jet_name(const char* stem, int i, const MultiIndex& multi) {
  std::string out = stem + std::to_string(i);
  if (!multi.empty()) {
    out += "_" + multi_index_suffix(multi);
  }
  return out;
}

// One canonical summand: coef·mono·word with the sign handled by the caller.
std::string render_summand(const Rational& magnitude, const Monomial& mono, const Word& word) {
  std::string out;
  if (magnitude != 1 || (mono.is_one() && word.empty())) {
    out = to_string(magnitude);
  }
  if (!mono.is_one()) {
    out += (out.empty() ? "" : "*") + to_string(mono);
  }
  if (!word.empty()) {
    out += (out.empty() ? "" : "*") + to_string(word);
  }
  return out;
}

std::string render_text(const Form& phi) {
  std::string out;
  for (const auto& [word, coef] : phi.terms()) {
    for (const auto& [mono, c] : coef.terms()) {
      const bool negative = c < 0;
      Rational magnitude = abs(c);
      if (out.empty()) {
        out = negative ? "-" : "";
      } else {
        out += negative ? " - " : " + ";
      }
      out += render_summand(magnitude, mono, word);
    }
  }
  return out.empty() ? "0" : out;
}

nlohmann::ordered_json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) {
    return z.get_si();
  }
  return z.get_str();
}

nlohmann::ordered_json form_json(const Form& phi) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [word, coef] : phi.terms()) {
    nlohmann::ordered_json coef_json = nlohmann::ordered_json::array();
    for (const auto& [mono, c] : coef.terms()) {
      nlohmann::ordered_json powers = nlohmann::ordered_json::array();
      for (const auto& [v, e] : mono.powers()) {
        powers.push_back({to_string(v), e});
      }
      coef_json.push_back({{"num", integer_json(c.get_num())},
                           {"den", integer_json(c.get_den())},
                           {"powers", std::move(powers)}});
    }
    nlohmann::ordered_json thetas = nlohmann::ordered_json::array();
    nlohmann::ordered_json dys = nlohmann::ordered_json::array();
    nlohmann::ordered_json dxs = nlohmann::ordered_json::array();
    for (const auto& g : word) {
      if (g.is_dx()) {
        dxs.push_back(g.index());
      } else {
        (g.is_theta() ? thetas : dys).push_back({g.index(), g.multi().dirs()});
      }
    }
    nlohmann::ordered_json term = {{"coef", std::move(coef_json)}, {"thetas", std::move(thetas)}};
    if (!dys.empty()) {
      term["dys"] = std::move(dys);
    }
    term["dxs"] = std::move(dxs);
    terms.push_back(std::move(term));
  }
  return {{"schema", "jetvar-1"},
          {"n", phi.bundle().n()},
          {"m", phi.bundle().m()},
          {"terms", std::move(terms)}};
}

} // namespace

std::string to_string(const Variable& v) {
  if (v.is_base()) {
    return "x" + std::to_string(v.index());
  }
  return jet_name("u", v.index(), v.multi());
}

std::string to_string(const Monomial& mono) {
  if (mono.is_one()) {
    return "1";
  }
  std::string out;
  for (const auto& [v, e] : mono.powers()) {
    if (!out.empty()) {
      out += "*";
    }
    out += to_string(v);
    if (e != 1) {
      out += "**" + std::to_string(e);
    }
  }
  return out;
}

std::string to_string(const ScalarExpr& f) { return render_text(Form(f)); }

std::string to_string(const Generator& g) {
  switch (g.kind()) {
  case Generator::Kind::dx:
    return "dx" + std::to_string(g.index());
  case Generator::Kind::theta:
    return jet_name("th", g.index(), g.multi());
  case Generator::Kind::dy:
    return jet_name("du", g.index(), g.multi());
  }
  return "?";
}

std::string to_string(const Word& word) {
  std::string out;
  for (const auto& g : word) {
    out += (out.empty() ? "" : "^") + to_string(g);
  }
  return out;
}

std::string print_form(const Form& phi, OutputFormat format) {
  if (format == OutputFormat::json) {
    return form_json(phi).dump();
  }
  return render_text(phi);
}

std::string print_scalar(const ScalarExpr& f, OutputFormat format) {
  return print_form(Form(f), format);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { number, rational, ident, plus, minus, star, power, wedge, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const std::size_t line = line_;
      const std::size_t col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::end, "", line, col});
        return out;
      }
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text = take_digits();
        if (peek() == '/' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
          advance();
          text += "/" + take_digits();
          out.push_back({Tok::rational, text, line, col});
        } else {
          out.push_back({Tok::number, text, line, col});
        }
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string text;
        while (pos_ < src_.size()) {
          char d = src_[pos_];
          if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
            text += d;
            advance();
          } else if (d == '[' && !text.empty() && text.back() == '_') {
            while (pos_ < src_.size() && src_[pos_] != ']') {
              text += src_[pos_];
              advance();
            }
            if (pos_ >= src_.size()) {
              throw ParseError("unterminated bracketed multi-index", line, col);
            }
            text += ']';
            advance();
          } else {
            break;
          }
        }
        out.push_back({Tok::ident, text, line, col});
        continue;
      }
      advance();
      switch (c) {
      case '+':
        out.push_back({Tok::plus, "+", line, col});
        break;
      case '-':
        out.push_back({Tok::minus, "-", line, col});
        break;
      case '*':
        if (peek() == '*') {
          advance();
          out.push_back({Tok::power, "**", line, col});
        } else {
          out.push_back({Tok::star, "*", line, col});
        }
        break;
      case '^':
        out.push_back({Tok::wedge, "^", line, col});
        break;
      case '(':
        out.push_back({Tok::lparen, "(", line, col});
        break;
      case ')':
        out.push_back({Tok::rparen, ")", line, col});
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
  }

private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      advance();
    }
  }

  std::string take_digits() {
    std::string out;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      out += src_[pos_];
      advance();
    }
    return out;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_zero_form(const Form& phi) {
  for (const auto& term : phi.terms()) {
    if (!term.first.empty()) {
      return false;
    }
  }
  return true;
}

class Parser {
public:
  Parser(std::vector<Token> tokens, const Bundle& bundle)
      : tokens_(std::move(tokens)), bundle_(bundle) {}

  Form parse() {
    Form out = sum();
    if (cur().kind != Tok::end) {
      fail("unexpected '" + cur().text + "'");
    }
    return out;
  }

private:
  const Token& cur() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(cur(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }

  Form sum() {
    Form out = wedge_chain();
    while (cur().kind == Tok::plus || cur().kind == Tok::minus) {
      const bool minus = cur().kind == Tok::minus;
      ++pos_;
      Form rhs = wedge_chain();
      out = minus ? out - rhs : out + rhs;
    }
    return out;
  }

  Form wedge_chain() {
    Form out = product();
    while (cur().kind == Tok::wedge) {
      ++pos_;
      out = wedge(out, product());
    }
    return out;
  }

  Form product() {
    Form out = unary();
    while (cur().kind == Tok::star) {
      const Token op = cur();
      ++pos_;
      Form rhs = unary();
      if (!is_zero_form(out) && !is_zero_form(rhs)) {
        fail_at(op, "'*' needs a scalar operand; use '^' to wedge forms");
      }
      out = wedge(out, rhs);
    }
    return out;
  }

  Form unary() {
    if (cur().kind == Tok::minus) {
      ++pos_;
      return -unary();
    }
    return power();
  }

  Form power() {
    Form base = atom();
    if (cur().kind != Tok::power) {
      return base;
    }
    const Token op = cur();
    ++pos_;
    if (cur().kind != Tok::number) {
      fail("'**' expects a nonnegative integer exponent");
    }
    if (!is_zero_form(base)) {
      fail_at(op, "'**' applies to scalar subexpressions only");
    }
    const std::string digits = cur().text;
    if (digits.size() > 4) {
      fail("exponent too large");
    }
    ++pos_;
    return Form(pow(base.scalar_part(), static_cast<unsigned>(std::stoul(digits))));
  }

  Form atom() {
    const Token t = cur();
    switch (t.kind) {
    case Tok::number:
    case Tok::rational: {
      ++pos_;
      Rational q;
      if (q.set_str(t.text, 10) != 0 || q.get_den() == 0) {
        fail_at(t, "invalid rational literal '" + t.text + "'");
      }
      q.canonicalize();
      return Form(ScalarExpr(bundle_, q));
    }
    case Tok::ident:
      ++pos_;
      return identifier(t);
    case Tok::lparen: {
      ++pos_;
      Form inner = sum();
      if (cur().kind != Tok::rparen) {
        fail("expected ')'");
      }
      ++pos_;
      return inner;
    }
    case Tok::end:
      fail("unexpected end of input");
    default:
      fail("unexpected '" + t.text + "'");
    }
  }

  // Parses "<digits>" as a positive index.
  int index_of(const Token& t, std::string_view digits, const char* what) const {
    if (digits.empty() || digits.size() > 6) {
      fail_at(t, std::string("missing or oversized ") + what + " index in '" + t.text + "'");
    }
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        fail_at(t, "malformed identifier '" + t.text + "'");
      }
    }
    return std::stoi(std::string(digits));
  }

  MultiIndex suffix_of(const Token& t, std::string_view suffix) const {
    std::vector<int> dirs;
    if (!suffix.empty() && suffix.front() == '[') {
      std::string_view body = suffix.substr(1, suffix.size() - 2);
      std::size_t start = 0;
      while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        std::string_view item =
            body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
        dirs.push_back(index_of(t, item, "multi-index"));
        if (comma == std::string_view::npos) {
          break;
        }
        start = comma + 1;
      }
    } else {
      if (suffix.empty()) {
        fail_at(t, "empty multi-index after '_' in '" + t.text + "'");
      }
      for (char c : suffix) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          fail_at(t, "malformed multi-index in '" + t.text + "'");
        }
        dirs.push_back(c - '0');
      }
    }
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      if (dirs[j] < 1 || dirs[j] > bundle_.n()) {
        fail_at(t, "multi-index direction " + std::to_string(dirs[j]) + " outside [1, " +
                       std::to_string(bundle_.n()) + "] in '" + t.text + "'");
      }
      if (j > 0 && dirs[j] < dirs[j - 1]) {
        fail_at(t, "multi-index digits must be non-decreasing in '" + t.text + "'");
      }
    }
    return MultiIndex(std::move(dirs));
  }

  Form identifier(const Token& t) {
    std::string_view text = t.text;
    auto strip = [&](std::string_view prefix) {
      if (text.substr(0, prefix.size()) == prefix) {
        text.remove_prefix(prefix.size());
        return true;
      }
      return false;
    };
    auto split_jet = [&](std::string_view rest) -> std::pair<int, MultiIndex> {
      auto underscore = rest.find('_');
      int i = index_of(t, rest.substr(0, underscore), "fibre");
      if (i < 1 || i > bundle_.m()) {
        fail_at(t, "fibre index " + std::to_string(i) + " outside [1, " +
                       std::to_string(bundle_.m()) + "] in '" + t.text + "'");
      }
      MultiIndex multi;
      if (underscore != std::string_view::npos) {
        multi = suffix_of(t, rest.substr(underscore + 1));
      }
      return {i, std::move(multi)};
    };
    auto base_index = [&](std::string_view rest) {
      int lambda = index_of(t, rest, "base");
      if (lambda < 1 || lambda > bundle_.n()) {
        fail_at(t, "base index " + std::to_string(lambda) + " outside [1, " +
                       std::to_string(bundle_.n()) + "] in '" + t.text + "'");
      }
      return lambda;
    };

    if (strip("dx")) {
      return Form::generator(bundle_, Generator::dx(base_index(text)));
    }
    if (strip("du")) {
      auto [i, multi] = split_jet(text);
      return Form::generator(bundle_, Generator::dy(i, std::move(multi)));
    }
    if (strip("th")) {
      auto [i, multi] = split_jet(text);
      return Form::generator(bundle_, Generator::theta(i, std::move(multi)));
    }
    if (strip("x")) {
      return Form(ScalarExpr::base(bundle_, base_index(text)));
    }
    if (strip("u")) {
      auto [i, multi] = split_jet(text);
      return Form(ScalarExpr::jet(bundle_, i, std::move(multi)));
    }
    fail_at(t, "unknown identifier '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Bundle bundle_;
};

} // namespace

Form parse_form_raw(std::string_view source, const Bundle& bundle) {
  return Parser(Lexer(source).run(), bundle).parse();
}

Form parse_form(std::string_view source, const Bundle& bundle) {
  return convert_dy_to_contact(parse_form_raw(source, bundle));
}

ScalarExpr parse_scalar(std::string_view source, const Bundle& bundle) {
  Form phi = parse_form_raw(source, bundle);
  if (!is_zero_form(phi)) {
    throw ParseError("expected a scalar expression, got a form of positive degree", 1, 1);
  }
  return phi.scalar_part();
}

} // namespace jetvar
