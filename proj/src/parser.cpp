#include "cprt/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "cprt/errors.hpp"

namespace cprt {

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t s = 0; s < n; ++s, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
    } else {
      std::string_view two = src.substr(i, 2);
      if (two == ">=" || two == "+=") {
        out.push_back({Tok::Punct, std::string(two), line, col});
        advance(2);
      } else if (std::string_view("(),[]{};*+-/>=").find(c) != std::string_view::npos) {
        out.push_back({Tok::Punct, std::string(1, c), line, col});
        advance(1);
      } else {
        throw SyntaxError(line, col, "a token", "'" + std::string(1, c) + "'");
      }
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) { return s == "vars" || s == "while" || s == "inc" || s == "reset"; }

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  CpProgram parse() {
    CpProgram prog;
    bool declared = false;
    if (peek_ident("vars")) {
      next();
      declared = true;
      do {
        prog.var_names.push_back(expect_ident("variable name"));
      } while (accept(","));
    }
    expect_keyword("while");
    bool paren = accept("(");
    Guard guard = parse_linexpr();
    bool inclusive = false;
    if (accept(">=")) {
      inclusive = true;
    } else {
      expect(">");
    }
    std::int64_t bound = parse_signed_int();
    if (paren) expect(")");

    if (!declared) prog.var_names = guard.order;
    for (const auto& name : guard.order) {
      if (std::find(prog.var_names.begin(), prog.var_names.end(), name) == prog.var_names.end())
        throw ValidationError("guard uses undeclared variable '" + name + "'");
    }
    if (prog.var_names.empty()) fail("a variable in the loop guard");
    prog.guard_a.assign(prog.var_names.size(), 0);
    for (std::size_t v = 0; v < prog.var_names.size(); ++v) {
      auto it = guard.coeffs.find(prog.var_names[v]);
      if (it != guard.coeffs.end()) prog.guard_a[v] = it->second;
    }
    // a.x + c > b  <=>  a.x > b - c ; ">= b" is "> b - 1" over the integers
    prog.guard_b = bound - guard.constant - (inclusive ? 1 : 0);

    expect("{");
    do {
      parse_statement(prog);
    } while (!peek_punct("}"));
    expect("}");
    if (peek().kind != Tok::End) fail("end of input");

    validate(prog);
    return prog;
  }

 private:
  struct Guard {
    std::vector<std::string> order;
    std::map<std::string, std::int64_t> coeffs;
    std::int64_t constant = 0;
  };

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, expected, found);
  }

  bool peek_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool peek_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

  bool accept(std::string_view p) {
    if (!peek_punct(p)) return false;
    ++pos_;
    return true;
  }

  void expect(std::string_view p) {
    if (!accept(p)) fail("'" + std::string(p) + "'");
  }

  void expect_keyword(std::string_view kw) {
    if (!peek_ident(kw)) fail("'" + std::string(kw) + "'");
    ++pos_;
  }

  std::string expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail(what);
    return next().text;
  }

  std::int64_t to_int(const Token& t, bool negative) const {
    std::int64_t value = 0;
    std::string digits = (negative ? "-" : "") + t.text;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw SyntaxError(t.line, t.column, "a 64-bit integer", "'" + digits + "'");
    return value;
  }

  std::int64_t parse_signed_int() {
    bool negative = false;
    if (accept("-")) {
      negative = true;
    } else {
      accept("+");
    }
    if (peek().kind != Tok::Int) fail("an integer");
    return to_int(next(), negative);
  }

  Guard parse_linexpr() {
    Guard g;
    bool negative = false;
    if (accept("-")) {
      negative = true;
    } else {
      accept("+");
    }
    while (true) {
      std::int64_t coeff = 1;
      std::string var;
      if (peek().kind == Tok::Int) {
        coeff = to_int(next(), false);
        if (accept("*")) var = expect_ident("a variable name");
      } else if (peek().kind == Tok::Ident && !is_keyword(peek().text)) {
        var = next().text;
      } else {
        fail("a term (INT, INT*ident or ident)");
      }
      if (negative) coeff = -coeff;
      if (var.empty()) {
        g.constant += coeff;
      } else {
        if (!g.coeffs.count(var)) g.order.push_back(var);
        g.coeffs[var] += coeff;
      }
      if (accept("+")) {
        negative = false;
      } else if (accept("-")) {
        negative = true;
      } else {
        break;
      }
    }
    return g;
  }

  IntVector parse_vector() {
    expect("(");
    IntVector v;
    do {
      v.push_back(parse_signed_int());
    } while (accept(","));
    expect(")");
    return v;
  }

  Rational parse_probability() {
    expect("[");
    const Token& start = peek();
    std::int64_t num = parse_signed_int();
    std::int64_t den = 1;
    if (accept("/")) {
      if (peek().kind != Tok::Int) fail("a denominator");
      den = to_int(next(), false);
      if (den == 0) throw SyntaxError(start.line, start.column, "a nonzero denominator", "0");
    }
    expect("]");
    return Rational(num, den);
  }

  void check_lhs(const CpProgram& prog, const std::vector<std::string>& lhs, const Token& at) const {
    if (lhs != prog.var_names)
      throw SyntaxError(at.line, at.column, "assignment to all variables in declaration order",
                        "'" + at.text + "'");
  }

  void parse_statement(CpProgram& prog) {
    const Token& start = peek();
    bool is_reset = false;
    if (peek_ident("inc") || peek_ident("reset")) {
      is_reset = next().text == "reset";
    } else if (peek().kind == Tok::Ident || peek_punct("(")) {
      std::vector<std::string> lhs;
      if (accept("(")) {
        do {
          lhs.push_back(expect_ident("a variable name"));
        } while (accept(","));
        expect(")");
      } else {
        lhs.push_back(expect_ident("a variable name"));
      }
      check_lhs(prog, lhs, start);
      if (accept("+=")) {
        is_reset = false;
      } else if (accept("=")) {
        is_reset = true;
      } else {
        fail("'+=' or '='");
      }
    } else {
      fail("a statement ('inc', 'reset' or an assignment)");
    }
    IntVector vec = parse_vector();
    if (vec.size() != prog.var_names.size())
      throw ValidationError(std::to_string(start.line) + ":" + std::to_string(start.column) + ": vector has " +
                            std::to_string(vec.size()) + " entries, expected " +
                            std::to_string(prog.var_names.size()));
    Rational p = parse_probability();
    expect(";");
    if (is_reset) {
      if (prog.reset)
        throw ValidationError(std::to_string(start.line) + ":" + std::to_string(start.column) +
                              ": at most one reset statement is allowed");
      prog.reset = Reset{std::move(vec), std::move(p)};
    } else {
      prog.branches.push_back({std::move(vec), std::move(p)});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string join_vector(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

CpProgram parse_program(std::string_view source) { return Parser(source).parse(); }

std::string to_source(const CpProgram& prog) {
  std::string out = "vars ";
  for (std::size_t i = 0; i < prog.var_names.size(); ++i) out += (i ? ", " : "") + prog.var_names[i];
  out += "\nwhile ";
  for (std::size_t i = 0; i < prog.guard_a.size(); ++i) {
    std::int64_t c = prog.guard_a[i];
    if (i == 0) {
      out += std::to_string(c);
    } else {
      out += c < 0 ? " - " + std::to_string(-c) : " + " + std::to_string(c);
    }
    out += "*" + prog.var_names[i];
  }
  out += " > " + std::to_string(prog.guard_b) + " {\n";
  for (const auto& br : prog.branches) out += "  inc " + join_vector(br.delta) + " [" + to_string(br.prob) + "];\n";
  if (prog.reset) out += "  reset " + join_vector(prog.reset->target) + " [" + to_string(prog.reset->prob) + "];\n";
  out += "}\n";
  return out;
}

}  // namespace cprt
