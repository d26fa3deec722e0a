#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "falg/chart.hpp"

namespace falg {

namespace detail {

// Recursive descent over
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['-'] integer | '(' ['-'] integer ')'
//   primary := integer | identifier | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

  Scalar parse() {
    skip_space();
    if (at_end()) throw parse_error(pos_, "empty expression");
    Scalar value = expression();
    skip_space();
    if (!at_end()) throw parse_error(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return value;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) throw parse_error(pos_, std::string("expected '") + c + "' before end of input");
      throw parse_error(pos_, std::string("expected '") + c + "'");
    }
  }

  Scalar expression() {
    Scalar value = term();
    for (;;) {
      if (accept('+')) value += term();
      else if (accept('-')) value -= term();
      else return value;
    }
  }

  Scalar term() {
    Scalar value = unary();
    for (;;) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        skip_space();
        const std::size_t at = pos_;
        Scalar divisor = unary();
        if (divisor.is_zero()) throw division_by_zero("division by zero expression at column " + std::to_string(at + 1));
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  Scalar unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Scalar power() {
    Scalar base = primary();
    if (!accept('^')) return base;
    const std::size_t at = pos_;
    long e;
    if (accept('(')) {
      e = signed_integer();
      expect(')');
    } else {
      e = signed_integer();
    }
    if (e < 0 && base.is_zero()) throw division_by_zero("negative power of zero at column " + std::to_string(at + 1));
    return base.pow(e);
  }

  long signed_integer() {
    const bool negative = accept('-');
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw parse_error(pos_, "expected integer exponent");
    if (pos_ - start > 6) throw parse_error(start, "exponent too large");
    const long v = std::stol(std::string(text_.substr(start, pos_ - start)));
    return negative ? -v : v;
  }

  Scalar primary() {
    skip_space();
    if (at_end()) throw parse_error(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar inner = expression();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Scalar(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      auto index = chart_.variable_index(name);
      if (!index) throw unknown_symbol("unknown symbol '" + name + "' at column " + std::to_string(start + 1));
      return Scalar::variable(*index);
    }
    throw parse_error(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression over the chart's coordinates and generators into
/// canonical form.
inline Scalar parse_scalar(std::string_view text, const Chart& chart) {
  return detail::ExpressionParser(text, chart).parse();
}

/// Generator declared by name with one derivative-rule expression per coordinate.
struct GeneratorDecl {
  std::string name;
  std::vector<std::string> derivatives;
};

/// Builds a chart whose generator rules are given as expression text. Rules
/// may reference any coordinate or generator of the same chart.
inline Chart make_chart(std::vector<std::string> coordinates, const std::vector<GeneratorDecl>& generators = {}) {
  std::vector<GeneratorRule> placeholder;
  for (const auto& g : generators)
    placeholder.push_back({g.name, std::vector<Scalar>(coordinates.size())});
  const Chart names_only(coordinates, placeholder);
  std::vector<GeneratorRule> rules;
  for (const auto& g : generators) {
    if (g.derivatives.size() != coordinates.size())
      throw invalid_input("generator '" + g.name + "' needs one derivative rule per coordinate");
    GeneratorRule rule{g.name, {}};
    for (const auto& text : g.derivatives) rule.derivatives.push_back(parse_scalar(text, names_only));
    rules.push_back(std::move(rule));
  }
  return Chart(std::move(coordinates), std::move(rules));
}

}  // namespace falg
