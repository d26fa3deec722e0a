#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "falg/scalar.hpp"

namespace falg {

/// A declared transcendental with its partial derivatives, one per coordinate.
struct GeneratorRule {
  std::string name;
  std::vector<Scalar> derivatives;
};

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// Coordinate chart: ordered coordinates followed by ordered generators.
/// Variable index i < dimension() is a coordinate, the rest are generators.
class Chart {
 public:
  Chart() : data_(std::make_shared<const Data>()) {}

  explicit Chart(std::vector<std::string> coordinates, std::vector<GeneratorRule> generators = {}) {
    auto data = std::make_shared<Data>();
    data->coordinates = std::move(coordinates);
    data->generators = std::move(generators);
    std::vector<std::string> names = data->coordinates;
    for (const auto& g : data->generators) names.push_back(g.name);
    if (names.size() > kMaxVariables) throw invalid_input("too many chart variables");
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!is_identifier(names[i])) throw invalid_input("invalid chart symbol name '" + names[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (names[i] == names[j]) throw invalid_input("duplicate chart symbol '" + names[i] + "'");
    }
    const std::uint32_t allowed = names.size() >= 32 ? ~0u : ((1u << names.size()) - 1);
    for (const auto& g : data->generators) {
      if (g.derivatives.size() != data->coordinates.size())
        throw invalid_input("generator '" + g.name + "' needs one derivative rule per coordinate");
      for (const auto& d : g.derivatives)
        if (((d.numerator().variable_mask() | d.denominator().variable_mask()) & ~allowed) != 0)
          throw invalid_input("derivative rule of '" + g.name + "' leaves the chart");
    }
    data_ = std::move(data);
  }

  std::size_t dimension() const { return data_->coordinates.size(); }
  std::size_t generator_count() const { return data_->generators.size(); }
  std::size_t variable_count() const { return dimension() + generator_count(); }

  const std::vector<std::string>& coordinates() const { return data_->coordinates; }
  const std::vector<GeneratorRule>& generators() const { return data_->generators; }

  const std::string& variable_name(std::size_t i) const {
    return i < dimension() ? data_->coordinates[i] : data_->generators[i - dimension()].name;
  }

  std::optional<std::size_t> variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < variable_count(); ++i)
      if (variable_name(i) == name) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> coordinate_index(const std::string& name) const {
    for (std::size_t i = 0; i < dimension(); ++i)
      if (data_->coordinates[i] == name) return i;
    return std::nullopt;
  }

  Scalar coordinate(std::size_t i) const { return Scalar::variable(i); }

  bool same_as(const Chart& other) const {
    if (data_ == other.data_) return true;
    if (data_->coordinates != other.data_->coordinates) return false;
    if (data_->generators.size() != other.data_->generators.size()) return false;
    for (std::size_t g = 0; g < data_->generators.size(); ++g) {
      const auto& a = data_->generators[g];
      const auto& b = other.data_->generators[g];
      if (a.name != b.name || !(a.derivatives == b.derivatives)) return false;
    }
    return true;
  }

 private:
  struct Data {
    std::vector<std::string> coordinates;
    std::vector<GeneratorRule> generators;
  };
  std::shared_ptr<const Data> data_;
};

inline void require_same_chart(const Chart& a, const Chart& b) {
  if (!a.same_as(b)) throw mismatch_error("chart mismatch");
}

namespace detail {

// d p / d x_coord as a rational function, applying generator rules.
inline Scalar polynomial_partial(const Chart& chart, const Polynomial& p, std::size_t coord) {
  Scalar result(p.derivative(coord));
  for (std::size_t g = 0; g < chart.generator_count(); ++g) {
    const std::size_t var = chart.dimension() + g;
    if (p.degree_in(var) == 0) continue;
    const Scalar& rule = chart.generators()[g].derivatives[coord];
    if (rule.is_zero()) continue;
    result += Scalar(p.derivative(var)) * rule;
  }
  return result;
}

}  // namespace detail

/// Exact partial derivative along coordinate `coord`.
inline Scalar differentiate(const Chart& chart, const Scalar& s, std::size_t coord) {
  if (coord >= chart.dimension()) throw unknown_symbol("unknown coordinate index " + std::to_string(coord));
  if (s.is_zero() || s.is_constant()) return {};
  const Scalar dn = detail::polynomial_partial(chart, s.numerator(), coord);
  if (s.is_polynomial()) return dn;
  const Scalar dd = detail::polynomial_partial(chart, s.denominator(), coord);
  const Scalar den(s.denominator());
  // (n/d)' = (n' - (n/d) d') / d
  return (dn - s * dd) / den;
}

inline Scalar differentiate(const Chart& chart, const Scalar& s, const std::string& coord) {
  auto i = chart.coordinate_index(coord);
  if (!i) throw unknown_symbol("unknown coordinate '" + coord + "'");
  return differentiate(chart, s, *i);
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string render_rational(const Rational& c) {
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

// exponents may be negative (Laurent terms)
inline std::string render_power_product(const Chart& chart, const std::vector<long>& exps) {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += chart.variable_name(i);
    if (exps[i] != 1) out += "^" + std::to_string(exps[i]);
  }
  return out;
}

struct SignedTerm {
  Rational coefficient;
  std::vector<long> exponents;
};

// Renders a signed sum; first term carries a leading '-' if negative.
inline std::string render_sum(const Chart& chart, const std::vector<SignedTerm>& terms) {
  std::string out;
  bool first = true;
  for (const auto& t : terms) {
    const bool negative = t.coefficient < 0;
    const Rational magnitude = abs(t.coefficient);
    const std::string mono = render_power_product(chart, t.exponents);
    std::string body;
    if (mono.empty()) body = render_rational(magnitude);
    else if (magnitude == 1) body = mono;
    else body = render_rational(magnitude) + "*" + mono;
    if (first) out += negative ? "-" + body : body;
    else out += negative ? " - " + body : " + " + body;
    first = false;
  }
  return out;
}

inline std::vector<SignedTerm> signed_terms(const Chart& chart, const Polynomial& p) {
  std::vector<SignedTerm> out;
  for (const auto& t : p.terms()) {
    SignedTerm s{t.coefficient, std::vector<long>(chart.variable_count())};
    for (std::size_t i = 0; i < chart.variable_count(); ++i) s.exponents[i] = t.monomial.exponent[i];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/// Text form of a scalar plus whether it is a top-level sum (needs parentheses
/// when used as a factor).
struct RenderedScalar {
  std::string text;
  bool is_sum = false;
};

/// Deterministic, parseable rendering. Polynomials list terms in decreasing
/// deglex order. A monomial denominator is distributed into Laurent terms
/// (most singular first) with any common generator factor pulled out, e.g.
/// "(4*x^-6 - 6*x^-4)*chi".
inline RenderedScalar render_parts(const Chart& chart, const Scalar& s) {
  using detail::SignedTerm;
  if (s.is_zero()) return {"0", false};
  const Polynomial& num = s.numerator();
  const Polynomial& den = s.denominator();
  if (den.is_one()) {
    return {detail::render_sum(chart, detail::signed_terms(chart, num)), num.terms().size() > 1};
  }
  if (den.is_monomial()) {
    const Monomial& dm = den.leading().monomial;
    std::vector<SignedTerm> terms = detail::signed_terms(chart, num);
    for (auto& t : terms)
      for (std::size_t i = 0; i < chart.variable_count(); ++i) t.exponents[i] -= dm.exponent[i];
    std::vector<long> common(chart.variable_count(), 0);
    if (terms.size() > 1) {
      for (std::size_t g = chart.dimension(); g < chart.variable_count(); ++g) {
        long lo = terms[0].exponents[g];
        for (const auto& t : terms) lo = std::min(lo, t.exponents[g]);
        if (lo > 0) {
          common[g] = lo;
          for (auto& t : terms) t.exponents[g] -= lo;
        }
      }
    }
    auto total = [](const SignedTerm& t) {
      long d = 0;
      for (long e : t.exponents) d += e;
      return d;
    };
    std::stable_sort(terms.begin(), terms.end(), [&](const SignedTerm& a, const SignedTerm& b) {
      const long da = total(a), db = total(b);
      if (da != db) return da < db;
      return a.exponents > b.exponents;
    });
    std::string sum = detail::render_sum(chart, terms);
    const std::string factor = detail::render_power_product(chart, common);
    if (factor.empty()) return {sum, terms.size() > 1};
    if (terms.size() > 1) return {"(" + sum + ")*" + factor, false};
    return {sum + "*" + factor, false};
  }
  std::string n = detail::render_sum(chart, detail::signed_terms(chart, num));
  if (num.terms().size() > 1) n = "(" + n + ")";
  return {n + "/(" + detail::render_sum(chart, detail::signed_terms(chart, den)) + ")", false};
}

inline std::string render(const Chart& chart, const Scalar& s) { return render_parts(chart, s).text; }

/// Rendering suitable as a multiplicative prefix ("x", "(x + y)", "-2*y").
inline std::string render_factor(const Chart& chart, const Scalar& s) {
  RenderedScalar r = render_parts(chart, s);
  return r.is_sum ? "(" + r.text + ")" : r.text;
}

/// Appends "coeff basis" to a running sum, folding signs into " + " / " - ".
inline void append_term(std::string& out, const Chart& chart, const Scalar& coeff, const std::string& basis) {
  if (coeff.is_zero()) return;
  std::string term;
  bool negative = false;
  if (coeff == Scalar(1)) {
    term = basis;
  } else if (coeff == Scalar(-1)) {
    term = basis;
    negative = true;
  } else {
    term = render_factor(chart, coeff);
    if (term[0] == '-') {
      negative = true;
      term.erase(0, 1);
    }
    term += " " + basis;
  }
  if (out.empty()) out = negative ? "-" + term : term;
  else out += (negative ? " - " : " + ") + term;
}

}  // namespace falg
