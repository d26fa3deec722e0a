#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "falg/error.hpp"

namespace falg {

using Rational = mpq_class;
using Integer = mpz_class;

/// Upper bound on coordinates + generators of a chart.
inline constexpr std::size_t kMaxVariables = 16;

/// Exponent vector of a monomial in the chart variables.
struct Monomial {
  std::array<std::uint16_t, kMaxVariables> exponent{};
  std::uint32_t degree = 0;

  static Monomial variable(std::size_t index, unsigned power = 1) {
    Monomial m;
    m.exponent[index] = static_cast<std::uint16_t>(power);
    m.degree = power;
    return m;
  }

  bool is_one() const { return degree == 0; }

  bool divides(const Monomial& other) const {
    if (degree > other.degree) return false;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exponent[i] > other.exponent[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      m.exponent[i] = static_cast<std::uint16_t>(a.exponent[i] + b.exponent[i]);
    m.degree = a.degree + b.degree;
    return m;
  }

  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      m.exponent[i] = static_cast<std::uint16_t>(a.exponent[i] - b.exponent[i]);
    m.degree = a.degree - b.degree;
    return m;
  }

  friend Monomial min(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      m.exponent[i] = std::min(a.exponent[i], b.exponent[i]);
      m.degree += m.exponent[i];
    }
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree == b.degree && a.exponent == b.exponent;
  }
};

/// Degree-lexicographic order, variable 0 largest. Returns <0, 0, >0.
inline int compare_deglex(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (a.exponent[i] != b.exponent[i]) return a.exponent[i] < b.exponent[i] ? -1 : 1;
  return 0;
}

struct DeglexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_deglex(a, b) > 0; }
};

struct Term {
  Monomial monomial;
  Rational coefficient;

  friend bool operator==(const Term& a, const Term& b) {
    return a.monomial == b.monomial && a.coefficient == b.coefficient;
  }
};

/// Sparse multivariate polynomial over Q. Terms are kept sorted in strictly
/// decreasing deglex order with nonzero coefficients, so equality is structural.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({Monomial{}, c});
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static Polynomial variable(std::size_t index, unsigned power = 1) {
    return term(Monomial::variable(index, power), 1);
  }

  static Polynomial term(const Monomial& m, const Rational& c) {
    Polynomial p;
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds from arbitrary (unsorted, possibly repeated) terms.
  static Polynomial from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return compare_deglex(a.monomial, b.monomial) > 0;
    });
    Polynomial p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
        p.terms_.back().coefficient += t.coefficient;
        if (p.terms_.back().coefficient == 0) p.terms_.pop_back();
      } else if (t.coefficient != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const { return is_constant() && !is_zero() && terms_[0].coefficient == 1; }
  const Term& leading() const { return terms_.front(); }

  Rational constant_value() const { return is_zero() ? Rational(0) : terms_[0].coefficient; }

  std::uint32_t total_degree() const { return is_zero() ? 0 : terms_.front().monomial.degree; }

  /// Bit i is set iff variable i occurs.
  std::uint32_t variable_mask() const {
    std::uint32_t mask = 0;
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < kMaxVariables; ++i)
        if (t.monomial.exponent[i] != 0) mask |= (1u << i);
    return mask;
  }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.monomial.exponent[var]);
    return d;
  }

  /// Coefficients with respect to `var`: result[k] multiplies var^k and is free of var.
  std::vector<Polynomial> coefficients_in(std::size_t var) const {
    std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
    for (const auto& t : terms_) {
      Term stripped = t;
      const unsigned k = t.monomial.exponent[var];
      stripped.monomial.exponent[var] = 0;
      stripped.monomial.degree -= k;
      buckets[k].push_back(std::move(stripped));
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
  }

  /// Componentwise minimum exponent over all terms (the monomial content).
  Monomial monomial_content() const {
    if (terms_.empty()) return {};
    Monomial m = terms_.front().monomial;
    for (const auto& t : terms_) m = min(m, t.monomial);
    return m;
  }

  Polynomial derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      const unsigned k = t.monomial.exponent[var];
      if (k == 0) continue;
      Term d = t;
      d.monomial.exponent[var] = static_cast<std::uint16_t>(k - 1);
      d.monomial.degree -= 1;
      d.coefficient *= k;
      out.push_back(std::move(d));
    }
    return from_terms(std::move(out));
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / leading().coefficient);
  }

  Polynomial scaled(const Rational& c) const {
    if (c == 0) return {};
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coefficient *= c;
    return p;
  }

  Polynomial times_monomial(const Monomial& m) const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.monomial = t.monomial * m;
    return p;  // multiplication by a monomial preserves the order
  }

  Polynomial divided_by_monomial(const Monomial& m) const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.monomial = t.monomial / m;
    return p;
  }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coefficient = -t.coefficient;
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b.scaled(a.leading().coefficient);
    if (b.is_constant()) return a.scaled(b.leading().coefficient);
    std::map<Monomial, Rational, DeglexGreater> acc;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc[s.monomial * t.monomial] += s.coefficient * t.coefficient;
    Polynomial p;
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) p.terms_.push_back({m, std::move(c)});
    return p;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned e) const {
    Polynomial result(1), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial p;
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      int c;
      if (i == a.terms_.end()) c = -1;
      else if (j == b.terms_.end()) c = 1;
      else c = compare_deglex(i->monomial, j->monomial);
      if (c > 0) {
        p.terms_.push_back(*i++);
      } else if (c < 0) {
        p.terms_.push_back({j->monomial, subtract ? Rational(-j->coefficient) : j->coefficient});
        ++j;
      } else {
        Rational s = subtract ? Rational(i->coefficient - j->coefficient) : Rational(i->coefficient + j->coefficient);
        if (s != 0) p.terms_.push_back({i->monomial, std::move(s)});
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::vector<Term> terms_;
};

/// Exact quotient a / b; throws if b does not divide a.
inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw division_by_zero("polynomial division by zero");
  if (b.is_constant()) return a.scaled(Rational(1) / b.leading().coefficient);
  if (b.is_monomial()) {
    const Monomial& m = b.leading().monomial;
    for (const auto& t : a.terms())
      if (!m.divides(t.monomial)) throw error("inexact polynomial division");
    return a.divided_by_monomial(m).scaled(Rational(1) / b.leading().coefficient);
  }
  std::vector<Term> quotient;
  Polynomial rest = a;
  const Term& lb = b.leading();
  while (!rest.is_zero()) {
    const Term& lr = rest.leading();
    if (!lb.monomial.divides(lr.monomial)) throw error("inexact polynomial division");
    Term q{lr.monomial / lb.monomial, lr.coefficient / lb.coefficient};
    rest -= b.times_monomial(q.monomial).scaled(q.coefficient);
    quotient.push_back(std::move(q));
  }
  return Polynomial::from_terms(std::move(quotient));
}

namespace detail {

inline Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

// gcd of the coefficients of p with respect to var
inline Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_impl(g, c);
    if (g.is_one()) break;
  }
  return g;
}

inline Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var) {
  Polynomial p;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) p += coeffs[k].times_monomial(Monomial::variable(var, static_cast<unsigned>(k)));
  return p;
}

// Sparse pseudo-remainder of a by b in var (equals prem up to a power of lc(b)).
inline Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const unsigned db = b.degree_in(var);
  const Polynomial lb = b.coefficients_in(var).back();
  Polynomial r = a;
  while (!r.is_zero()) {
    const unsigned dr = r.degree_in(var);
    if (dr < db) break;
    const Polynomial lr = r.coefficients_in(var).back();
    r = lb * r - (lr * b).times_monomial(Monomial::variable(var, dr - db));
  }
  return r;
}

inline Polynomial primitive_part(const Polynomial& p, std::size_t var) {
  return divide_exact(p, content_in(p, var));
}

// Both arguments nonzero, nonconstant, without monomial content.
inline Polynomial gcd_recursive(const Polynomial& a, const Polynomial& b) {
  const std::uint32_t ma = a.variable_mask();
  const std::uint32_t mb = b.variable_mask();
  const std::uint32_t only_a = ma & ~mb;
  const std::uint32_t only_b = mb & ~ma;
  if (only_a) return gcd_impl(content_in(a, static_cast<std::size_t>(__builtin_ctz(only_a))), b);
  if (only_b) return gcd_impl(a, content_in(b, static_cast<std::size_t>(__builtin_ctz(only_b))));

  const std::size_t var = static_cast<std::size_t>(31 - __builtin_clz(ma));
  const Polynomial ca = content_in(a, var);
  const Polynomial cb = content_in(b, var);
  const Polynomial c = gcd_impl(ca, cb);
  Polynomial p = divide_exact(a, ca);
  Polynomial q = divide_exact(b, cb);
  if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
  while (!q.is_zero()) {
    Polynomial r = pseudo_remainder(p, q, var);
    p = std::move(q);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      p = Polynomial(1);
      break;
    }
    q = primitive_part(r, var);
  }
  return (c * primitive_part(p, var)).monic();
}

inline Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return a.monic();
  if (a.is_monomial() || b.is_monomial()) {
    Monomial m = min(a.monomial_content(), b.monomial_content());
    return Polynomial::term(m, 1);
  }
  const Monomial ca = a.monomial_content();
  const Monomial cb = b.monomial_content();
  const Monomial common = min(ca, cb);
  const Polynomial ra = a.divided_by_monomial(ca);
  const Polynomial rb = b.divided_by_monomial(cb);
  Polynomial g;
  if (ra.is_constant() || rb.is_constant()) g = Polynomial(1);
  else g = gcd_recursive(ra, rb);
  return g.times_monomial(common).monic();
}

}  // namespace detail

/// Monic greatest common divisor over Q (zero iff both are zero).
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) { return detail::gcd_impl(a, b); }

}  // namespace falg
