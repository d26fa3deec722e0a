#pragma once

#include <utility>

#include "falg/polynomial.hpp"

namespace falg {

/// Exact rational function num/den over Q in the chart variables.
///
/// Canonical form: gcd(num, den) = 1 and den is monic under deglex, with
/// den = 1 whenever num = 0. Equality is therefore structural.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(long c) : Scalar(Rational(c)) {}          // NOLINT(google-explicit-constructor)
  Scalar(int c) : Scalar(Rational(c)) {}           // NOLINT(google-explicit-constructor)
  Scalar(long long c) : Scalar(Rational(static_cast<long>(c))) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(Polynomial p) : num_(std::move(p)), den_(1) {}

  static Scalar variable(std::size_t index) { return Scalar(Polynomial::variable(index)); }

  /// Reduces num/den to canonical form.
  static Scalar fraction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw division_by_zero("division by zero");
    Scalar s;
    if (num.is_zero()) return s;
    if (!den.is_constant()) {
      Polynomial g = gcd(num, den);
      if (!g.is_one()) {
        num = divide_exact(num, g);
        den = divide_exact(den, g);
      }
    }
    const Rational lc = den.leading().coefficient;
    if (lc != 1) {
      num = num.scaled(Rational(1) / lc);
      den = den.scaled(Rational(1) / lc);
    }
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    return s;
  }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }
  Rational constant_value() const { return num_.constant_value(); }

  Scalar operator-() const {
    Scalar s = *this;
    s.num_ = -s.num_;
    return s;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b, false); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return add(a, b, true); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return Scalar(a.num_ * b.num_);
    const Polynomial g1 = gcd(a.num_, b.den_);
    const Polynomial g2 = gcd(b.num_, a.den_);
    Scalar s;
    s.num_ = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
    s.den_ = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
    return s;
  }

  Scalar inverse() const {
    if (is_zero()) throw division_by_zero("division by zero scalar");
    const Rational lc = num_.leading().coefficient;
    Scalar s;
    s.num_ = den_.scaled(Rational(1) / lc);
    s.den_ = num_.scaled(Rational(1) / lc);
    return s;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar s;
    s.num_ = num_.pow(static_cast<unsigned>(e));
    s.den_ = den_.pow(static_cast<unsigned>(e));
    return s;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  static Scalar add(const Scalar& a, const Scalar& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    if (a.is_polynomial() && b.is_polynomial()) return Scalar(subtract ? a.num_ - b.num_ : a.num_ + b.num_);
    if (a.den_ == b.den_) return fraction(subtract ? a.num_ - b.num_ : a.num_ + b.num_, a.den_);
    const Polynomial g = gcd(a.den_, b.den_);
    const Polynomial ca = divide_exact(b.den_, g);
    const Polynomial cb = divide_exact(a.den_, g);
    Polynomial n = subtract ? a.num_ * ca - b.num_ * cb : a.num_ * ca + b.num_ * cb;
    return fraction(std::move(n), a.den_ * ca);
  }

  Polynomial num_;
  Polynomial den_;
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

}  // namespace falg
