#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "falg/tensor.hpp"

namespace falg {

/// Section sum_a f^a e_a of a trivial bundle in its global frame.
struct ESection {
  std::vector<Scalar> coefficients;

  ESection() = default;
  explicit ESection(std::size_t rank) : coefficients(rank) {}
  explicit ESection(std::vector<Scalar> c) : coefficients(std::move(c)) {}

  static ESection basis(std::size_t rank, std::size_t a) {
    ESection s(rank);
    s.coefficients.at(a) = Scalar(1);
    return s;
  }

  std::size_t rank() const { return coefficients.size(); }
  const Scalar& operator[](std::size_t a) const { return coefficients[a]; }
  Scalar& operator[](std::size_t a) { return coefficients[a]; }

  bool is_zero() const {
    for (const auto& c : coefficients)
      if (!c.is_zero()) return false;
    return true;
  }

  friend ESection operator+(ESection a, const ESection& b) {
    if (a.rank() != b.rank()) throw mismatch_error("section rank mismatch");
    for (std::size_t k = 0; k < a.rank(); ++k) a.coefficients[k] += b.coefficients[k];
    return a;
  }
  friend ESection operator-(ESection a, const ESection& b) {
    if (a.rank() != b.rank()) throw mismatch_error("section rank mismatch");
    for (std::size_t k = 0; k < a.rank(); ++k) a.coefficients[k] -= b.coefficients[k];
    return a;
  }
  ESection operator-() const {
    ESection s = *this;
    for (auto& c : s.coefficients) c = -c;
    return s;
  }
  friend ESection operator*(const Scalar& f, ESection s) {
    for (auto& c : s.coefficients) c = f * c;
    return s;
  }
  ESection& operator+=(const ESection& o) { return *this = *this + o; }
  ESection& operator-=(const ESection& o) { return *this = *this - o; }
  friend bool operator==(const ESection& a, const ESection& b) { return a.coefficients == b.coefficients; }
};

/// Trivial bundle of rank m over a chart with anchor rho(e_a) = rho_a^i d_i.
class AnchoredBundle {
 public:
  AnchoredBundle() = default;
  AnchoredBundle(Chart chart, std::vector<std::vector<Scalar>> anchor)
      : chart_(std::move(chart)), anchor_(std::move(anchor)) {
    if (anchor_.empty()) throw invalid_input("bundle rank must be positive");
    for (const auto& row : anchor_)
      if (row.size() != chart_.dimension()) throw invalid_input("anchor matrix must have one column per coordinate");
  }

  const Chart& chart() const { return chart_; }
  std::size_t rank() const { return anchor_.size(); }
  std::size_t dimension() const { return chart_.dimension(); }
  const Scalar& anchor(std::size_t a, std::size_t i) const { return anchor_[a][i]; }
  const std::vector<std::vector<Scalar>>& anchor_matrix() const { return anchor_; }

  TensorField anchor_field(std::size_t a) const { return TensorField::vector_field(chart_, anchor_.at(a)); }

 private:
  Chart chart_;
  std::vector<std::vector<Scalar>> anchor_;
};

/// Connection on a trivial rank-m bundle: nabla_{d_i} e_a = Gamma_{i a}^b e_b.
class Connection {
 public:
  Connection() = default;
  Connection(Chart chart, std::size_t rank)
      : chart_(std::move(chart)), rank_(rank), gamma_(chart_.dimension() * rank * rank) {}

  static Connection flat(const Chart& chart, std::size_t rank) { return Connection(chart, rank); }

  const Chart& chart() const { return chart_; }
  std::size_t rank() const { return rank_; }
  std::size_t dimension() const { return chart_.dimension(); }

  const Scalar& gamma(std::size_t i, std::size_t a, std::size_t b) const { return gamma_.at(offset(i, a, b)); }
  Scalar& gamma(std::size_t i, std::size_t a, std::size_t b) { return gamma_.at(offset(i, a, b)); }

  bool is_flat_frame() const {
    for (const auto& g : gamma_)
      if (!g.is_zero()) return false;
    return true;
  }

 private:
  std::size_t offset(std::size_t i, std::size_t a, std::size_t b) const {
    if (i >= dimension() || a >= rank_ || b >= rank_) throw mismatch_error("Christoffel index out of range");
    return (i * rank_ + a) * rank_ + b;
  }

  Chart chart_;
  std::size_t rank_ = 0;
  std::vector<Scalar> gamma_;
};

inline void require_compatible(const AnchoredBundle& e, const Connection& c) {
  require_same_chart(e.chart(), c.chart());
  if (e.rank() != c.rank()) throw mismatch_error("connection rank does not match bundle rank");
}

/// rho(s) = f^a rho_a^i d_i.
inline TensorField anchor_apply(const AnchoredBundle& e, const ESection& s) {
  if (s.rank() != e.rank()) throw mismatch_error("section rank mismatch");
  TensorField out(e.chart(), 1, 0);
  for (std::size_t a = 0; a < e.rank(); ++a) {
    if (s[a].is_zero()) continue;
    for (std::size_t i = 0; i < e.dimension(); ++i)
      if (!e.anchor(a, i).is_zero()) out[i] += s[a] * e.anchor(a, i);
  }
  return out;
}

/// nabla_{d_i} s.
inline ESection covariant_derivative(const Connection& c, std::size_t i, const ESection& s) {
  if (s.rank() != c.rank()) throw mismatch_error("section rank mismatch");
  ESection out(c.rank());
  for (std::size_t b = 0; b < c.rank(); ++b) out[b] = differentiate(c.chart(), s[b], i);
  for (std::size_t a = 0; a < c.rank(); ++a) {
    if (s[a].is_zero()) continue;
    for (std::size_t b = 0; b < c.rank(); ++b)
      if (!c.gamma(i, a, b).is_zero()) out[b] += c.gamma(i, a, b) * s[a];
  }
  return out;
}

/// (nabla_v s)^b = v^i (d_i f^b + Gamma_{i a}^b f^a).
inline ESection covariant_derivative(const Connection& c, const TensorField& v, const ESection& s) {
  require_same_chart(c.chart(), v.chart());
  if (v.contravariant() != 1 || v.covariant() != 0) throw mismatch_error("expected a vector field");
  ESection out(c.rank());
  for (std::size_t i = 0; i < c.dimension(); ++i)
    if (!v[i].is_zero()) out += v[i] * covariant_derivative(c, i, s);
  return out;
}

/// The n components nabla_{d_i} s of nabla s in T*M (x) E.
inline std::vector<ESection> full_derivative(const Connection& c, const ESection& s) {
  std::vector<ESection> out;
  out.reserve(c.dimension());
  for (std::size_t i = 0; i < c.dimension(); ++i) out.push_back(covariant_derivative(c, i, s));
  return out;
}

/// F(d_i, d_j) e_a = F_{ij a}^b e_b.
class Curvature {
 public:
  Curvature(std::size_t n, std::size_t m) : n_(n), m_(m), data_(n * n * m * m) {}
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t a, std::size_t b) const {
    return data_[((i * n_ + j) * m_ + a) * m_ + b];
  }
  Scalar& operator()(std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
    return data_[((i * n_ + j) * m_ + a) * m_ + b];
  }
  bool is_zero() const {
    for (const auto& s : data_)
      if (!s.is_zero()) return false;
    return true;
  }

 private:
  std::size_t n_, m_;
  std::vector<Scalar> data_;
};

/// F_{ij a}^b = d_i G_{j a}^b - d_j G_{i a}^b + G_{i c}^b G_{j a}^c - G_{j c}^b G_{i a}^c.
inline Curvature curvature(const Connection& c) {
  const std::size_t n = c.dimension();
  const std::size_t m = c.rank();
  Curvature f(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          Scalar v = differentiate(c.chart(), c.gamma(j, a, b), i) - differentiate(c.chart(), c.gamma(i, a, b), j);
          for (std::size_t k = 0; k < m; ++k)
            v += c.gamma(i, k, b) * c.gamma(j, a, k) - c.gamma(j, k, b) * c.gamma(i, a, k);
          f(j, i, a, b) = -v;
          f(i, j, a, b) = std::move(v);
        }
  return f;
}

/// Slot endomorphism d_k X^i + W_k^i for the E-connection of a section whose
/// anchor is X and whose derivative images are W_k = rho(nabla_{d_k} s).
inline SlotMatrix e_connection_matrix(const TensorField& x, const std::vector<TensorField>& w) {
  SlotMatrix a = jacobian(x);
  const std::size_t n = x.dimension();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (!w[k][i].is_zero()) a[i * n + k] += w[k][i];
  return a;
}

/// rho(nabla_{d_k} s) for k = 1..n.
inline std::vector<TensorField> anchored_derivative(const AnchoredBundle& e, const Connection& c, const ESection& s) {
  std::vector<TensorField> w;
  for (const auto& d : full_derivative(c, s)) w.push_back(anchor_apply(e, d));
  return w;
}

/// E-connection: on vector fields [rho(s), v] - rho(nabla_v s), extended to all
/// tensor types by duality and Leibniz; on functions rho(s)(f).
inline TensorField e_connection_apply(const AnchoredBundle& e, const Connection& c, const ESection& s, const TensorField& t) {
  require_compatible(e, c);
  require_same_chart(e.chart(), t.chart());
  const TensorField x = anchor_apply(e, s);
  if (t.rank() == 0) return TensorField::scalar(t.chart(), apply_vector(x, t[0]));
  const SlotMatrix a = e_connection_matrix(x, anchored_derivative(e, c, s));
  return derivation_apply(x, std::vector<SlotMatrix>(static_cast<std::size_t>(t.rank()), a), t);
}

/// Sum over slots, slot k differentiated with connection k; contravariant slots
/// first, then covariant, each in declaration order.
inline TensorField combined_e_connection(const AnchoredBundle& e, const std::vector<Connection>& connections,
                                         const ESection& s, const TensorField& t) {
  if (connections.size() != static_cast<std::size_t>(t.rank()))
    throw mismatch_error("need " + std::to_string(t.rank()) + " connections for a tensor with " +
                         std::to_string(t.rank()) + " slots, got " + std::to_string(connections.size()));
  require_same_chart(e.chart(), t.chart());
  const TensorField x = anchor_apply(e, s);
  if (t.rank() == 0) return TensorField::scalar(t.chart(), apply_vector(x, t[0]));
  std::vector<SlotMatrix> slots;
  for (const auto& c : connections) {
    require_compatible(e, c);
    slots.push_back(e_connection_matrix(x, anchored_derivative(e, c, s)));
  }
  return derivation_apply(x, slots, t);
}

struct CompatibilityReport {
  std::vector<TensorField> residuals;  // one per frame section e_a
  bool compatible = true;
};

/// Residuals of the combined E-connection on each frame section e_a. With the
/// sign [rho(s),v] - rho(nabla_v s) the operator is only R-linear in s, so the
/// test is relative to the bundle's frame.
inline CompatibilityReport check_compatibility(const AnchoredBundle& e, const std::vector<Connection>& connections,
                                               const TensorField& t) {
  CompatibilityReport report;
  for (std::size_t a = 0; a < e.rank(); ++a) {
    report.residuals.push_back(combined_e_connection(e, connections, ESection::basis(e.rank(), a), t));
    if (!report.residuals.back().is_zero()) report.compatible = false;
  }
  return report;
}

}  // namespace falg
