#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "falg/anchored_bundle.hpp"
#include "falg/cartan.hpp"

namespace falg {

/// Rank-k Lie algebroid on a trivial bundle: anchor rho_a^i, structure
/// functions [e_a, e_b] = C_{ab}^c e_c, and a connection.
class FiniteLieAlgebroid {
 public:
  FiniteLieAlgebroid() = default;

  /// `structure` is indexed [a][b][c].
  FiniteLieAlgebroid(Chart chart, std::vector<std::vector<Scalar>> anchor,
                     std::vector<std::vector<std::vector<Scalar>>> structure, Connection connection)
      : bundle_(std::move(chart), std::move(anchor)), connection_(std::move(connection)) {
    const std::size_t k = bundle_.rank();
    if (structure.size() != k) throw invalid_input("structure functions must be k x k x k");
    structure_.reserve(k * k * k);
    for (const auto& row : structure) {
      if (row.size() != k) throw invalid_input("structure functions must be k x k x k");
      for (const auto& col : row) {
        if (col.size() != k) throw invalid_input("structure functions must be k x k x k");
        structure_.insert(structure_.end(), col.begin(), col.end());
      }
    }
    require_compatible(bundle_, connection_);
  }

  const Chart& chart() const { return bundle_.chart(); }
  std::size_t rank() const { return bundle_.rank(); }
  std::size_t dimension() const { return bundle_.dimension(); }
  const AnchoredBundle& bundle() const { return bundle_; }
  const Connection& connection() const { return connection_; }

  const Scalar& structure(std::size_t a, std::size_t b, std::size_t c) const {
    return structure_[(a * rank() + b) * rank() + c];
  }

  /// Same algebroid with C_ab^c shifted by delta (and C_ba^c by -delta).
  FiniteLieAlgebroid perturbed(std::size_t a, std::size_t b, std::size_t c, const Scalar& delta) const {
    if (a == b) throw invalid_input("perturbation needs a != b");
    FiniteLieAlgebroid copy = *this;
    copy.structure_.at((a * rank() + b) * rank() + c) += delta;
    copy.structure_.at((b * rank() + a) * rank() + c) -= delta;
    return copy;
  }

  /// [s,t] = f^a g^b C_ab^c e_c + rho(s)(g^c) e_c - rho(t)(f^c) e_c.
  ESection bracket(const ESection& s, const ESection& t) const {
    const std::size_t k = rank();
    ESection out(k);
    for (std::size_t a = 0; a < k; ++a) {
      if (s[a].is_zero()) continue;
      for (std::size_t b = 0; b < k; ++b) {
        if (t[b].is_zero()) continue;
        const Scalar fg = s[a] * t[b];
        for (std::size_t c = 0; c < k; ++c)
          if (!structure(a, b, c).is_zero()) out[c] += fg * structure(a, b, c);
      }
    }
    const TensorField xs = anchor(s);
    const TensorField xt = anchor(t);
    for (std::size_t c = 0; c < k; ++c) out[c] += apply_vector(xs, t[c]) - apply_vector(xt, s[c]);
    return out;
  }

  TensorField anchor(const ESection& s) const { return anchor_apply(bundle_, s); }

  ESection basis(std::size_t a) const { return ESection::basis(rank(), a); }

 private:
  AnchoredBundle bundle_;
  std::vector<Scalar> structure_;
  Connection connection_;
};

/// Adapter exposing a FiniteLieAlgebroid to the generic connection calculus.
class LieAlgebroidCalculus {
 public:
  using section_type = ESection;

  explicit LieAlgebroidCalculus(const FiniteLieAlgebroid& a) : a_(a) {}

  const Chart& chart() const { return a_.chart(); }
  ESection zero() const { return ESection(a_.rank()); }
  ESection bracket(const ESection& s, const ESection& t) const { return a_.bracket(s, t); }
  TensorField anchor(const ESection& s) const { return a_.anchor(s); }
  std::vector<ESection> derivative(const ESection& s) const { return full_derivative(a_.connection(), s); }

 private:
  const FiniteLieAlgebroid& a_;
};

struct AxiomCheck {
  std::string identity;
  std::string residual;  // "0" when the identity holds
  bool ok = true;
};

struct AxiomReport {
  bool ok = true;
  std::vector<AxiomCheck> checks;
  std::vector<std::string> violations;  // in check order; front() is the first violated identity
};

/// Antisymmetry of C, anchor morphism rho([e_a,e_b]) = [rho(e_a), rho(e_b)], and
/// the Jacobi identity of the bracket including anchor-derivative terms.
inline AxiomReport check_lie_algebroid_axioms(const FiniteLieAlgebroid& a) {
  AxiomReport report;
  const std::size_t k = a.rank();
  const Chart& chart = a.chart();
  auto record = [&](std::string identity, std::string residual) {
    const bool ok = residual == "0";
    if (!ok) {
      report.ok = false;
      report.violations.push_back(identity + " = " + residual);
    }
    report.checks.push_back({std::move(identity), std::move(residual), ok});
  };
  auto name = [](std::size_t i) { return "e" + std::to_string(i + 1); };

  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x; y < k; ++y)
      for (std::size_t c = 0; c < k; ++c)
        record("antisymmetry: C(" + name(x) + "," + name(y) + ")^" + name(c) + " + C(" + name(y) + "," + name(x) +
                   ")^" + name(c),
               render(chart, a.structure(x, y, c) + a.structure(y, x, c)));

  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x + 1; y < k; ++y) {
      const TensorField lhs = a.anchor(a.bracket(a.basis(x), a.basis(y)));
      const TensorField rhs = commutator(a.bundle().anchor_field(x), a.bundle().anchor_field(y));
      record("anchor morphism: rho([" + name(x) + "," + name(y) + "]) - [rho(" + name(x) + "),rho(" + name(y) + ")]",
             render(lhs - rhs));
    }

  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x + 1; y < k; ++y)
      for (std::size_t z = y + 1; z < k; ++z) {
        const ESection ex = a.basis(x), ey = a.basis(y), ez = a.basis(z);
        const ESection jac = a.bracket(ex, a.bracket(ey, ez)) + a.bracket(ey, a.bracket(ez, ex)) +
                             a.bracket(ez, a.bracket(ex, ey));
        std::string r;
        for (std::size_t c = 0; c < k; ++c) append_term(r, chart, jac[c], name(c));
        record("jacobi: Jac(" + name(x) + "," + name(y) + "," + name(z) + ")", r.empty() ? "0" : r);
      }
  return report;
}

/// S_{ab,i}^c: the d x^i component of S(e_a, e_b), coefficient of e_c.
class CompatibilityTensor {
 public:
  CompatibilityTensor(std::size_t k, std::size_t n) : k_(k), n_(n), data_(k * k * n * k) {}

  std::size_t rank() const { return k_; }
  std::size_t dimension() const { return n_; }

  const Scalar& operator()(std::size_t a, std::size_t b, std::size_t i, std::size_t c) const {
    return data_[((a * k_ + b) * n_ + i) * k_ + c];
  }
  Scalar& operator()(std::size_t a, std::size_t b, std::size_t i, std::size_t c) {
    return data_[((a * k_ + b) * n_ + i) * k_ + c];
  }

  bool is_zero() const {
    for (const auto& s : data_)
      if (!s.is_zero()) return false;
    return true;
  }

  /// True iff all components of S(e_a, e_b) vanish.
  bool pair_is_zero(std::size_t a, std::size_t b) const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t c = 0; c < k_; ++c)
        if (!(*this)(a, b, i, c).is_zero()) return false;
    return true;
  }

  friend bool operator==(const CompatibilityTensor& x, const CompatibilityTensor& y) {
    return x.k_ == y.k_ && x.n_ == y.n_ && x.data_ == y.data_;
  }

 private:
  std::size_t k_, n_;
  std::vector<Scalar> data_;
};

/// Renders S(e_a, e_b) as e.g. "dy⊗e2".
inline std::string render_pair(const Chart& chart, const CompatibilityTensor& s, std::size_t a, std::size_t b) {
  std::string out;
  for (std::size_t i = 0; i < s.dimension(); ++i)
    for (std::size_t c = 0; c < s.rank(); ++c) {
      const Scalar& v = s(a, b, i, c);
      if (v.is_zero()) continue;
      const std::string basis = "d" + chart.coordinates()[i] + "⊗e" + std::to_string(c + 1);
      append_term(out, chart, v, basis);
    }
  return out.empty() ? "0" : out;
}

/// Curvature form: S = 2 Alt<rho, F> + nabla(A-torsion), with
/// A-torsion T(s,s') = nabla_{rho(s)} s' - nabla_{rho(s')} s - [s,s'] and the
/// induced connection on Lambda^2 A* (x) A.
inline CompatibilityTensor compatibility_tensor_curvature(const FiniteLieAlgebroid& alg) {
  const std::size_t k = alg.rank();
  const std::size_t n = alg.dimension();
  const Chart& chart = alg.chart();
  const Connection& conn = alg.connection();
  const Curvature f = curvature(conn);

  // torsion[a][b][c]
  std::vector<Scalar> torsion(k * k * k);
  auto tor = [&](std::size_t a, std::size_t b, std::size_t c) -> Scalar& { return torsion[(a * k + b) * k + c]; };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c) {
        Scalar v = -alg.structure(a, b, c);
        for (std::size_t j = 0; j < n; ++j)
          v += alg.bundle().anchor(a, j) * conn.gamma(j, b, c) - alg.bundle().anchor(b, j) * conn.gamma(j, a, c);
        tor(a, b, c) = std::move(v);
      }

  CompatibilityTensor s(k, n);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < k; ++c) {
          // <rho, F>(e_a, e_b) along d x^i: F(rho(e_a), d_i) e_b, then antisymmetrize
          Scalar v;
          for (std::size_t j = 0; j < n; ++j) {
            v += alg.bundle().anchor(a, j) * f(j, i, b, c);
            v -= alg.bundle().anchor(b, j) * f(j, i, a, c);
          }
          // (nabla_i T)_{ab}^c = d_i T_ab^c + G_{i d}^c T_ab^d - G_{i a}^d T_db^c - G_{i b}^d T_ad^c
          v += differentiate(chart, tor(a, b, c), i);
          for (std::size_t d = 0; d < k; ++d) {
            v += conn.gamma(i, d, c) * tor(a, b, d);
            v -= conn.gamma(i, a, d) * tor(d, b, c);
            v -= conn.gamma(i, b, d) * tor(a, d, c);
          }
          s(a, b, i, c) = std::move(v);
        }
  return s;
}

/// Section form of S evaluated on frame pairs (e_a, e_b).
inline CompatibilityTensor compatibility_tensor_sections(const FiniteLieAlgebroid& alg) {
  const std::size_t k = alg.rank();
  const std::size_t n = alg.dimension();
  LieAlgebroidCalculus calc(alg);
  CompatibilityTensor s(k, n);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const auto comps = sections_compatibility_tensor(calc, alg.basis(a), alg.basis(b));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < k; ++c) s(a, b, i, c) = comps[i][c];
    }
  return s;
}

}  // namespace falg
