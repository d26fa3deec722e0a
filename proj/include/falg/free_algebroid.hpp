#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "falg/anchored_bundle.hpp"
#include "falg/bracket_algebra.hpp"
#include "falg/cartan.hpp"

namespace falg {

/// Section of the truncated free (almost) Lie algebroid: Scalar-weighted
/// combination of canonical frame monomials.
class FreeSection {
 public:
  FreeSection() = default;

  static FreeSection monomial(const Tree& t, Scalar coefficient = Scalar(1)) {
    FreeSection s;
    s.add_term(t, std::move(coefficient));
    return s;
  }

  const std::map<Tree, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const Tree& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Scalar() : it->second;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& [t, c] : terms_) d = std::max(d, t.degree());
    return d;
  }

  void add_term(const Tree& t, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FreeSection operator-() const {
    FreeSection s = *this;
    for (auto& [t, c] : s.terms_) c = -c;
    return s;
  }

  friend FreeSection operator+(FreeSection a, const FreeSection& b) {
    for (const auto& [t, c] : b.terms_) a.add_term(t, c);
    return a;
  }

  friend FreeSection operator-(FreeSection a, const FreeSection& b) {
    for (const auto& [t, c] : b.terms_) a.add_term(t, -c);
    return a;
  }

  friend FreeSection operator*(const Scalar& f, const FreeSection& s) {
    FreeSection out;
    if (f.is_zero()) return out;
    for (const auto& [t, c] : s.terms_) out.add_term(t, f * c);
    return out;
  }

  FreeSection& operator+=(const FreeSection& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
  }

  friend bool operator==(const FreeSection& a, const FreeSection& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Tree, Scalar> terms_;
};

/// Element of T*M (x) FR: component i is the d x^i part.
using CotensorSection = std::vector<FreeSection>;

inline bool is_zero(const CotensorSection& c) {
  for (const auto& s : c)
    if (!s.is_zero()) return false;
  return true;
}

/// "x*y [e1,e2] - e3".
inline std::string render(const Chart& chart, const FreeSection& s) {
  std::string out;
  for (const auto& [t, c] : s.terms()) {
    append_term(out, chart, c, t.str());
  }
  return out.empty() ? "0" : out;
}

/// "dy⊗e2 + x dy⊗[e1,e2]".
inline std::string render(const Chart& chart, const CotensorSection& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::string form = "d" + chart.coordinates()[i] + "⊗";
    for (const auto& [t, coeff] : c[i].terms()) {
      append_term(out, chart, coeff, form + t.str());
    }
  }
  return out.empty() ? "0" : out;
}

/// Depth-truncated free almost Lie algebroid FR^alm_{<=D}(E) or free Lie
/// algebroid FR_{<=D}(E) generated by an anchored bundle.
///
/// Brackets that would exceed the depth bound raise depth_overflow; they are
/// never silently dropped. Instances memoize bracket normal forms and
/// monomial anchors and must not be shared between threads.
class FreeAlgebroid {
 public:
  using section_type = FreeSection;

  FreeAlgebroid(AnchoredBundle bundle, Flavor flavor, int depth)
      : bundle_(std::move(bundle)), flavor_(flavor), depth_(depth),
        table_(static_cast<int>(bundle_.rank()), flavor) {
    if (depth_ < 1) throw invalid_input("depth bound must be positive");
  }

  const AnchoredBundle& bundle() const { return bundle_; }
  const Chart& chart() const { return bundle_.chart(); }
  Flavor flavor() const { return flavor_; }
  int depth() const { return depth_; }
  int generator_count() const { return static_cast<int>(bundle_.rank()); }

  FreeSection zero() const { return {}; }

  /// e_{a+1}.
  FreeSection generator(std::size_t a) const {
    if (a >= bundle_.rank()) throw invalid_input("generator index out of range");
    return FreeSection::monomial(Tree::leaf(static_cast<int>(a) + 1));
  }

  /// Any bracket tree, rewritten into canonical monomials of this flavor.
  FreeSection from_tree(const Tree& t, const Scalar& coefficient = Scalar(1)) const {
    if (t.degree() > depth_) throw depth_overflow(t.str() + " exceeds depth bound " + std::to_string(depth_));
    FreeSection out;
    for (const auto& [m, k] : normalize(t, generator_count(), flavor_)) out.add_term(m, Scalar(k) * coefficient);
    return out;
  }

  /// Canonical monomials of degree 1..max_degree, by degree then basis order.
  std::vector<Tree> basis(int max_degree) const {
    std::vector<Tree> out;
    for (int d = 1; d <= max_degree; ++d)
      for (auto& t : enumerate_basis(generator_count(), d, flavor_)) out.push_back(std::move(t));
    return out;
  }

  void validate(const FreeSection& s) const {
    for (const auto& [t, c] : s.terms()) {
      if (t.degree() > depth_) throw depth_overflow(t.str() + " exceeds depth bound " + std::to_string(depth_));
      check_generators(t, generator_count());
      if (!is_canonical(t, flavor_))
        throw mismatch_error(t.str() + " is not a canonical " + std::string(to_string(flavor_)) + " monomial");
    }
  }

  /// [f u, g v] = f g [u,v] + f rho(u)(g) v - g rho(v)(f) u, summed over terms.
  FreeSection bracket(const FreeSection& a, const FreeSection& b) const {
    for (const auto& [u, f] : a.terms())
      for (const auto& [v, g] : b.terms())
        if (u.degree() + v.degree() > depth_)
          throw depth_overflow("bracket of " + u.str() + " and " + v.str() + " exceeds depth bound " +
                               std::to_string(depth_));
    FreeSection out;
    for (const auto& [u, f] : a.terms()) {
      const TensorField& xu = anchor(u);
      for (const auto& [v, g] : b.terms()) {
        const Scalar fg = f * g;
        for (const auto& [w, k] : table_.bracket(u, v)) out.add_term(w, Scalar(k) * fg);
        out.add_term(v, f * apply_vector(xu, g));
        out.add_term(u, -(g * apply_vector(anchor(v), f)));
      }
    }
    return out;
  }

  /// rho([u,v]) = [rho(u), rho(v)] recursively on monomials.
  const TensorField& anchor(const Tree& t) const {
    auto it = anchors_.find(t);
    if (it != anchors_.end()) return it->second;
    TensorField x = t.is_leaf() ? bundle_.anchor_field(static_cast<std::size_t>(t.generator() - 1))
                                : commutator(anchor(t.left()), anchor(t.right()));
    return anchors_.emplace(t, std::move(x)).first->second;
  }

  TensorField anchor(const FreeSection& s) const {
    TensorField out(chart(), 1, 0);
    for (const auto& [t, c] : s.terms()) out += c * anchor(t);
    return out;
  }

  /// Jac(a,b,c) = [a,[b,c]] + [b,[c,a]] + [c,[a,b]]. In the lie flavor the
  /// result is asserted to vanish.
  FreeSection jacobiator(const FreeSection& a, const FreeSection& b, const FreeSection& c) const {
    FreeSection j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
    if (flavor_ == Flavor::lie && !j.is_zero())
      throw error("Jacobiator does not vanish in the lie flavor: " + render(chart(), j));
    return j;
  }

 private:
  AnchoredBundle bundle_;
  Flavor flavor_;
  int depth_;
  mutable BracketTable table_;
  mutable std::map<Tree, TensorField> anchors_;
};

/// Extension of a connection on E to the free algebroid by
///   nabla [s,s'] = L_s(nabla s') - L_{s'}(nabla s) - nabla_{rho(nabla s)} s' + nabla_{rho(nabla s')} s,
/// computed recursively on canonical monomials and memoized.
class CartanExtension {
 public:
  using section_type = FreeSection;

  CartanExtension(const FreeAlgebroid& algebroid, Connection connection)
      : alg_(algebroid), connection_(std::move(connection)) {
    require_compatible(alg_.bundle(), connection_);
  }

  const FreeAlgebroid& algebroid() const { return alg_; }
  const Connection& base_connection() const { return connection_; }
  const Chart& chart() const { return alg_.chart(); }

  FreeSection zero() const { return {}; }
  FreeSection bracket(const FreeSection& a, const FreeSection& b) const { return alg_.bracket(a, b); }
  TensorField anchor(const FreeSection& s) const { return alg_.anchor(s); }

  /// nabla T for a canonical monomial T.
  const CotensorSection& derivative(const Tree& t) {
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    if (t.degree() > alg_.depth())
      throw depth_overflow(t.str() + " exceeds depth bound " + std::to_string(alg_.depth()));
    CotensorSection d;
    const std::size_t n = chart().dimension();
    if (t.is_leaf()) {
      const auto a = static_cast<std::size_t>(t.generator() - 1);
      for (std::size_t i = 0; i < n; ++i) {
        FreeSection comp;
        for (std::size_t b = 0; b < connection_.rank(); ++b)
          comp.add_term(Tree::leaf(static_cast<int>(b) + 1), connection_.gamma(i, a, b));
        d.push_back(std::move(comp));
      }
    } else {
      d = cartan_bracket_derivative(*this, FreeSection::monomial(t.left()), FreeSection::monomial(t.right()));
    }
    return memo_.emplace(t, std::move(d)).first->second;
  }

  /// nabla(sum f_u u) = sum df_u (x) u + f_u nabla u.
  CotensorSection derivative(const FreeSection& s) {
    const std::size_t n = chart().dimension();
    CotensorSection out(n);
    for (const auto& [t, f] : s.terms()) {
      const CotensorSection& dt = derivative(t);
      for (std::size_t i = 0; i < n; ++i) {
        out[i].add_term(t, differentiate(chart(), f, i));
        out[i] += f * dt[i];
      }
    }
    return out;
  }

  FreeSection covariant_derivative(std::size_t i, const FreeSection& s) { return derivative(s).at(i); }

  FreeSection covariant_derivative(const TensorField& v, const FreeSection& s) {
    const CotensorSection d = derivative(s);
    FreeSection out;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (!v[i].is_zero()) out += v[i] * d[i];
    return out;
  }

  /// S(s, s') in section form; vanishes identically for this extension.
  CotensorSection compatibility_tensor(const FreeSection& s, const FreeSection& t) {
    return sections_compatibility_tensor(*this, s, t);
  }

 private:
  const FreeAlgebroid& alg_;
  Connection connection_;
  std::map<Tree, CotensorSection> memo_;
};

/// Extended connection on T (the monomial form of extend_connection).
inline CotensorSection extend_connection(CartanExtension& ext, const Tree& t) { return ext.derivative(t); }

struct PairResidual {
  Tree left, right;
  CotensorSection residual;
  bool zero = true;
};

/// S(u, v) for all canonical monomial pairs u < v with deg u + deg v <= depth.
inline std::vector<PairResidual> compatibility_sweep(CartanExtension& ext, int depth) {
  std::vector<PairResidual> out;
  const auto basis = ext.algebroid().basis(depth - 1);
  for (std::size_t p = 0; p < basis.size(); ++p)
    for (std::size_t q = p + 1; q < basis.size(); ++q) {
      if (basis[p].degree() + basis[q].degree() > depth) continue;
      PairResidual r{basis[p], basis[q],
                     ext.compatibility_tensor(FreeSection::monomial(basis[p]), FreeSection::monomial(basis[q]))};
      r.zero = is_zero(r.residual);
      out.push_back(std::move(r));
    }
  return out;
}

struct TripleResidual {
  Tree first, second, third;
  CotensorSection residual;
  bool zero = true;
};

/// Covariant constancy of the Jacobiator on frame triples b_i < b_j < b_k of
/// canonical monomials with total degree <= depth:
///   nabla Jac(b_i,b_j,b_k) - [w_k^l (x) Jac(b_i,b_j,b_l) + cycl(ijk)],  nabla b_k = w_k^l (x) b_l.
inline std::vector<TripleResidual> check_jacobiator_covariant_constancy(CartanExtension& ext, int depth) {
  const FreeAlgebroid& alg = ext.algebroid();
  if (depth < 3) return {};
  if (depth > alg.depth()) throw depth_overflow("sweep depth exceeds the algebroid depth bound");
  const std::size_t n = alg.chart().dimension();
  const auto basis = alg.basis(depth - 2);
  auto mono = [](const Tree& t) { return FreeSection::monomial(t); };

  // sum_l w^l Jac(x, y, b_l) for the dx^i component of nabla z
  auto connection_term = [&](const Tree& x, const Tree& y, const Tree& z) {
    const CotensorSection& dz = ext.derivative(z);
    CotensorSection out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [l, w] : dz[i].terms()) out[i] += w * alg.jacobiator(mono(x), mono(y), mono(l));
    return out;
  };

  std::vector<TripleResidual> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      for (std::size_t k = j + 1; k < basis.size(); ++k) {
        const Tree &bi = basis[i], &bj = basis[j], &bk = basis[k];
        if (bi.degree() + bj.degree() + bk.degree() > depth) continue;
        CotensorSection r = ext.derivative(alg.jacobiator(mono(bi), mono(bj), mono(bk)));
        const CotensorSection t1 = connection_term(bi, bj, bk);
        const CotensorSection t2 = connection_term(bj, bk, bi);
        const CotensorSection t3 = connection_term(bk, bi, bj);
        for (std::size_t c = 0; c < n; ++c) r[c] = r[c] - t1[c] - t2[c] - t3[c];
        TripleResidual res{bi, bj, bk, std::move(r)};
        res.zero = is_zero(res.residual);
        out.push_back(std::move(res));
      }
  return out;
}

/// Combined representation of the free algebroid on tensors: slot k uses the
/// E-connection of extension k, xi |-> L_{rho(xi)} - rho(nabla^k xi) on that slot.
inline TensorField fr_representation_apply(const std::vector<CartanExtension*>& slots, const FreeSection& xi,
                                           const TensorField& t) {
  if (slots.size() != static_cast<std::size_t>(t.rank()))
    throw mismatch_error("need " + std::to_string(t.rank()) + " connections for a tensor with " +
                         std::to_string(t.rank()) + " slots, got " + std::to_string(slots.size()));
  if (slots.empty()) throw mismatch_error("fr_representation_apply on a scalar needs an algebroid; use apply_vector");
  const FreeAlgebroid& alg = slots.front()->algebroid();
  alg.validate(xi);
  const TensorField x = alg.anchor(xi);
  std::vector<SlotMatrix> matrices;
  for (CartanExtension* ext : slots) {
    if (&ext->algebroid() != &alg) throw mismatch_error("extensions belong to different free algebroids");
    std::vector<TensorField> w;
    for (const auto& comp : ext->derivative(xi)) w.push_back(alg.anchor(comp));
    matrices.push_back(e_connection_matrix(x, w));
  }
  return derivation_apply(x, matrices, t);
}

/// Single-connection representation applied to every slot; scalars map to rho(xi)(f).
inline TensorField fr_representation_apply(CartanExtension& ext, const FreeSection& xi, const TensorField& t) {
  if (t.rank() == 0)
    return TensorField::scalar(t.chart(), apply_vector(ext.algebroid().anchor(xi), t[0]));
  return fr_representation_apply(std::vector<CartanExtension*>(static_cast<std::size_t>(t.rank()), &ext), xi, t);
}

/// Curvature of the representation on t:
/// rep_{[s,s']} t - rep_s rep_{s'} t + rep_{s'} rep_s t.
inline TensorField representation_curvature(CartanExtension& ext, const FreeSection& s, const FreeSection& s2,
                                            const TensorField& t) {
  const FreeSection b = ext.algebroid().bracket(s, s2);
  return fr_representation_apply(ext, b, t) - fr_representation_apply(ext, s, fr_representation_apply(ext, s2, t)) +
         fr_representation_apply(ext, s2, fr_representation_apply(ext, s, t));
}

}  // namespace falg
