#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "falg/chart.hpp"

namespace falg {

/// Dense (r,s)-tensor field on a chart. Components are stored row-major over
/// the multi-index (i1..ir; j1..js), contravariant indices first, each in 0..n-1.
class TensorField {
 public:
  TensorField() = default;

  TensorField(Chart chart, int contravariant, int covariant)
      : chart_(std::move(chart)), r_(contravariant), s_(covariant) {
    if (r_ < 0 || s_ < 0) throw mismatch_error("negative tensor type");
    std::size_t size = 1;
    for (int k = 0; k < r_ + s_; ++k) size *= chart_.dimension();
    components_.assign(size, Scalar{});
  }

  static TensorField scalar(const Chart& chart, Scalar f) {
    TensorField t(chart, 0, 0);
    t.components_[0] = std::move(f);
    return t;
  }

  static TensorField vector_field(const Chart& chart, std::vector<Scalar> components) {
    if (components.size() != chart.dimension()) throw mismatch_error("vector field needs n components");
    TensorField t(chart, 1, 0);
    t.components_ = std::move(components);
    return t;
  }

  static TensorField one_form(const Chart& chart, std::vector<Scalar> components) {
    if (components.size() != chart.dimension()) throw mismatch_error("1-form needs n components");
    TensorField t(chart, 0, 1);
    t.components_ = std::move(components);
    return t;
  }

  static TensorField coordinate_vector(const Chart& chart, std::size_t i) {
    TensorField t(chart, 1, 0);
    t.components_.at(i) = Scalar(1);
    return t;
  }

  static TensorField coordinate_form(const Chart& chart, std::size_t i) {
    TensorField t(chart, 0, 1);
    t.components_.at(i) = Scalar(1);
    return t;
  }

  const Chart& chart() const { return chart_; }
  std::size_t dimension() const { return chart_.dimension(); }
  int contravariant() const { return r_; }
  int covariant() const { return s_; }
  int rank() const { return r_ + s_; }
  std::size_t size() const { return components_.size(); }

  const Scalar& operator[](std::size_t flat) const { return components_[flat]; }
  Scalar& operator[](std::size_t flat) { return components_[flat]; }
  const std::vector<Scalar>& components() const { return components_; }

  std::size_t flat_index(std::span<const std::size_t> index) const {
    if (index.size() != static_cast<std::size_t>(rank())) throw mismatch_error("wrong number of tensor indices");
    std::size_t f = 0;
    for (std::size_t k : index) {
      if (k >= dimension()) throw mismatch_error("tensor index out of range");
      f = f * dimension() + k;
    }
    return f;
  }

  std::vector<std::size_t> multi_index(std::size_t flat) const {
    std::vector<std::size_t> index(static_cast<std::size_t>(rank()));
    for (std::size_t k = index.size(); k-- > 0;) {
      index[k] = flat % dimension();
      flat /= dimension();
    }
    return index;
  }

  const Scalar& at(std::span<const std::size_t> index) const { return components_[flat_index(index)]; }
  Scalar& at(std::span<const std::size_t> index) { return components_[flat_index(index)]; }
  const Scalar& at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  Scalar& at(std::initializer_list<std::size_t> index) {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }

  bool is_zero() const {
    for (const auto& c : components_)
      if (!c.is_zero()) return false;
    return true;
  }

  bool same_shape(const TensorField& o) const { return r_ == o.r_ && s_ == o.s_ && chart_.same_as(o.chart_); }

  TensorField operator-() const {
    TensorField t = *this;
    for (auto& c : t.components_) c = -c;
    return t;
  }

  friend TensorField operator+(const TensorField& a, const TensorField& b) {
    a.require_shape(b);
    TensorField t = a;
    for (std::size_t k = 0; k < t.size(); ++k) t.components_[k] += b.components_[k];
    return t;
  }

  friend TensorField operator-(const TensorField& a, const TensorField& b) {
    a.require_shape(b);
    TensorField t = a;
    for (std::size_t k = 0; k < t.size(); ++k) t.components_[k] -= b.components_[k];
    return t;
  }

  TensorField& operator+=(const TensorField& o) { return *this = *this + o; }
  TensorField& operator-=(const TensorField& o) { return *this = *this - o; }

  friend TensorField operator*(const Scalar& f, const TensorField& t) {
    TensorField out = t;
    for (auto& c : out.components_) c = f * c;
    return out;
  }

  friend bool operator==(const TensorField& a, const TensorField& b) {
    return a.same_shape(b) && a.components_ == b.components_;
  }

  void require_shape(const TensorField& o) const {
    require_same_chart(chart_, o.chart_);
    if (r_ != o.r_ || s_ != o.s_) throw mismatch_error("tensor type mismatch");
  }

 private:
  Chart chart_;
  int r_ = 0;
  int s_ = 0;
  std::vector<Scalar> components_;
};

inline TensorField add(const TensorField& a, const TensorField& b) { return a + b; }
inline TensorField scale(const TensorField& t, const Scalar& f) { return f * t; }

/// v(f) = v^i d_i f.
inline Scalar apply_vector(const TensorField& v, const Scalar& f) {
  if (v.contravariant() != 1 || v.covariant() != 0) throw mismatch_error("expected a vector field");
  Scalar out;
  for (std::size_t i = 0; i < v.dimension(); ++i)
    if (!v[i].is_zero()) out += v[i] * differentiate(v.chart(), f, i);
  return out;
}

/// Componentwise tensor product; slot order is (a contra, b contra; a cov, b cov).
inline TensorField tensor_product(const TensorField& a, const TensorField& b) {
  require_same_chart(a.chart(), b.chart());
  TensorField out(a.chart(), a.contravariant() + b.contravariant(), a.covariant() + b.covariant());
  const int ra = a.contravariant();
  const int rb = b.contravariant();
  for (std::size_t fa = 0; fa < a.size(); ++fa) {
    if (a[fa].is_zero()) continue;
    const auto ia = a.multi_index(fa);
    for (std::size_t fb = 0; fb < b.size(); ++fb) {
      if (b[fb].is_zero()) continue;
      const auto ib = b.multi_index(fb);
      std::vector<std::size_t> idx;
      idx.insert(idx.end(), ia.begin(), ia.begin() + ra);
      idx.insert(idx.end(), ib.begin(), ib.begin() + rb);
      idx.insert(idx.end(), ia.begin() + ra, ia.end());
      idx.insert(idx.end(), ib.begin() + rb, ib.end());
      out.at(idx) = a[fa] * b[fb];
    }
  }
  return out;
}

/// Vector-field bracket [v,w]^i = v^j d_j w^i - w^j d_j v^i.
inline TensorField commutator(const TensorField& v, const TensorField& w) {
  require_same_chart(v.chart(), w.chart());
  if (v.rank() != 1 || v.contravariant() != 1 || w.rank() != 1 || w.contravariant() != 1)
    throw mismatch_error("commutator expects vector fields");
  TensorField out(v.chart(), 1, 0);
  for (std::size_t i = 0; i < v.dimension(); ++i) out[i] = apply_vector(v, w[i]) - apply_vector(w, v[i]);
  return out;
}

/// n x n matrix of scalars, entry (i,k) at i*n+k.
using SlotMatrix = std::vector<Scalar>;

/// Jacobian d_k X^i of a vector field as a slot matrix.
inline SlotMatrix jacobian(const TensorField& x) {
  const std::size_t n = x.dimension();
  SlotMatrix m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m[i * n + k] = differentiate(x.chart(), x[i], k);
  return m;
}

/// Derivation X(t) - sum_contra A_p t + sum_cov A_q^T t, with one endomorphism
/// A of TM per slot. With A = dX on every slot this is the Lie derivative.
inline TensorField derivation_apply(const TensorField& x, const std::vector<SlotMatrix>& slots, const TensorField& t) {
  require_same_chart(x.chart(), t.chart());
  if (slots.size() != static_cast<std::size_t>(t.rank())) throw mismatch_error("slot/endomorphism count mismatch");
  const std::size_t n = t.dimension();
  TensorField out(t.chart(), t.contravariant(), t.covariant());
  for (std::size_t f = 0; f < t.size(); ++f) out[f] = apply_vector(x, t[f]);
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f].is_zero()) continue;
    // scatter the contribution of component t[f] into every slot
    auto idx = t.multi_index(f);
    for (int p = 0; p < t.rank(); ++p) {
      const SlotMatrix& a = slots[static_cast<std::size_t>(p)];
      const std::size_t k = idx[static_cast<std::size_t>(p)];
      const bool contra = p < t.contravariant();
      for (std::size_t i = 0; i < n; ++i) {
        // contra: out[..i..] -= A^i_k t[..k..];  cov: out[..i..] += A^k_i t[..k..]
        const Scalar& coeff = contra ? a[i * n + k] : a[k * n + i];
        if (coeff.is_zero()) continue;
        idx[static_cast<std::size_t>(p)] = i;
        Scalar& target = out.at(idx);
        if (contra) target -= coeff * t[f];
        else target += coeff * t[f];
      }
      idx[static_cast<std::size_t>(p)] = k;
    }
  }
  return out;
}

/// Standard Lie derivative L_v t for any tensor type.
inline TensorField lie_derivative(const TensorField& v, const TensorField& t) {
  require_same_chart(v.chart(), t.chart());
  if (v.contravariant() != 1 || v.covariant() != 0) throw mismatch_error("lie_derivative expects a vector field");
  if (t.rank() == 0) return TensorField::scalar(t.chart(), apply_vector(v, t[0]));
  return derivation_apply(v, std::vector<SlotMatrix>(static_cast<std::size_t>(t.rank()), jacobian(v)), t);
}

/// Contracts v into the first covariant slot: (r,s) -> (r,s-1).
inline TensorField insert(const TensorField& v, const TensorField& t) {
  require_same_chart(v.chart(), t.chart());
  if (v.contravariant() != 1 || v.covariant() != 0) throw mismatch_error("insert expects a vector field");
  if (t.covariant() < 1) throw mismatch_error("insert needs a covariant slot");
  TensorField out(t.chart(), t.contravariant(), t.covariant() - 1);
  const auto slot = static_cast<std::size_t>(t.contravariant());
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f].is_zero()) continue;
    auto idx = t.multi_index(f);
    const std::size_t k = idx[slot];
    if (v[k].is_zero()) continue;
    idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(slot));
    out.at(idx) += v[k] * t[f];
  }
  return out;
}

/// omega(v) for a 1-form and a vector field.
inline Scalar pairing(const TensorField& omega, const TensorField& v) { return insert(v, omega)[0]; }

/// Sum over pairs (w', v) of (i_v omega) w'; the contraction i_{w' (x) v} omega.
inline TensorField insert_mixed(const std::vector<std::pair<TensorField, TensorField>>& pairs, const TensorField& omega) {
  if (omega.contravariant() != 0 || omega.covariant() != 1) throw mismatch_error("insert_mixed expects a 1-form");
  TensorField out(omega.chart(), 0, 1);
  for (const auto& [form, vec] : pairs) {
    if (form.contravariant() != 0 || form.covariant() != 1) throw mismatch_error("insert_mixed pair needs a 1-form");
    out += pairing(omega, vec) * form;
  }
  return out;
}

/// e.g. "z ∂y - y ∂z", "dx⊗dx + dy⊗dy", "(x + y) ∂x⊗dz".
inline std::string render(const TensorField& t) {
  const Chart& chart = t.chart();
  if (t.rank() == 0) return render(chart, t[0]);
  std::string out;
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f].is_zero()) continue;
    const auto idx = t.multi_index(f);
    std::string basis;
    for (std::size_t p = 0; p < idx.size(); ++p) {
      if (p) basis += "⊗";
      basis += (static_cast<int>(p) < t.contravariant() ? "∂" : "d") + chart.coordinates()[idx[p]];
    }
    append_term(out, chart, t[f], basis);
  }
  return out.empty() ? "0" : out;
}

}  // namespace falg
