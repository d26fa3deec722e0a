#pragma once

#include <cstddef>
#include <vector>

#include "falg/tensor.hpp"

namespace falg {

// Generic connection calculus over an almost Lie algebroid given in terms of
// sections. `Algebroid` provides
//
//   using section_type;                // supports +, -, Scalar * section
//   const Chart& chart() const;
//   section_type zero() const;
//   section_type bracket(const section_type&, const section_type&);
//   TensorField anchor(const section_type&);
//   std::vector<section_type> derivative(const section_type&);  // nabla_{d_i} s, i = 0..n-1
//
// A T*M-valued section is stored as its n components along dx^0..dx^{n-1}.

template <class Algebroid>
using cotensor_t = std::vector<typename Algebroid::section_type>;

/// Module Lie derivative L_s(w (x) s') = L_{rho(s)} w (x) s' + w (x) [s, s'].
/// Component j: sum_i d_j(rho(s)^i) theta_i + [s, theta_j].
template <class Algebroid>
cotensor_t<Algebroid> module_lie_derivative(Algebroid& alg, const typename Algebroid::section_type& s,
                                            const cotensor_t<Algebroid>& theta) {
  const Chart& chart = alg.chart();
  const std::size_t n = chart.dimension();
  const TensorField x = alg.anchor(s);
  cotensor_t<Algebroid> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto comp = alg.bracket(s, theta[j]);
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar d = differentiate(chart, x[i], j);
      if (!d.is_zero()) comp = comp + d * theta[i];
    }
    out.push_back(std::move(comp));
  }
  return out;
}

/// nabla_{rho(theta)} t for theta in T*M (x) A, given nabla t as `dt`:
/// component j is sum_k rho(theta_j)^k dt_k.
template <class Algebroid>
cotensor_t<Algebroid> derivative_along_anchor(Algebroid& alg, const cotensor_t<Algebroid>& theta,
                                              const cotensor_t<Algebroid>& dt) {
  const std::size_t n = alg.chart().dimension();
  cotensor_t<Algebroid> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const TensorField w = alg.anchor(theta[j]);
    auto comp = alg.zero();
    for (std::size_t k = 0; k < n; ++k)
      if (!w[k].is_zero()) comp = comp + w[k] * dt[k];
    out.push_back(std::move(comp));
  }
  return out;
}

/// L_s(nabla t) - L_t(nabla s) - nabla_{rho(nabla s)} t + nabla_{rho(nabla t)} s.
/// On a free algebroid this defines the extended connection on [s, t].
template <class Algebroid>
cotensor_t<Algebroid> cartan_bracket_derivative(Algebroid& alg, const typename Algebroid::section_type& s,
                                                const typename Algebroid::section_type& t) {
  const cotensor_t<Algebroid> ds = alg.derivative(s);
  const cotensor_t<Algebroid> dt = alg.derivative(t);
  const auto lst = module_lie_derivative(alg, s, dt);
  const auto lts = module_lie_derivative(alg, t, ds);
  const auto along_s = derivative_along_anchor(alg, ds, dt);
  const auto along_t = derivative_along_anchor(alg, dt, ds);
  cotensor_t<Algebroid> out;
  out.reserve(lst.size());
  for (std::size_t j = 0; j < lst.size(); ++j) out.push_back(lst[j] - lts[j] - along_s[j] + along_t[j]);
  return out;
}

/// Compatibility tensor in section form:
/// S(s,t) = L_s(nabla t) - L_t(nabla s) - nabla_{rho(nabla s)} t + nabla_{rho(nabla t)} s - nabla [s,t].
template <class Algebroid>
cotensor_t<Algebroid> sections_compatibility_tensor(Algebroid& alg, const typename Algebroid::section_type& s,
                                                    const typename Algebroid::section_type& t) {
  cotensor_t<Algebroid> out = cartan_bracket_derivative(alg, s, t);
  const cotensor_t<Algebroid> db = alg.derivative(alg.bracket(s, t));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = out[j] - db[j];
  return out;
}

}  // namespace falg
