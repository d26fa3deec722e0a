#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "falg/free_algebroid.hpp"
#include "falg/lie_algebroid.hpp"

namespace falg {

/// Connection-preserving anchored-bundle map E -> A given on the frame.
struct AnchoredMorphism {
  AnchoredBundle source;
  Connection source_connection;
  FiniteLieAlgebroid target;
  std::vector<ESection> images;  // phi(e_a), sections of A
};

/// Throws invalid_input unless phi commutes with the anchors and
/// phi(nabla_{d_i} e_a) = nabla-bar_{d_i} phi(e_a).
inline void validate_morphism(const AnchoredMorphism& phi) {
  const std::size_t m = phi.source.rank();
  require_compatible(phi.source, phi.source_connection);
  require_same_chart(phi.source.chart(), phi.target.chart());
  if (phi.images.size() != m) throw invalid_input("morphism needs one image per source generator");
  for (const auto& img : phi.images)
    if (img.rank() != phi.target.rank()) throw invalid_input("morphism image has wrong rank for the target");
  for (std::size_t a = 0; a < m; ++a) {
    const TensorField diff = phi.target.anchor(phi.images[a]) - phi.source.anchor_field(a);
    if (!diff.is_zero())
      throw invalid_input("morphism does not commute with anchors at e" + std::to_string(a + 1) + ": " + render(diff));
    for (std::size_t i = 0; i < phi.source.dimension(); ++i) {
      ESection lhs(phi.target.rank());
      for (std::size_t b = 0; b < m; ++b)
        if (!phi.source_connection.gamma(i, a, b).is_zero())
          lhs += phi.source_connection.gamma(i, a, b) * phi.images[b];
      const ESection rhs = covariant_derivative(phi.target.connection(), i, phi.images[a]);
      if (!(lhs == rhs))
        throw invalid_input("morphism does not preserve connections at e" + std::to_string(a + 1) + " along d" +
                            phi.source.chart().coordinates()[i]);
    }
  }
}

struct MorphismCheck {
  ESection image;
  TensorField anchor_residual;                  // rho_A(phi~(xi)) - rho_FR(xi)
  std::vector<ESection> connection_residuals;   // phi~(nabla~_i xi) - nabla-bar_i phi~(xi)
  bool anchor_ok = true;
  bool connection_ok = true;
};

/// Unique extension phi~ of phi to the free algebroid: phi~([u,v]) = [phi~(u), phi~(v)]_A,
/// C-infinity-linear. Memoizes monomial images; one instance per thread.
class MorphismExtension {
 public:
  MorphismExtension(AnchoredMorphism phi, CartanExtension& ext) : phi_(std::move(phi)), ext_(ext) {
    validate_morphism(phi_);
    if (static_cast<std::size_t>(ext_.algebroid().generator_count()) != phi_.source.rank())
      throw mismatch_error("morphism source rank does not match the free algebroid");
  }

  const AnchoredMorphism& morphism() const { return phi_; }

  const ESection& image(const Tree& t) {
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    ESection img = t.is_leaf() ? phi_.images.at(static_cast<std::size_t>(t.generator() - 1))
                               : phi_.target.bracket(image(t.left()), image(t.right()));
    return memo_.emplace(t, std::move(img)).first->second;
  }

  ESection image(const FreeSection& xi) {
    ESection out(phi_.target.rank());
    for (const auto& [t, f] : xi.terms()) out += f * image(t);
    return out;
  }

  MorphismCheck check(const FreeSection& xi) {
    ext_.algebroid().validate(xi);
    MorphismCheck c;
    c.image = image(xi);
    c.anchor_residual = phi_.target.anchor(c.image) - ext_.algebroid().anchor(xi);
    c.anchor_ok = c.anchor_residual.is_zero();
    const CotensorSection d = ext_.derivative(xi);
    for (std::size_t i = 0; i < d.size(); ++i) {
      ESection r = image(d[i]) - covariant_derivative(phi_.target.connection(), i, c.image);
      if (!r.is_zero()) c.connection_ok = false;
      c.connection_residuals.push_back(std::move(r));
    }
    return c;
  }

 private:
  AnchoredMorphism phi_;
  CartanExtension& ext_;
  std::map<Tree, ESection> memo_;
};

/// phi~(xi), asserting the anchor and connection postconditions.
inline ESection extend_morphism(MorphismExtension& phi, const FreeSection& xi) {
  MorphismCheck c = phi.check(xi);
  if (!c.anchor_ok) throw error("extended morphism does not commute with anchors: " + render(c.anchor_residual));
  if (!c.connection_ok) throw error("extended morphism does not preserve connections");
  return c.image;
}

/// "e2", "x e1 - e4".
inline std::string render(const Chart& chart, const ESection& s) {
  std::string out;
  for (std::size_t a = 0; a < s.rank(); ++a) {
    const Scalar& c = s[a];
    if (c.is_zero()) continue;
    const std::string basis = "e" + std::to_string(a + 1);
    append_term(out, chart, c, basis);
  }
  return out.empty() ? "0" : out;
}

}  // namespace falg
