#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "random_fixtures.hpp"

using namespace falg;
using fixtures::s;

namespace {

FreeSection mono(const char* t) { return FreeSection::monomial(parse_tree(t)); }

// x e1 + y [e1,e2] - e3, and similar, within depth 3 when bracketed once with a generator.
std::vector<FreeSection> sample_sections(const FreeAlgebroid& alg) {
  const Chart& c = alg.chart();
  const std::size_t n = c.dimension();
  const Scalar x = c.coordinate(0), y = c.coordinate(n > 1 ? 1 : 0);
  std::vector<FreeSection> out;
  out.push_back(alg.generator(0));
  out.push_back(x * alg.generator(1));
  out.push_back(y * alg.generator(0) + s(c, "1/(1+x^2)") * alg.generator(1));
  out.push_back(alg.from_tree(parse_tree("[e1,e2]"), x * y));
  return out;
}

}  // namespace

TEST(Bracket, Examples) {
  const FreeAlgebroid alg(fixtures::rotation_bundle(), Flavor::lie, 3);
  const Chart& c = alg.chart();
  EXPECT_EQ(alg.bracket(alg.generator(0), s(c, "x") * alg.generator(1)),
            s(c, "x") * mono("[e1,e2]") + alg.generator(1));
  EXPECT_EQ(render(c, alg.bracket(alg.generator(0), s(c, "x") * alg.generator(1))), "e2 + x [e1,e2]");
  EXPECT_EQ(alg.bracket(s(c, "x") * alg.generator(0), alg.generator(0)), -alg.generator(0));
  EXPECT_THROW(alg.bracket(mono("[e1,e2]"), mono("[e1,e3]")), depth_overflow);
  EXPECT_THROW(alg.from_tree(parse_tree("[[e1,e2],[e1,e3]]")), depth_overflow);
}

TEST(FreeAnchor, Examples) {
  const FreeAlgebroid rot(fixtures::rotation_bundle(), Flavor::lie, 3);
  EXPECT_EQ(render(rot.anchor(mono("[e2,e3]"))), "z ∂y - y ∂z");
  EXPECT_EQ(rot.anchor(s(rot.chart(), "x*y") * rot.generator(0)), fixtures::vec(rot.chart(), {"x*y", "0", "0"}));

  const FreeAlgebroid bump(fixtures::bump_bundle(), Flavor::lie, 4);
  EXPECT_EQ(render(bump.anchor(parse_tree("[e1,e2]"))), "2*x^-3*chi ∂y");
  EXPECT_EQ(render(bump.anchor(parse_tree("[e1,[e1,e2]]"))), "(4*x^-6 - 6*x^-4)*chi ∂y");
  EXPECT_EQ(render(bump.anchor(parse_tree("[e1,[e1,[e1,e2]]]"))), "(8*x^-9 - 36*x^-7 + 24*x^-5)*chi ∂y");
}

TEST(Properties, AnchorMorphismLeibnizAntisymmetry) {
  for (Flavor f : {Flavor::almost, Flavor::lie}) {
    const FreeAlgebroid alg(fixtures::rotation_bundle(), f, 4);
    const Chart& c = alg.chart();
    const auto secs = sample_sections(alg);
    const std::vector<Scalar> fs = {s(c, "x"), s(c, "x*y"), s(c, "1/(1+x^2)")};
    for (const auto& a : secs)
      for (const auto& b : secs) {
        const FreeSection ab = alg.bracket(a, b);
        EXPECT_EQ(alg.anchor(ab), commutator(alg.anchor(a), alg.anchor(b)));
        EXPECT_TRUE((ab + alg.bracket(b, a)).is_zero());
        for (const auto& g : fs) EXPECT_EQ(alg.bracket(a, g * b), g * ab + apply_vector(alg.anchor(a), g) * b);
      }
    // monomial pairs up to degree 4, and the anchor kills the Jacobiator
    const auto basis = alg.basis(3);
    for (const auto& u : basis)
      for (const auto& v : basis)
        if (u.degree() + v.degree() <= 4)
          EXPECT_EQ(alg.anchor(alg.bracket(FreeSection::monomial(u), FreeSection::monomial(v))),
                    commutator(alg.anchor(u), alg.anchor(v)));
    if (f == Flavor::almost) {
      const FreeSection j = alg.jacobiator(alg.generator(0), alg.generator(1), alg.generator(2));
      EXPECT_FALSE(j.is_zero());
      EXPECT_TRUE(alg.anchor(j).is_zero());
    }
  }
}

TEST(Connection, ExtensionExamples) {
  const FreeAlgebroid rot(fixtures::rotation_bundle(), Flavor::lie, 3);
  CartanExtension flat(rot, Connection::flat(rot.chart(), 3));
  for (const auto& t : rot.basis(3)) EXPECT_TRUE(is_zero(flat.derivative(t))) << t.str();
  EXPECT_EQ(render(rot.chart(), flat.derivative(s(rot.chart(), "x") * mono("[e1,e2]"))), "dx⊗[e1,e2]");

  const Chart p = fixtures::plane();
  for (Flavor f : {Flavor::almost, Flavor::lie}) {
    const FreeAlgebroid alg(fixtures::noncartan_bundle(), f, 3);
    CartanExtension ext(alg, fixtures::noncartan_connection(p));
    EXPECT_EQ(render(p, ext.derivative(parse_tree("[e1,e2]"))), "dy⊗e2 + x dy⊗[e1,e2]");
  }
}

TEST(Compatibility, FreeExtensionIsCartan) {
  const Chart p = fixtures::plane();
  random_fixtures::Generator gen(7);
  for (Flavor f : {Flavor::almost, Flavor::lie}) {
    const FreeAlgebroid rot(fixtures::rotation_bundle(), f, 3);
    CartanExtension flat(rot, Connection::flat(rot.chart(), 3));
    for (const auto& r : compatibility_sweep(flat, 3)) EXPECT_TRUE(r.zero);

    const FreeAlgebroid nc(fixtures::noncartan_bundle(), f, 4);
    CartanExtension twisted(nc, fixtures::noncartan_connection(p));
    for (const auto& r : compatibility_sweep(twisted, 4))
      EXPECT_TRUE(r.zero) << r.left.str() << " " << r.right.str() << ": " << render(p, r.residual);

    // random anchor and connection on a rank-2 bundle over the plane
    const AnchoredBundle e(p, {{gen.polynomial(p), gen.polynomial(p)}, {gen.polynomial(p), gen.polynomial(p)}});
    const FreeAlgebroid alg(e, f, 3);
    CartanExtension ext(alg, gen.connection(p, 2));
    for (const auto& r : compatibility_sweep(ext, 3)) EXPECT_TRUE(r.zero);
  }
  // rank 1: S(e, e) = 0
  const FreeAlgebroid one(AnchoredBundle(p, {{s(p, "x"), s(p, "y")}}), Flavor::almost, 2);
  CartanExtension ext1(one, Connection(p, 1));
  EXPECT_TRUE(is_zero(ext1.compatibility_tensor(one.generator(0), one.generator(0))));
}

TEST(Compatibility, FiniteAlgebroidFormulas) {
  const FiniteLieAlgebroid nc = fixtures::noncartan_algebroid();
  const CompatibilityTensor sec = compatibility_tensor_sections(nc);
  const CompatibilityTensor curv = compatibility_tensor_curvature(nc);
  EXPECT_EQ(render_pair(nc.chart(), sec, 0, 1), "dy⊗e2");
  EXPECT_EQ(render_pair(nc.chart(), curv, 0, 1), "dy⊗e2");
  EXPECT_EQ(sec, curv);

  const Chart c = fixtures::space();
  const FiniteLieAlgebroid iso = fixtures::iso3(c);
  EXPECT_TRUE(compatibility_tensor_curvature(iso).is_zero());
  EXPECT_TRUE(compatibility_tensor_sections(iso).is_zero());

  const Chart p = fixtures::plane();
  std::vector<std::vector<std::vector<Scalar>>> zero(2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2)));
  const FiniteLieAlgebroid trivial(p, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2)), zero,
                                   Connection::flat(p, 2));
  EXPECT_TRUE(compatibility_tensor_curvature(trivial).is_zero());

  for (const auto& a : random_fixtures::family(11, 8)) {
    EXPECT_TRUE(check_lie_algebroid_axioms(a).ok);
    EXPECT_EQ(compatibility_tensor_sections(a), compatibility_tensor_curvature(a));
  }
}

TEST(Axioms, Examples) {
  const Chart c = fixtures::space();
  const FiniteLieAlgebroid iso = fixtures::iso3(c);
  const AxiomReport ok = check_lie_algebroid_axioms(iso);
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(ok.checks.size(), 6u * 7u / 2u * 6u + 15u + 20u);

  const AxiomReport bad = check_lie_algebroid_axioms(iso.perturbed(3, 4, 5, Scalar(1)));
  EXPECT_FALSE(bad.ok);
  bool jacobi = false;
  for (const auto& v : bad.violations) jacobi = jacobi || v.rfind("jacobi: Jac(e", 0) == 0;
  EXPECT_TRUE(jacobi);
  EXPECT_EQ(bad.violations.front().rfind("anchor morphism: rho([e4,e5])", 0), 0u) << bad.violations.front();

  const Chart p = fixtures::plane();
  std::vector<std::vector<std::vector<Scalar>>> zero(2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2)));
  EXPECT_TRUE(check_lie_algebroid_axioms(
                  FiniteLieAlgebroid(p, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2)), zero,
                                     Connection::flat(p, 2)))
                  .ok);
}

TEST(Jacobiator, Examples) {
  const FreeAlgebroid alg(fixtures::rotation_bundle(), Flavor::almost, 4);
  const Chart& c = alg.chart();
  const FreeSection e1 = alg.generator(0), e2 = alg.generator(1), e3 = alg.generator(2);
  const FreeSection j = alg.jacobiator(e1, e2, e3);
  EXPECT_EQ(j.terms().size(), 3u);
  for (const auto& [t, k] : j.terms()) {
    EXPECT_EQ(t.degree(), 3);
    EXPECT_TRUE(is_canonical(t, Flavor::almost));
  }
  EXPECT_TRUE(alg.jacobiator(e1, e1, e2).is_zero());
  EXPECT_EQ(alg.jacobiator(s(c, "x") * e1, e2, e3), s(c, "x") * j);
  EXPECT_EQ(alg.jacobiator(e1, s(c, "y*z") * e2, e3), s(c, "y*z") * j);
  EXPECT_EQ(alg.jacobiator(e2, e1, e3), -j);

  const FreeAlgebroid lie(fixtures::rotation_bundle(), Flavor::lie, 4);
  EXPECT_TRUE(lie.jacobiator(s(c, "x") * lie.generator(0), lie.generator(1), lie.generator(2)).is_zero());
}

TEST(Jacobiator, CovariantlyConstant) {
  const Chart p = fixtures::plane();
  struct Case {
    AnchoredBundle bundle;
    Connection connection;
  };
  const std::vector<Case> cases = {
      {fixtures::rotation_bundle(), Connection::flat(fixtures::space(), 3)},
      {fixtures::bump_bundle(), Connection::flat(fixtures::bump_plane(), 2)},
      {fixtures::noncartan_bundle(), fixtures::noncartan_connection(p)},
  };
  for (const auto& k : cases)
    for (Flavor f : {Flavor::almost, Flavor::lie}) {
      const FreeAlgebroid alg(k.bundle, f, 4);
      CartanExtension ext(alg, k.connection);
      const auto res = check_jacobiator_covariant_constancy(ext, 4);
      EXPECT_FALSE(res.empty());
      for (const auto& r : res) EXPECT_TRUE(r.zero) << render(alg.chart(), r.residual);
    }
}

TEST(Representation, ExamplesAndInvariance) {
  const FreeAlgebroid alg(fixtures::rotation_bundle(), Flavor::lie, 3);
  const Chart& c = alg.chart();
  CartanExtension ext(alg, Connection::flat(c, 3));
  const TensorField g = fixtures::metric(c);
  EXPECT_TRUE(fr_representation_apply(ext, mono("[e2,e3]"), g).is_zero());
  for (const auto& t : alg.basis(3)) EXPECT_TRUE(fr_representation_apply(ext, FreeSection::monomial(t), g).is_zero());

  // on generators it is the combined E-connection
  TensorField t(c, 1, 1);
  t.at({0, 1}) = s(c, "x*z");
  t.at({2, 2}) = s(c, "y");
  const std::vector<Connection> two(2, Connection::flat(c, 3));
  for (std::size_t a = 0; a < 3; ++a)
    EXPECT_EQ(fr_representation_apply(ext, alg.generator(a), t),
              combined_e_connection(alg.bundle(), two, ESection::basis(3, a), t));
}

TEST(Representation, FlatWheneverCartan) {
  // Free extensions are Cartan for any input connection, so the representation is flat.
  const Chart p = fixtures::plane();
  const FreeAlgebroid alg(fixtures::noncartan_bundle(), Flavor::lie, 3);
  CartanExtension ext(alg, fixtures::noncartan_connection(p));
  TensorField t(p, 0, 2);
  t.at({0, 1}) = s(p, "x*y");
  t.at({1, 1}) = Scalar(1);
  const std::vector<TensorField> ts = {t, TensorField::coordinate_form(p, 1), TensorField::coordinate_vector(p, 1)};
  const auto basis = alg.basis(2);
  for (const auto& tt : ts)
    for (const auto& u : basis)
      for (const auto& v : basis)
        if (u.degree() + v.degree() <= 3)
          EXPECT_TRUE(representation_curvature(ext, FreeSection::monomial(u), FreeSection::monomial(v), tt).is_zero())
              << u.str() << " " << v.str() << " on " << render(tt);
}

TEST(Morphism, Examples) {
  const Chart c = fixtures::space();
  const FreeAlgebroid alg(fixtures::rotation_bundle(), Flavor::lie, 4);
  CartanExtension ext(alg, Connection::flat(c, 3));
  const FiniteLieAlgebroid iso = fixtures::iso3(c);
  std::vector<ESection> images = {ESection::basis(6, 0), ESection::basis(6, 3), ESection::basis(6, 4)};
  MorphismExtension phi({alg.bundle(), Connection::flat(c, 3), iso, images}, ext);

  EXPECT_EQ(extend_morphism(phi, mono("[e1,e2]")), ESection::basis(6, 1));
  EXPECT_EQ(iso.anchor(extend_morphism(phi, mono("[e1,e2]"))), TensorField::coordinate_vector(c, 1));
  EXPECT_EQ(extend_morphism(phi, alg.from_tree(parse_tree("[e2,[e1,e2]]"))), images[0]);
  for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(extend_morphism(phi, alg.generator(a)), images[a]);

  for (const auto& t : alg.basis(3)) {
    const MorphismCheck k = phi.check(FreeSection::monomial(t));
    EXPECT_TRUE(k.anchor_ok && k.connection_ok) << t.str();
  }
  const auto secs = sample_sections(alg);
  for (const auto& a : secs)
    for (const auto& b : secs)
      EXPECT_EQ(extend_morphism(phi, alg.bracket(a, b)), iso.bracket(phi.image(a), phi.image(b)));

  std::vector<ESection> wrong = images;
  wrong[1] = ESection::basis(6, 5);
  EXPECT_THROW(MorphismExtension({alg.bundle(), Connection::flat(c, 3), iso, wrong}, ext), invalid_input);
}
