#include <gtest/gtest.h>

#include <vector>

#include "fixtures.hpp"

using namespace falg;
using fixtures::s;
using fixtures::vec;

TEST(Anchor, Examples) {
  const AnchoredBundle e = fixtures::rotation_bundle();
  const Chart& c = e.chart();
  EXPECT_EQ(anchor_apply(e, ESection::basis(3, 0)), TensorField::coordinate_vector(c, 0));
  EXPECT_EQ(anchor_apply(e, s(c, "x") * ESection::basis(3, 0)), vec(c, {"x", "0", "0"}));
  const AnchoredBundle b = fixtures::bump_bundle();
  EXPECT_EQ(render(anchor_apply(b, ESection::basis(2, 1))), "chi ∂y");
  EXPECT_THROW(anchor_apply(e, ESection::basis(2, 0)), mismatch_error);
}

TEST(CovariantDerivative, Examples) {
  const AnchoredBundle e = fixtures::rotation_bundle();
  const Chart& c = e.chart();
  const Connection flat = Connection::flat(c, 3);
  for (std::size_t a = 0; a < 3; ++a)
    for (const auto& d : full_derivative(flat, ESection::basis(3, a))) EXPECT_TRUE(d.is_zero());
  const auto d = full_derivative(flat, s(c, "x") * ESection::basis(3, 0));
  EXPECT_EQ(d[0], ESection::basis(3, 0));
  EXPECT_TRUE(d[1].is_zero());
  EXPECT_TRUE(d[2].is_zero());

  const Chart p = fixtures::plane();
  const Connection twisted = fixtures::noncartan_connection(p);
  EXPECT_TRUE(covariant_derivative(twisted, TensorField::coordinate_vector(p, 0), ESection::basis(2, 1)).is_zero());
  EXPECT_EQ(covariant_derivative(twisted, 1, ESection::basis(2, 1)), s(p, "x") * ESection::basis(2, 1));
}

TEST(Curvature, Examples) {
  EXPECT_TRUE(curvature(Connection::flat(fixtures::space(), 3)).is_zero());

  const Chart p = fixtures::plane();
  const Curvature f = curvature(fixtures::noncartan_connection(p));
  EXPECT_EQ(f(0, 1, 1, 1), Scalar(1));
  EXPECT_EQ(f(1, 0, 1, 1), Scalar(-1));
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) nonzero += f(i, j, a, b).is_zero() ? 0 : 1;
  EXPECT_EQ(nonzero, 2u);

  // rank 1, Gamma = d(x^2 y): exact, hence flat
  Connection exact(p, 1);
  exact.gamma(0, 0, 0) = s(p, "2*x*y");
  exact.gamma(1, 0, 0) = s(p, "x^2");
  EXPECT_TRUE(curvature(exact).is_zero());
}

TEST(EConnection, Examples) {
  const AnchoredBundle e = fixtures::rotation_bundle();
  const Chart& c = e.chart();
  const Connection flat = Connection::flat(c, 3);
  EXPECT_TRUE(e_connection_apply(e, flat, ESection::basis(3, 0), TensorField::coordinate_vector(c, 1)).is_zero());
  EXPECT_TRUE(e_connection_apply(e, flat, ESection::basis(3, 1), fixtures::metric(c)).is_zero());

  // rho(e1) = dx, rho(e2) = dy, nabla e1 = dx (x) e2
  const Chart p = fixtures::plane();
  const AnchoredBundle b(p, fixtures::matrix(p, {{"1", "0"}, {"0", "1"}}));
  Connection conn(p, 2);
  conn.gamma(0, 0, 1) = Scalar(1);
  EXPECT_EQ(e_connection_apply(b, conn, ESection::basis(2, 0), TensorField::coordinate_vector(p, 0)),
            vec(p, {"0", "-1"}));
  EXPECT_EQ(e_connection_apply(b, conn, ESection::basis(2, 0), TensorField::scalar(p, s(p, "x*y"))),
            TensorField::scalar(p, s(p, "y")));
}

TEST(Combined, Examples) {
  const AnchoredBundle e = fixtures::rotation_bundle();
  const Chart& c = e.chart();
  const std::vector<Connection> two(2, Connection::flat(c, 3));
  EXPECT_TRUE(combined_e_connection(e, two, ESection::basis(3, 1), fixtures::metric(c)).is_zero());
  EXPECT_TRUE(combined_e_connection(e, {}, ESection::basis(3, 1), TensorField::scalar(c, Scalar(1))).is_zero());

  TensorField dxdx(c, 0, 2);
  dxdx.at({0, 0}) = Scalar(1);
  TensorField expected(c, 0, 2);
  expected.at({0, 1}) = Scalar(-1);
  expected.at({1, 0}) = Scalar(-1);
  EXPECT_EQ(combined_e_connection(e, two, ESection::basis(3, 1), dxdx), expected);
  EXPECT_THROW(combined_e_connection(e, {Connection::flat(c, 3)}, ESection::basis(3, 1), dxdx), mismatch_error);

  EXPECT_TRUE(check_compatibility(e, two, fixtures::metric(c)).compatible);
  const CompatibilityReport bad = check_compatibility(e, two, dxdx);
  EXPECT_FALSE(bad.compatible);
  EXPECT_TRUE(bad.residuals[0].is_zero());
  EXPECT_FALSE(bad.residuals[1].is_zero());
  EXPECT_TRUE(check_compatibility(e, two, TensorField(c, 0, 2)).compatible);
}

namespace {

// A non-flat, non-trivial bundle for the invariant sweeps.
struct Sample {
  Chart chart = fixtures::space();
  AnchoredBundle bundle{chart, fixtures::matrix(chart, {{"1", "y", "0"}, {"z", "0", "x^2"}})};
  Connection conn = [this] {
    Connection c(chart, 2);
    c.gamma(0, 0, 1) = s(chart, "y");
    c.gamma(2, 1, 1) = s(chart, "x*z");
    c.gamma(1, 1, 0) = Scalar(2);
    return c;
  }();
};

}  // namespace

TEST(Properties, LinearityDerivationDuality) {
  Sample d;
  const Chart& c = d.chart;
  const std::vector<Scalar> fs = {s(c, "x"), s(c, "x*y"), s(c, "1/(1+x^2)")};
  const TensorField v = vec(c, {"y", "x*z", "1"});
  const TensorField w = fixtures::form(c, {"z", "1", "x*y"});
  TensorField t(c, 1, 1);
  t.at({0, 2}) = s(c, "x");
  t.at({1, 1}) = s(c, "y*z");
  const std::vector<TensorField> ts = {v, w, t};
  const ESection e1 = ESection::basis(2, 0), e2 = ESection::basis(2, 1);
  const ESection sec = s(c, "y") * e1 + s(c, "x^2") * e2;

  // R-linear in s; for s -> f s on vector fields the defect is -2 v(f) rho(s)
  EXPECT_EQ(e_connection_apply(d.bundle, d.conn, Scalar(3) * sec + e2, t),
            Scalar(3) * e_connection_apply(d.bundle, d.conn, sec, t) + e_connection_apply(d.bundle, d.conn, e2, t));
  for (const auto& f : fs)
    EXPECT_EQ(e_connection_apply(d.bundle, d.conn, f * sec, v),
              f * e_connection_apply(d.bundle, d.conn, sec, v) -
                  Scalar(2) * apply_vector(v, f) * anchor_apply(d.bundle, sec));

  for (const auto& t1 : ts)
    for (const auto& t2 : ts)
      EXPECT_EQ(e_connection_apply(d.bundle, d.conn, sec, tensor_product(t1, t2)),
                tensor_product(e_connection_apply(d.bundle, d.conn, sec, t1), t2) +
                    tensor_product(t1, e_connection_apply(d.bundle, d.conn, sec, t2)));

  const Scalar lhs = e_connection_apply(d.bundle, d.conn, sec, TensorField::scalar(c, pairing(w, v)))[0];
  const Scalar rhs = pairing(e_connection_apply(d.bundle, d.conn, sec, w), v) +
                     pairing(w, e_connection_apply(d.bundle, d.conn, sec, v));
  EXPECT_EQ(lhs, rhs);
}

TEST(Properties, OneFormMatchesDisplayedRule) {
  // E-nabla_s w = L_{rho(s)} w + i_{rho(nabla s)} w
  Sample d;
  const Chart& c = d.chart;
  const TensorField w = fixtures::form(c, {"z", "1", "x*y"});
  const ESection sec = s(c, "y") * ESection::basis(2, 0) + ESection::basis(2, 1);
  std::vector<std::pair<TensorField, TensorField>> pairs;
  const auto nabla = full_derivative(d.conn, sec);
  for (std::size_t i = 0; i < 3; ++i)
    pairs.emplace_back(TensorField::coordinate_form(c, i), anchor_apply(d.bundle, nabla[i]));
  EXPECT_EQ(e_connection_apply(d.bundle, d.conn, sec, w),
            lie_derivative(anchor_apply(d.bundle, sec), w) + insert_mixed(pairs, w));
}

TEST(Properties, CurvatureAntisymmetric) {
  Sample d;
  const Curvature f = curvature(d.conn);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) EXPECT_EQ(f(i, j, a, b), -f(j, i, a, b));
}
