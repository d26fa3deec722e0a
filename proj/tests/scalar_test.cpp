#include <gtest/gtest.h>

#include <vector>

#include "fixtures.hpp"

using namespace falg;
using fixtures::s;

TEST(Parse, CancelsToZero) { EXPECT_TRUE(s(fixtures::plane(), "x - x").is_zero()); }

TEST(Parse, RationalSumNormalizes) {
  const Chart c = fixtures::plane();
  EXPECT_EQ(s(c, "1/(1-x) + 1/(1+x)"), s(c, "2/(1-x^2)"));
  EXPECT_EQ(s(c, "1/(1-x) + 1/(1+x)"), Scalar(2) / s(c, "1 - x^2"));
}

TEST(Parse, GeneratorIsDegreeOneMonomial) {
  const Chart c = fixtures::bump_plane();
  const Scalar chi = s(c, "chi");
  EXPECT_TRUE(chi.is_polynomial());
  EXPECT_TRUE(chi.numerator().is_monomial());
  EXPECT_EQ(chi.numerator().leading().monomial.degree, 1u);
  EXPECT_EQ(chi, Scalar::variable(2));
}

TEST(Parse, PrecedenceAndUnaryMinus) {
  const Chart c = fixtures::plane();
  EXPECT_EQ(s(c, "1 + 2*3"), Scalar(7));
  EXPECT_EQ(s(c, "-2^2"), Scalar(-4));
  EXPECT_EQ(s(c, "(x+1)^2"), s(c, "x^2 + 2*x + 1"));
  EXPECT_EQ(s(c, "x^(-2)"), Scalar(1) / s(c, "x^2"));
  EXPECT_EQ(s(c, "x^-2"), s(c, "x^(-2)"));
  EXPECT_EQ(s(c, "1/2 + 1/3"), Scalar(Rational(5, 6)));
  EXPECT_EQ(s(c, "  x*  y "), s(c, "y*x"));
  EXPECT_EQ(s(c, "x/y/x"), s(c, "1/y"));
}

TEST(Parse, Errors) {
  const Chart c = fixtures::plane();
  EXPECT_THROW(s(c, "x +"), parse_error);
  EXPECT_THROW(s(c, "(x"), parse_error);
  EXPECT_THROW(s(c, "w"), unknown_symbol);
  EXPECT_THROW(s(c, "1/(x - x)"), division_by_zero);
  EXPECT_THROW(s(c, "0^-1"), division_by_zero);
  try {
    s(c, "x + * y");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Arith, Examples) {
  const Chart c = fixtures::plane();
  const Scalar x = s(c, "x");
  EXPECT_TRUE((x + (-x)).is_zero());
  EXPECT_EQ((Scalar(1) / x) * x, Scalar(1));
  EXPECT_EQ(s(c, "x^2 - y^2") / s(c, "x - y"), s(c, "x + y"));
  EXPECT_EQ(s(c, "x + y").pow(-2) * s(c, "x^2 + 2*x*y + y^2"), Scalar(1));
  EXPECT_THROW(x / Scalar(), division_by_zero);
}

TEST(Arith, CanonicalDenominatorIsMonic) {
  const Chart c = fixtures::plane();
  const Scalar q = s(c, "x / (2*x*y + 4*y)");
  EXPECT_EQ(q.denominator().leading().coefficient, Rational(1));
  EXPECT_EQ(q, s(c, "(x/2) / (x*y + 2*y)"));
}

TEST(IsZero, Examples) {
  const Chart c = fixtures::plane();
  EXPECT_TRUE(Scalar().is_zero());
  EXPECT_TRUE(s(c, "(x+y)^2 - x^2 - 2*x*y - y^2").is_zero());
  EXPECT_FALSE(s(c, "x - y").is_zero());
}

TEST(Differentiate, Examples) {
  const Chart p = fixtures::plane();
  EXPECT_EQ(differentiate(p, s(p, "x^2*y"), "x"), s(p, "2*x*y"));
  const Chart c = fixtures::bump_plane();
  EXPECT_EQ(differentiate(c, s(c, "chi"), "x"), s(c, "2*x^-3*chi"));
  EXPECT_EQ(differentiate(c, s(c, "2*x^-3*chi"), "x"), s(c, "(4*x^-6 - 6*x^-4)*chi"));
  EXPECT_TRUE(differentiate(c, s(c, "chi"), "y").is_zero());
  EXPECT_THROW(differentiate(p, s(p, "x"), "z"), unknown_symbol);
}

TEST(Differentiate, QuotientRule) {
  const Chart c = fixtures::plane();
  EXPECT_EQ(differentiate(c, s(c, "1/(1+x^2)"), "x"), s(c, "-2*x/(1+x^2)^2"));
}

namespace {

std::vector<Scalar> samples(const Chart& c) {
  std::vector<Scalar> out;
  for (const char* t : {"x", "x*y + 3", "1/(1+x^2)", "chi", "x^-3*chi - y", "(chi + x)/(y - 2)", "2/3*chi^2*y"})
    out.push_back(s(c, t));
  return out;
}

}  // namespace

TEST(Properties, FieldAxioms) {
  const Chart c = fixtures::bump_plane();
  const auto v = samples(c);
  for (const auto& a : v)
    for (const auto& b : v)
      for (const auto& d : v) {
        EXPECT_EQ((a + b) + d, a + (b + d));
        EXPECT_EQ((a * b) * d, a * (b * d));
        EXPECT_EQ(a * (b + d), a * b + a * d);
      }
  for (const auto& a : v) {
    EXPECT_EQ(a * a.inverse(), Scalar(1));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Properties, LeibnizAndMixedPartials) {
  const Chart c = fixtures::bump_plane();
  const auto v = samples(c);
  for (const auto& f : v) {
    EXPECT_EQ(differentiate(c, differentiate(c, f, 0), 1), differentiate(c, differentiate(c, f, 1), 0));
    for (const auto& g : v)
      for (std::size_t i = 0; i < 2; ++i)
        EXPECT_EQ(differentiate(c, f * g, i), differentiate(c, f, i) * g + f * differentiate(c, g, i));
  }
}

TEST(Properties, RenderRoundTrip) {
  const Chart c = fixtures::bump_plane();
  for (const auto& f : samples(c)) {
    const std::string text = render(c, f);
    EXPECT_EQ(s(c, text), f) << text;
    EXPECT_EQ(render(c, s(c, text)), text);
  }
}

TEST(Render, Examples) {
  const Chart c = fixtures::bump_plane();
  EXPECT_EQ(render(c, s(c, "(4*x^-6 - 6*x^-4)*chi")), "(4*x^-6 - 6*x^-4)*chi");
  EXPECT_EQ(render(c, s(c, "2*x^-3*chi")), "2*x^-3*chi");
  EXPECT_EQ(render(c, s(c, "x^2 - y + 1")), "x^2 - y + 1");
  EXPECT_EQ(render(c, s(c, "-x")), "-x");
  EXPECT_EQ(render(c, s(c, "1/2")), "1/2");
}

TEST(Chart, RejectsBadDeclarations) {
  EXPECT_THROW(make_chart({"x", "x"}), invalid_input);
  EXPECT_THROW(make_chart({"1x"}), invalid_input);
  EXPECT_THROW(make_chart({"x"}, {{"chi", {"w"}}}), unknown_symbol);
  EXPECT_THROW(make_chart({"x", "y"}, {{"chi", {"chi"}}}), invalid_input);
}
