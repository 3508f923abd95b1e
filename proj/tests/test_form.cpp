#include <gtest/gtest.h>

#include <random>

#include "quartic_sos/form.hpp"
#include "quartic_sos/random.hpp"

namespace quartic_sos {
namespace {

mpq_class q(long num, long den = 1) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

TernaryQuartic random_quartic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  QuarticCoeffs<mpq_class> c;
  do {
    for (auto& v : c) v = q(num(rng), den(rng));
  } while (std::all_of(c.begin(), c.end(), [](const mpq_class& v) { return v == 0; }));
  return TernaryQuartic::from_coeffs(c);
}

TEST(Parse, FermatCoefficients) {
  const TernaryQuartic f = parse_quartic("x^4 + y^4 + z^4");
  for (std::size_t k = 0; k < 15; ++k) {
    const Exponent& e = kQuarticMonomials[k];
    const bool pure = e[0] == 4 || e[1] == 4 || e[2] == 4;
    EXPECT_EQ(f.coeffs()[k], pure ? 1 : 0);
  }
}

TEST(Parse, BinomialExpansion) {
  const TernaryQuartic f = parse_quartic("(x^2+y^2+z^2)^2");
  EXPECT_EQ(f.coeff({4, 0, 0}), 1);
  EXPECT_EQ(f.coeff({0, 4, 0}), 1);
  EXPECT_EQ(f.coeff({0, 0, 4}), 1);
  EXPECT_EQ(f.coeff({2, 2, 0}), 2);
  EXPECT_EQ(f.coeff({2, 0, 2}), 2);
  EXPECT_EQ(f.coeff({0, 2, 2}), 2);
  EXPECT_EQ(f.coeff({3, 1, 0}), 0);
}

TEST(Parse, Juxtaposition) {
  EXPECT_EQ(parse_quartic("2x^2y^2 - x y z^2"), parse_quartic("2*x^2*y^2 - x*y*z^2"));
  EXPECT_EQ(parse_quartic("x^4/4 + 0.5 y^4"), parse_quartic("1/4*x^4 + 1/2*y^4"));
}

TEST(Parse, RejectsMixedDegree) {
  try {
    parse_quartic("x^3 + y^4");
    FAIL() << "expected a ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::NotHomogeneous);
  }
}

TEST(Parse, RejectsZeroForm) {
  try {
    parse_quartic("x^4 - x^4");
    FAIL() << "expected a ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::ZeroForm);
  }
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse_quartic("x^4 + * y^4");
    FAIL() << "expected a ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
    EXPECT_EQ(e.position(), 6u);
  }
  EXPECT_THROW(parse_quartic("x^4 + (y^4"), ParseError);
  EXPECT_THROW(parse_quartic("x^4 / y"), ParseError);
  EXPECT_THROW(parse_quartic("w^4"), ParseError);
  EXPECT_THROW(parse_quartic(""), ParseError);
}

TEST(Parse, Rationals) {
  EXPECT_EQ(parse_rational("3"), 3);
  EXPECT_EQ(parse_rational("-3/4"), q(-3, 4));
  EXPECT_EQ(parse_rational("1.25"), q(5, 4));
  EXPECT_EQ(parse_rational("6/8"), q(3, 4));
}

TEST(Print, CanonicalText) {
  EXPECT_EQ(to_string(parse_quartic("z^4 + y^4 + x^4")), "x^4 + y^4 + z^4");
  EXPECT_EQ(to_string(parse_quartic("-x^4 + 3/2 x y z^2")), "-x^4 + 3/2*x*y*z^2");
}

TEST(Print, RoundTripIsIdentity) {
  auto rng = make_rng(11, 0);
  for (int i = 0; i < 200; ++i) {
    const TernaryQuartic f = random_quartic(rng);
    EXPECT_EQ(parse_quartic(to_string(f)), f) << to_string(f);
  }
}

TEST(QuadProduct, Examples) {
  QuadraticForm<mpq_class> x2, y2;
  x2.c = {1, 0, 0, 0, 0, 0};
  y2.c = {0, 1, 0, 0, 0, 0};
  EXPECT_EQ(TernaryQuartic::from_coeffs(quad_product(x2, x2)), parse_quartic("x^4"));
  EXPECT_EQ(TernaryQuartic::from_coeffs(quad_product(x2, y2)), parse_quartic("x^2 y^2"));
}

TEST(QuadProduct, ConjugateFactorsGiveSumOfSquares) {
  // q = x^2 - yz, r = xz in the order (x^2, y^2, z^2, yz, xz, xy).
  const Complex i(0, 1);
  const QuadraticForm<Complex> u{{1.0, 0.0, 0.0, -1.0, i, 0.0}};
  const QuadraticForm<Complex> v{{1.0, 0.0, 0.0, -1.0, -i, 0.0}};
  const QuadraticForm<Complex> qf{{1.0, 0.0, 0.0, -1.0, 0.0, 0.0}};
  const QuadraticForm<Complex> rf{{0.0, 0.0, 0.0, 0.0, 1.0, 0.0}};
  const auto lhs = quad_product(u, v);
  const auto q2 = quad_square(qf);
  const auto r2 = quad_square(rf);
  for (int k = 0; k < 15; ++k) EXPECT_EQ(lhs[k], q2[k] + r2[k]) << k;
}

TEST(QuadProduct, Bilinear) {
  auto rng = make_rng(12, 0);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    QuadraticForm<mpq_class> a, b, c;
    for (int i = 0; i < 6; ++i) {
      a.c[i] = d(rng);
      b.c[i] = d(rng);
      c.c[i] = q(d(rng), 3);
    }
    const mpq_class s = q(d(rng), 7);
    QuadraticForm<mpq_class> sum;
    for (int i = 0; i < 6; ++i) sum.c[i] = a.c[i] * s + b.c[i];
    const auto lhs = quad_product(sum, c);
    const auto pa = quad_product(a, c);
    const auto pb = quad_product(b, c);
    const auto sym = quad_product(c, sum);
    for (int k = 0; k < 15; ++k) {
      EXPECT_EQ(lhs[k], s * pa[k] + pb[k]);
      EXPECT_EQ(lhs[k], sym[k]);
    }
  }
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(eval_quartic(parse_quartic("x^4+y^4+z^4"), {1, 1, 1}), 3);
  EXPECT_EQ(eval_quartic(parse_quartic("x^4+y^4+z^4"), {0, 0, 0}), 0);
  EXPECT_EQ(eval_quartic(parse_quartic("x^4+y^4-z^4"), {0, 1, 2}), -15);
}

TEST(Gradient, Examples) {
  const auto g = gradient(parse_quartic("x^4+y^4+z^4"));
  EXPECT_EQ(g[0], parse_polynomial("4x^3"));
  EXPECT_EQ(g[1], parse_polynomial("4y^3"));
  EXPECT_EQ(g[2], parse_polynomial("4z^3"));
  const auto h = gradient(parse_quartic("x^2 y^2"));
  EXPECT_EQ(h[0], parse_polynomial("2x y^2"));
  EXPECT_EQ(h[1], parse_polynomial("2x^2 y"));
  EXPECT_TRUE(h[2].is_zero());
}

TEST(Gradient, EulerRelationExact) {
  auto rng = make_rng(13, 0);
  std::vector<TernaryQuartic> forms = {parse_quartic("x^4+y^4+z^4"),
                                       parse_quartic("(x^2+y^2+z^2)^2"),
                                       parse_quartic("x^4+y^4-z^4"),
                                       parse_quartic("x^2y^2+y^2z^2+z^2x^2")};
  for (int i = 0; i < 100; ++i) forms.push_back(random_quartic(rng));
  for (const TernaryQuartic& f : forms) {
    const auto g = gradient(f);
    const Polynomial euler = Polynomial::variable(0) * g[0] + Polynomial::variable(1) * g[1] +
                             Polynomial::variable(2) * g[2];
    EXPECT_EQ(euler, f.to_polynomial() * mpq_class(4)) << to_string(f);
  }
}

TEST(ChangeOfVariables, MatchesSubstitution) {
  const std::array<std::array<mpq_class, 3>, 3> a = {{{1, 2, -1}, {0, 1, 3}, {2, -1, 1}}};
  const TernaryQuartic f = parse_quartic("x^4 + y^4 + z^4");
  const TernaryQuartic g = change_variables(f, a);
  // g(x, y, z) = f(x + 2y - z, y + 3z, 2x - y + z).
  EXPECT_EQ(g, parse_quartic("(x+2y-z)^4 + (y+3z)^4 + (2x-y+z)^4"));
  EXPECT_EQ(eval_quartic(g, {1, 1, 1}), eval_quartic(f, {2, 4, 2}));
}

}  // namespace
}  // namespace quartic_sos
