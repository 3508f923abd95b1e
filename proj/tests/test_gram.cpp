#include <gtest/gtest.h>

#include "exact_linalg.hpp"
#include "quartic_sos/gram.hpp"
#include "quartic_sos/random.hpp"

namespace quartic_sos {
namespace {

using Mat3q = std::array<std::array<mpq_class, 3>, 3>;

mpq_class random_rational(std::mt19937_64& rng, int span = 9, int max_den = 7) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  mpq_class r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

TernaryQuartic random_quartic(std::mt19937_64& rng) {
  QuarticCoeffs<mpq_class> c;
  for (auto& v : c) v = random_rational(rng);
  c[0] += 1;  // keep it nonzero
  if (c[0] == 0) c[0] = 1;
  return TernaryQuartic::from_coeffs(c);
}

SymMatrix6<mpq_class> to_rational(const SymMatrix6<int>& m) {
  SymMatrix6<mpq_class> out;
  for (int k = 0; k < 21; ++k) out.entries()[k] = m.entries()[k];
  return out;
}

Matrix6c to_complex(const SymMatrix6<mpq_class>& m) {
  return to_dense_double(m).cast<Complex>();
}

QuadraticForm<mpq_class> quad(std::array<int, 6> c) {
  QuadraticForm<mpq_class> q;
  for (int i = 0; i < 6; ++i) q.c[i] = c[i];
  return q;
}

TEST(BuildFamily, FermatBaseIsDiagonal) {
  const GramFamily fam = build_family(parse_quartic("x^4+y^4+z^4"));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) EXPECT_EQ(fam.base(i, j), (i == j && i < 3) ? 1 : 0);
  }
}

TEST(BuildFamily, CanonicalCrossTerms) {
  const GramFamily fam = build_family(parse_quartic("x^3 y + 2 x^2 y z + 3 y^2 z^2"));
  EXPECT_EQ(fam.base(0, 5), mpq_class(1, 2));  // x^3 y -> (x^2, xy)
  EXPECT_EQ(fam.base(0, 3), 1);                // x^2 yz -> (x^2, yz)
  EXPECT_EQ(fam.base(3, 3), 3);                // y^2 z^2 -> (yz, yz)
}

TEST(KernelBasis, ExpandsToZero) {
  for (const auto& b : kernel_basis()) {
    for (const mpq_class& c : gram_to_quartic(to_rational(b))) EXPECT_EQ(c, 0);
  }
}

TEST(KernelBasis, FirstMatrixIdentity) {
  // 2 x^2 y^2 - 2 (xy)^2 = 0 comes from the entries (x^2, y^2) and (xy, xy).
  const auto& b = kernel_basis()[0];
  EXPECT_EQ(b(0, 1), 1);
  EXPECT_EQ(b(5, 5), -2);
}

// The map from the 21 symmetric entries to the 15 quartic coefficients.
detail::RationalMatrix coefficient_map() {
  detail::RationalMatrix m(15, std::vector<mpq_class>(21));
  for (int k = 0; k < 21; ++k) {
    SymMatrix6<mpq_class> e;
    e.entries()[k] = 1;
    const auto c = gram_to_quartic(e);
    for (int r = 0; r < 15; ++r) m[r][k] = c[r];
  }
  return m;
}

TEST(KernelBasis, SpansFullNullspace) {
  EXPECT_EQ(detail::rank(coefficient_map()), 15);  // nullity 21 - 15 = 6
  detail::RationalMatrix basis;
  for (const auto& b : kernel_basis()) {
    std::vector<mpq_class> row;
    for (int e : b.entries()) row.push_back(e);
    basis.push_back(row);
  }
  EXPECT_EQ(detail::rank(basis), 6);
}

TEST(GramToQuartic, IdentityMatrix) {
  SymMatrix6<mpq_class> id;
  for (int i = 0; i < 6; ++i) id(i, i) = 1;
  EXPECT_EQ(TernaryQuartic::from_coeffs(gram_to_quartic(id)),
            parse_quartic("x^4+y^4+z^4+y^2z^2+x^2z^2+x^2y^2"));
}

TEST(GramToQuartic, FamilyIdentityExact) {
  auto rng = make_rng(21, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const TernaryQuartic f = random_quartic(rng);
    const GramFamily fam = build_family(f);
    EXPECT_EQ(TernaryQuartic::from_coeffs(gram_to_quartic(fam.base)), f);
    std::array<mpq_class, 6> lambda;
    for (auto& l : lambda) l = random_rational(rng, 20, 11);
    EXPECT_EQ(TernaryQuartic::from_coeffs(gram_to_quartic(fam.evaluate_exact(lambda))), f)
        << to_string(f);
  }
}

TEST(RepresentationToGram, Examples) {
  const std::array<QuadraticForm<mpq_class>, 3> forms = {quad({1, 0, 0, 0, 0, 0}),
                                                         quad({0, 1, 0, 0, 0, 0}),
                                                         quad({0, 0, 1, 0, 0, 0})};
  const auto plus = representation_to_gram<mpq_class>({1, 1, 1}, forms);
  const auto mixed = representation_to_gram<mpq_class>({1, 1, -1}, forms);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const int d = (i == j && i < 3) ? 1 : 0;
      EXPECT_EQ(plus(i, j), d);
      EXPECT_EQ(mixed(i, j), (i == 2 && j == 2) ? -1 : d);
    }
  }
}

TEST(RepresentationToGram, ExpandsToSignedSum) {
  auto rng = make_rng(22, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<QuadraticForm<mpq_class>, 3> forms;
    for (auto& f : forms) {
      for (auto& c : f.c) c = random_rational(rng);
    }
    const std::array<int, 3> signs = {1, -1, trial % 2 ? 1 : -1};
    const auto lhs = gram_to_quartic(representation_to_gram(signs, forms));
    QuarticCoeffs<mpq_class> rhs;
    for (auto& c : rhs) c = 0;
    for (int k = 0; k < 3; ++k) {
      const auto sq = quad_square(forms[k]);
      for (int i = 0; i < 15; ++i) rhs[i] += signs[k] * sq[i];
    }
    EXPECT_EQ(lhs, rhs);
  }
}

// Cayley transform (I - S)(I + S)^-1 of a rational skew matrix: exactly orthogonal.
Mat3q cayley(const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  const Mat3q s = {{{0, a, b}, {-a, 0, c}, {-b, -c, 0}}};
  Mat3q plus, minus;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      plus[i][j] = (i == j ? 1 : 0) + s[i][j];
      minus[i][j] = (i == j ? 1 : 0) - s[i][j];
    }
  }
  // Adjugate inverse of I + S.
  const auto& p = plus;
  const mpq_class det = p[0][0] * (p[1][1] * p[2][2] - p[1][2] * p[2][1]) -
                        p[0][1] * (p[1][0] * p[2][2] - p[1][2] * p[2][0]) +
                        p[0][2] * (p[1][0] * p[2][1] - p[1][1] * p[2][0]);
  Mat3q inv;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (p[r0][c0] * p[r1][c1] - p[r0][c1] * p[r1][c0]) / det;
    }
  }
  Mat3q q;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      q[i][j] = 0;
      for (int k = 0; k < 3; ++k) q[i][j] += minus[i][k] * inv[k][j];
    }
  }
  return q;
}

TEST(RepresentationToGram, OrthogonalMixingInvarianceExact) {
  auto rng = make_rng(23, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3q q = cayley(random_rational(rng), random_rational(rng), random_rational(rng));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        mpq_class dot = 0;
        for (int k = 0; k < 3; ++k) dot += q[k][i] * q[k][j];
        ASSERT_EQ(dot, i == j ? 1 : 0);
      }
    }
    std::array<QuadraticForm<mpq_class>, 3> forms, mixed;
    for (auto& f : forms) {
      for (auto& c : f.c) c = random_rational(rng);
    }
    for (int a = 0; a < 3; ++a) {
      for (int i = 0; i < 6; ++i) {
        mixed[a].c[i] = 0;
        for (int b = 0; b < 3; ++b) mixed[a].c[i] += q[a][b] * forms[b].c[i];
      }
    }
    EXPECT_EQ(representation_to_gram<mpq_class>({1, 1, 1}, forms),
              representation_to_gram<mpq_class>({1, 1, 1}, mixed));
    EXPECT_EQ(representation_to_gram<mpq_class>({-1, -1, -1}, forms),
              representation_to_gram<mpq_class>({-1, -1, -1}, mixed));
  }
}

TEST(LambdaOfGram, Examples) {
  const GramFamily fam = build_family(parse_quartic("x^4+y^4+z^4"));
  EXPECT_EQ(lambda_of_gram(fam, to_complex(fam.base)), LambdaVector::Zero());

  const std::array<mpq_class, 6> e4 = {0, 0, 0, 1, 0, 0};
  LambdaVector expected = LambdaVector::Zero();
  expected(3) = 1.0;
  EXPECT_EQ(lambda_of_gram(fam, to_complex(fam.evaluate_exact(e4))), expected);

  const auto rep = representation_to_gram<mpq_class>(
      {1, 1, 1}, {quad({1, 0, 0, 0, 0, 0}), quad({0, 1, 0, 0, 0, 0}), quad({0, 0, 1, 0, 0, 0})});
  EXPECT_EQ(lambda_of_gram(fam, to_complex(rep)), LambdaVector::Zero());
}

TEST(LambdaOfGram, RoundTripAndRejection) {
  auto rng = make_rng(24, 0);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    const GramFamily fam = build_family(random_quartic(rng));
    LambdaVector lambda;
    for (int i = 0; i < 6; ++i) lambda(i) = Complex(n(rng), n(rng));
    const Matrix6c g = fam.evaluate(lambda);
    EXPECT_LT((lambda_of_gram(fam, g) - lambda).cwiseAbs().maxCoeff(), 1e-12);
    Matrix6c off = g;
    off(3, 3) += 1e-3;
    EXPECT_THROW(lambda_of_gram(fam, off), NotInFamily);
  }
}

}  // namespace
}  // namespace quartic_sos
