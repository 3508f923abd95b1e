#include "quartic_sos/corpus.hpp"

#include "quartic_sos/curve.hpp"
#include "quartic_sos/random.hpp"

namespace quartic_sos {

namespace {

constexpr std::uint64_t kQuarticStream = 0x51A7E000ULL;
constexpr std::uint64_t kChangeStream = 0xC0A7E000ULL;

mpq_class random_rational(std::mt19937_64& rng, int max_den) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, max_den);
  const int a = num(rng);
  mpq_class q(a, den(rng));
  q.canonicalize();
  return q;
}

Polynomial random_quadratic(std::mt19937_64& rng) {
  Polynomial p;
  for (const Exponent& e : kQuadMonomials) p += Polynomial::monomial(e, random_rational(rng, 3));
  return p;
}

}  // namespace

TernaryQuartic random_nonnegative_quartic(std::uint64_t seed, int index) {
  auto rng = make_rng(seed, kQuarticStream + static_cast<std::uint64_t>(index));
  const Polynomial bump =
      (Polynomial::variable(0).pow(2) + Polynomial::variable(1).pow(2) + Polynomial::variable(2).pow(2))
          .pow(2) *
      mpq_class(1, 100);
  for (;;) {
    Polynomial f = bump;
    for (int k = 0; k < 3; ++k) f += random_quadratic(rng).pow(2);
    const TernaryQuartic q = TernaryQuartic::from_polynomial(f);
    if (smoothness_test(q).smooth) return q;
  }
}

LinearMap random_change_of_variables(std::uint64_t seed, int index) {
  auto rng = make_rng(seed, kChangeStream + static_cast<std::uint64_t>(index));
  for (;;) {
    LinearMap a;
    for (auto& row : a) {
      for (auto& x : row) x = random_rational(rng, 2);
    }
    const mpq_class det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                          a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                          a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (det != 0) return a;
  }
}

std::vector<CorpusEntry> build_corpus(std::uint64_t seed, int count) {
  std::vector<CorpusEntry> out;
  out.push_back({"fermat", parse_quartic("x^4 + y^4 + z^4")});
  for (int i = 0; i < count; ++i) {
    out.push_back({"random-" + std::to_string(i + 1), random_nonnegative_quartic(seed, i)});
  }
  return out;
}

}  // namespace quartic_sos
