#include "quartic_sos/gram.hpp"

#include <algorithm>
#include <cmath>

namespace quartic_sos {

namespace {

struct CanonicalSlot {
  Exponent monomial;
  int row;
  int col;
};

// Each quartic monomial lands on exactly one symmetric slot of G_0.
constexpr std::array<CanonicalSlot, 15> kCanonicalSlots = {{
    {{4, 0, 0}, 0, 0}, {{0, 4, 0}, 1, 1}, {{0, 0, 4}, 2, 2},
    {{0, 2, 2}, 3, 3}, {{2, 0, 2}, 4, 4}, {{2, 2, 0}, 5, 5},
    {{3, 1, 0}, 0, 5}, {{3, 0, 1}, 0, 4}, {{1, 3, 0}, 1, 5},
    {{0, 3, 1}, 1, 3}, {{1, 0, 3}, 2, 4}, {{0, 1, 3}, 2, 3},
    {{2, 1, 1}, 0, 3}, {{1, 2, 1}, 1, 4}, {{1, 1, 2}, 2, 5},
}};

std::array<SymMatrix6<int>, 6> make_kernel_basis() {
  std::array<SymMatrix6<int>, 6> b;
  // Relation entry (1 at kLambdaEntries[i]) and its compensating entry.
  b[0](0, 1) = 1;
  b[0](5, 5) = -2;
  b[1](0, 2) = 1;
  b[1](4, 4) = -2;
  b[2](1, 2) = 1;
  b[2](3, 3) = -2;
  b[3](0, 3) = 1;
  b[3](4, 5) = -1;
  b[4](1, 4) = 1;
  b[4](3, 5) = -1;
  b[5](2, 5) = 1;
  b[5](3, 4) = -1;
  return b;
}

}  // namespace

const std::array<SymMatrix6<int>, 6>& kernel_basis() {
  static const std::array<SymMatrix6<int>, 6> basis = make_kernel_basis();
  return basis;
}

GramFamily build_family(const TernaryQuartic& f) {
  SymMatrix6<mpq_class> base;
  for (const auto& slot : kCanonicalSlots) {
    const mpq_class& c = f.coeff(slot.monomial);
    base(slot.row, slot.col) = slot.row == slot.col ? c : mpq_class(c / 2);
  }
  return GramFamily{base, kernel_basis(), f};
}

Matrix6c GramFamily::evaluate(const LambdaVector& lambda) const {
  Matrix6c g = to_dense_double(base).cast<Complex>();
  for (int k = 0; k < 6; ++k) g += lambda(k) * to_dense<int, double>(kernel_basis[k]).cast<Complex>();
  return g;
}

SymMatrix6<mpq_class> GramFamily::evaluate_exact(const std::array<mpq_class, 6>& lambda) const {
  SymMatrix6<mpq_class> g = base;
  for (int k = 0; k < 6; ++k) {
    for (int e = 0; e < SymMatrix6<int>::kEntries; ++e) {
      g.entries()[e] += lambda[k] * kernel_basis[k].entries()[e];
    }
  }
  return g;
}

LambdaVector lambda_of_gram(const GramFamily& family, const Matrix6c& g, double tol) {
  const Matrix6d base = to_dense_double(family.base);
  LambdaVector lambda;
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kLambdaEntries[k];
    lambda(k) = g(i, j) - base(i, j);
  }
  const Matrix6c diff = g - family.evaluate(lambda);
  const double residual = diff.cwiseAbs().maxCoeff();
  if (residual > tol * std::max(1.0, family.source.scale())) throw NotInFamily(residual);
  return lambda;
}

}  // namespace quartic_sos
