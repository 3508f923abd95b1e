#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>

#include "quartic_sos/form.hpp"

namespace quartic_sos {

/// Symmetric 6x6 matrix with one stored entry per unordered index pair
/// (upper triangle, row-major: 21 entries).
template <typename T>
class SymMatrix6 {
 public:
  static constexpr int kDim = 6;
  static constexpr int kEntries = 21;

  SymMatrix6() {
    for (auto& e : entries_) e = T(0);
  }

  static constexpr int index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * kDim - i * (i - 1) / 2 + (j - i);
  }

  T& operator()(int i, int j) { return entries_[index(i, j)]; }
  const T& operator()(int i, int j) const { return entries_[index(i, j)]; }

  std::array<T, kEntries>& entries() { return entries_; }
  const std::array<T, kEntries>& entries() const { return entries_; }

  SymMatrix6& operator+=(const SymMatrix6& o) {
    for (int k = 0; k < kEntries; ++k) entries_[k] += o.entries_[k];
    return *this;
  }

  friend bool operator==(const SymMatrix6& a, const SymMatrix6& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::array<T, kEntries> entries_;
};

using Matrix6c = Eigen::Matrix<Complex, 6, 6>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using LambdaVector = Eigen::Matrix<Complex, 6, 1>;

template <typename T, typename Out = T>
Eigen::Matrix<Out, 6, 6> to_dense(const SymMatrix6<T>& m) {
  Eigen::Matrix<Out, 6, 6> out;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) out(i, j) = Out(m(i, j));
  }
  return out;
}

inline Matrix6d to_dense_double(const SymMatrix6<mpq_class>& m) {
  Matrix6d out;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) out(i, j) = m(i, j).get_d();
  }
  return out;
}

/// Symmetrized copy of a dense matrix (upper triangle is read).
template <typename Derived>
SymMatrix6<typename Derived::Scalar> from_dense(const Eigen::MatrixBase<Derived>& m) {
  SymMatrix6<typename Derived::Scalar> out;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) out(i, j) = m(i, j);
  }
  return out;
}

/// Row/column pairs carrying the family coordinates; B_i has a 1 at
/// kLambdaEntries[i] and no other basis matrix touches that entry.
inline constexpr std::array<std::array<int, 2>, 6> kLambdaEntries = {{
    {0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}, {2, 5},
}};

/// Affine family G(lambda) = base + sum_i lambda_i * kernel_basis[i] of all
/// Gram matrices of `source` in the monomial order of kQuadMonomials.
struct GramFamily {
  SymMatrix6<mpq_class> base;
  std::array<SymMatrix6<int>, 6> kernel_basis;
  TernaryQuartic source;

  Matrix6c evaluate(const LambdaVector& lambda) const;
  SymMatrix6<mpq_class> evaluate_exact(const std::array<mpq_class, 6>& lambda) const;
};

GramFamily build_family(const TernaryQuartic& f);

/// The fixed kernel basis B_1..B_6 of the map G -> m^T G m.
const std::array<SymMatrix6<int>, 6>& kernel_basis();

/// Coefficients of m^T G m.
template <typename T>
QuarticCoeffs<T> gram_to_quartic(const SymMatrix6<T>& g) {
  QuarticCoeffs<T> out;
  for (auto& o : out) o = T(0);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const Exponent& a = kQuadMonomials[i];
      const Exponent& b = kQuadMonomials[j];
      out[quartic_index({a[0] + b[0], a[1] + b[1], a[2] + b[2]})] += g(i, j);
    }
  }
  return out;
}

/// G = sum_k signs[k] * v_k v_k^T for the coefficient vectors v_k of forms[k].
template <typename T>
SymMatrix6<T> representation_to_gram(const std::array<int, 3>& signs,
                                     const std::array<QuadraticForm<T>, 3>& forms) {
  SymMatrix6<T> g;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) g(i, j) += T(signs[k]) * forms[k].c[i] * forms[k].c[j];
    }
  }
  return g;
}

class NotInFamily : public std::runtime_error {
 public:
  explicit NotInFamily(double residual)
      : std::runtime_error("matrix is not in the Gram family (residual " +
                           std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

inline constexpr double kNotInFamilyTol = 1e-9;

/// Family coordinates of g, read off the kLambdaEntries positions. The
/// tolerance is absolute for quartics of unit scale and grows with the
/// coefficient max-norm of the source quartic.
LambdaVector lambda_of_gram(const GramFamily& family, const Matrix6c& g,
                            double tol = kNotInFamilyTol);

}  // namespace quartic_sos
