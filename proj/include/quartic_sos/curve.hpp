#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quartic_sos/gram.hpp"
#include "quartic_sos/solver.hpp"

namespace quartic_sos {

inline constexpr double kPsdTol = 1e-8;
inline constexpr double kCommonZeroTol = 1e-10;

enum class SmoothnessVerdict { Smooth, Singular, Indeterminate };

/// Outcome of the exact smoothness decision for the curve f = 0.
struct CurveStatus {
  bool smooth = false;
  SmoothnessVerdict verdict = SmoothnessVerdict::Indeterminate;
  /// True iff the Macaulay resultant of (f_x, f_y, f_z) is nonzero.
  bool discriminant_nonzero = false;
  /// det M / det M' for the first variable ordering with det M' != 0.
  std::optional<mpq_class> resultant;
  /// Variable ordering used for the quotient (identity if none worked).
  std::array<int, 3> ordering{0, 1, 2};
  /// "macaulay-quotient" or "macaulay-rank".
  std::string method;
  /// Rank of the full 45x36 Macaulay matrix, when that fallback ran.
  std::optional<int> macaulay_rank;
  /// Numerically located singular point for the non-smooth case.
  std::optional<std::array<Complex, 3>> witness;
};

/// Exact Macaulay-resultant test on the gradient of f.
CurveStatus smoothness_test(const TernaryQuartic& f);

/// Exact determinants of the square degree-7 Macaulay matrix of three
/// ternary cubics and of its non-reduced minor, for the given ordering.
struct MacaulayDeterminants {
  mpq_class numerator;
  mpq_class denominator;
};
MacaulayDeterminants macaulay_determinants(const std::array<Polynomial, 3>& cubics,
                                           const std::array<int, 3>& ordering);

/// Rank of the 45x36 matrix of all degree-4 multiples of the three cubics.
int macaulay_rank(const std::array<Polynomial, 3>& cubics);

/// Homogeneous polynomial with double-precision complex coefficients, scaled
/// to unit coefficient max-norm.
struct NumericForm {
  std::vector<std::pair<Exponent, Complex>> terms;
  int degree = 0;

  static NumericForm from(const Polynomial& p);
  static NumericForm from(const QuadraticForm<Complex>& q);
  Complex operator()(const std::array<Complex, 3>& x) const;
  std::array<Complex, 3> gradient(const std::array<Complex, 3>& x) const;
};

struct CommonZero {
  bool found = false;
  std::array<Complex, 3> point{};
  /// max |F_i(x / |x|)| at the best iterate.
  double residual = 0.0;
};

/// Newton search for a common zero in complex projective 2-space from
/// `trials` random starts, each in a random affine chart.
CommonZero find_common_zero(const std::vector<NumericForm>& forms, int trials,
                            std::uint64_t seed);

/// One-sided numeric test: found == true is evidence of a singular point.
CommonZero numeric_singularity_oracle(const TernaryQuartic& f, int trials,
                                      std::uint64_t seed = 1);

enum class PositivityVerdict { Nonnegative, Negative, Indeterminate };

struct PositivityStatus {
  PositivityVerdict verdict = PositivityVerdict::Indeterminate;
  bool nonnegative = false;
  /// PSD member of the family (within psd_tol relative to the scale of f).
  std::optional<GramPoint> certificate;
  /// Unit-sphere point with f < -psd_tol * scale, and f there (exact).
  std::optional<std::array<double, 3>> counterexample;
  std::optional<mpq_class> counterexample_value;
  /// Best minimum eigenvalue reached by the ascent, relative to scale.
  double best_min_eigenvalue = 0.0;
};

PositivityStatus nonnegativity_test(const TernaryQuartic& f, const GramFamily& family,
                                    std::uint64_t seed = 1);

/// True iff no common zero of the three forms was found (basepoint-free).
bool basepoint_check(const std::array<QuadraticForm<Complex>, 3>& forms,
                     std::uint64_t seed = 1, int trials = 100);

}  // namespace quartic_sos
