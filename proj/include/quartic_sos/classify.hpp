#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quartic_sos/curve.hpp"
#include "quartic_sos/gram.hpp"
#include "quartic_sos/solver.hpp"

namespace quartic_sos {

inline constexpr double kResidualTol = 1e-8;
/// Diagonal entries at or below this modulus are not used as pivots.
inline constexpr double kPivotTol = 1e-10;

/// f = sum_k signs[k] * forms[k]^2.
struct Representation {
  std::array<int, 3> signs{1, 1, 1};
  std::array<QuadraticForm<Complex>, 3> forms;
  LambdaVector class_lambda = LambdaVector::Zero();
  /// max |f - sum| / max |f| over the 15 coefficients.
  double residual = 0.0;

  bool is_real() const;
  bool all_plus() const;
  /// Real with both signs present.
  bool mixed_signs() const;
};

class RankMismatch : public std::runtime_error {
 public:
  explicit RankMismatch(double fourth_singular_value)
      : std::runtime_error("Gram matrix does not have rank 3 (fourth singular value " +
                           std::to_string(fourth_singular_value) + ")"),
        fourth_singular_value_(fourth_singular_value) {}
  double fourth_singular_value() const { return fourth_singular_value_; }

 private:
  double fourth_singular_value_;
};

/// Eigen-factorization of a real rank-3 Gram matrix. The rank test is applied
/// to g / scale. The residual is measured against m^T g m.
Representation factor_real(const Matrix6d& g, double scale = 1.0);

/// Pivoted completion of squares for a complex symmetric rank-3 matrix.
/// All signs are +1.
Representation factor_complex(const Matrix6c& g, double scale = 1.0);

/// Sign-normalizes each form (first nonzero coefficient has positive real
/// part, or positive imaginary part if that is zero) and sorts the
/// (sign, form) pairs lexicographically by coefficients.
void normalize(Representation& rep);

/// Residual of sum signs[k] forms[k]^2 against f, exact when all
/// coefficients are real (doubles are converted to rationals without loss).
double representation_residual(const TernaryQuartic& f, const Representation& rep);

struct Verification {
  bool pass = false;
  double residual = 0.0;
  bool exact = false;
  bool basepoint_free = false;
};

Verification verify_representation(const TernaryQuartic& f, const Representation& rep);

/// Factors a solver point (real points via factor_real, others via
/// factor_complex), normalizes, and measures the residual against f.
Representation classify_point(const GramFamily& family, const GramPoint& point);

enum class Hypothesis { Smooth, Nonnegative };

std::string to_string(Hypothesis h);

struct PipelineReport {
  CurveStatus curve;
  std::optional<PositivityStatus> positivity;
  /// Absent when the curve is singular (the solver is not run).
  std::optional<SolutionSet> solutions;
  /// One per solver point, same order.
  std::vector<Representation> representations;
  std::optional<Hypothesis> failed;

  int sum_of_squares = 0;
  int signed_real = 0;
  int non_real = 0;
  /// All-plus real representations must match the solver's PSD count.
  bool psd_paths_agree = false;
  /// Every real point's signs match its solver signature.
  bool signatures_agree = false;
  bool residuals_ok = false;
  std::optional<CountReport> count_report;
  bool pass = false;

  /// The real representations (all-plus first).
  std::vector<Representation> real_certificates() const;
};

/// Full pipeline: smoothness, non-negativity, solver, classification.
///
/// A singular curve stops before the solver. A form that is not non-negative
/// is still solved and classified so that its counts can be reported, but the
/// expected split is not asserted.
PipelineReport run_pipeline(const TernaryQuartic& f, const SolveConfig& config = {});

}  // namespace quartic_sos
