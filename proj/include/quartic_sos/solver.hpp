#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quartic_sos/gram.hpp"

namespace quartic_sos {

/// Restart-based search for the rank-3 points of a Gram family.
///
/// All tolerances are relative: the solver works on f / s where s is the
/// coefficient max-norm of f, and reports lambda and matrices for f itself.
struct SolveConfig {
  int restarts = 20000;
  int newton_max_iters = 100;
  double convergence_tol = 1e-12;
  double dedup_tol = 1e-6;
  double real_tol = 1e-8;
  std::uint64_t master_seed = 20010601;
  /// Upper bound on monodromy completion loops after the restarts; 0 disables.
  int monodromy_loops = 20;
  /// Completion stops after this many consecutive loops without a new class.
  int monodromy_stall = 5;
  /// Worker count; 0 means std::thread::hardware_concurrency().
  int threads = 0;
};

inline constexpr double kRankTol = 1e-8;

enum class Reality { Real, Complex };

struct Signature {
  int positive = 0;
  int negative = 0;
  bool is_psd() const { return positive == 3 && negative == 0; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct GramPoint {
  LambdaVector lambda;
  Matrix6c matrix;
  int numerical_rank = 0;
  /// Norm of the kernel-chart residual at the accepted iterate (relative).
  double kernel_residual = 0.0;
  /// Fourth-largest singular value of the normalized matrix.
  double fourth_singular_value = 0.0;
  Reality reality = Reality::Complex;
  std::optional<Signature> signature;
  /// Restarts that converged into this class.
  int hits = 0;
  /// Restart index of the first member; -1 if found by monodromy completion.
  int first_restart = -1;

  bool is_psd() const { return signature && signature->is_psd(); }
};

struct Counts {
  int complex_total = 0;
  int real_total = 0;
  int psd_total = 0;
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct SolutionSet {
  std::vector<GramPoint> points;
  Counts counts;
  bool budget_exhausted = false;
  int converged_restarts = 0;
  /// Classes found by the restart phase alone.
  int restart_classes = 0;
  /// Coefficient max-norm of the source quartic; lambda tolerances scale by it.
  double scale = 1.0;
  SolveConfig config;
};

using KernelBlock = Eigen::Matrix<Complex, 3, 3>;
using ResidualVector = Eigen::Matrix<Complex, 18, 1>;

/// Entries of G(lambda) * [K; I_3], column-major. All 18 vanish iff the
/// sheared span of the last three coordinate directions lies in ker G.
ResidualVector residual_system(const GramFamily& family, const LambdaVector& lambda,
                               const KernelBlock& k);

SolutionSet solve_all(const GramFamily& family, const SolveConfig& config = {});

struct CountCheck {
  std::string name;
  int observed = 0;
  int expected = 0;
  bool pass = false;
};

struct CountReport {
  std::vector<CountCheck> checks;
  int non_real = 0;
  int conjugate_pairs = 0;
  bool conjugation_closed = false;
  int mixed_sign_real = 0;
  bool pass = false;
};

/// Expected counts for a smooth non-negative quartic.
inline constexpr Counts kExpectedCounts{63, 15, 8};

CountReport certify_count(const SolutionSet& set);

}  // namespace quartic_sos
