#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "quartic_sos/gram.hpp"

namespace quartic_sos::detail {

inline constexpr int kChartCount = 3;
inline constexpr double kDivergenceBound = 1e8;

/// The Gram family of f / s in double precision, s = coefficient max-norm.
struct NumericFamily {
  explicit NumericFamily(const GramFamily& family);

  template <typename S>
  Eigen::Matrix<S, 6, 6> evaluate(const Eigen::Matrix<S, 6, 1>& lambda) const {
    return with_base<S>(base.cast<S>(), lambda);
  }

  template <typename S>
  Eigen::Matrix<S, 6, 6> with_base(const Eigen::Matrix<S, 6, 6>& b,
                                   const Eigen::Matrix<S, 6, 1>& lambda) const {
    Eigen::Matrix<S, 6, 6> g = b;
    for (int k = 0; k < 6; ++k) g += lambda(k) * basis[k].cast<S>();
    return g;
  }

  Matrix6d base;
  std::array<Matrix6d, 6> basis;
  double scale = 1.0;
};

/// Chart 0 is the coordinate chart [K; I_3]; the others pre-rotate it by
/// seeded random orthogonal matrices.
std::array<Matrix6d, kChartCount> make_charts(std::uint64_t seed);

template <typename S>
struct KernelSystem {
  using Mat6 = Eigen::Matrix<S, 6, 6>;
  using Mat63 = Eigen::Matrix<S, 6, 3>;
  using Vec18 = Eigen::Matrix<S, 18, 1>;
  using Jac = Eigen::Matrix<S, 18, 15>;
  using Vec15 = Eigen::Matrix<S, 15, 1>;

  static Mat63 kernel_frame(const Matrix6d& chart, const Eigen::Matrix<S, 3, 3>& k) {
    Mat63 stacked;
    stacked.template topRows<3>() = k;
    stacked.template bottomRows<3>().setIdentity();
    return chart.cast<S>() * stacked;
  }

  static Vec18 residual(const Mat6& g, const Mat63& w) {
    const Mat63 gw = g * w;
    return Eigen::Map<const Vec18>(gw.data());
  }

  /// Jacobian with respect to (lambda, vec_rowmajor(K)).
  static Jac jacobian(const NumericFamily& nf, const Matrix6d& chart, const Mat6& g,
                      const Mat63& w) {
    Jac jac = Jac::Zero();
    for (int i = 0; i < 6; ++i) {
      const Mat63 bw = nf.basis[i].cast<S>() * w;
      jac.col(i) = Eigen::Map<const Vec18>(bw.data());
    }
    const Mat6 gr = g * chart.cast<S>();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) jac.block(6 * b, 6 + 3 * a + b, 6, 1) = gr.col(a);
    }
    return jac;
  }

  static void apply(const Vec15& step, Eigen::Matrix<S, 6, 1>& lambda,
                    Eigen::Matrix<S, 3, 3>& k) {
    lambda += step.template head<6>();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) k(a, b) += step(6 + 3 * a + b);
    }
  }
};

struct NewtonOutcome {
  bool converged = false;
  double residual = 0.0;
  int iterations = 0;
};

/// Gauss-Newton on vec((base + sum lambda_i B_i) * R * [K; I_3]) = 0, 18
/// equations in the 15 unknowns (lambda, K). Updates lambda and k in place.
template <typename S>
NewtonOutcome gauss_newton(const NumericFamily& nf, const Eigen::Matrix<S, 6, 6>& base,
                           const Matrix6d& chart, Eigen::Matrix<S, 6, 1>& lambda,
                           Eigen::Matrix<S, 3, 3>& k, int max_iters, double tol) {
  using Sys = KernelSystem<S>;
  NewtonOutcome out;
  for (int iter = 0;; ++iter) {
    const auto w = Sys::kernel_frame(chart, k);
    const auto g = nf.with_base<S>(base, lambda);
    const auto r = Sys::residual(g, w);
    out.residual = r.norm();
    out.iterations = iter;
    if (!std::isfinite(out.residual) || out.residual > kDivergenceBound) return out;
    if (out.residual < tol) {
      out.converged = true;
      return out;
    }
    if (iter >= max_iters) return out;
    const typename Sys::Vec15 step = Sys::jacobian(nf, chart, g, w).colPivHouseholderQr().solve(-r);
    Sys::apply(step, lambda, k);
  }
}

template <typename S>
NewtonOutcome gauss_newton(const NumericFamily& nf, const Matrix6d& chart,
                           Eigen::Matrix<S, 6, 1>& lambda, Eigen::Matrix<S, 3, 3>& k,
                           int max_iters, double tol) {
  return gauss_newton<S>(nf, nf.base.cast<S>(), chart, lambda, k, max_iters, tol);
}

/// A point of the kernel system in a given chart.
struct TrackPoint {
  LambdaVector lambda;
  Eigen::Matrix<Complex, 3, 3> k;
  int chart = 0;
};

/// Re-expresses the kernel frame in the chart where K is smallest.
void rechart(const std::array<Matrix6d, kChartCount>& charts, TrackPoint& p);

/// Follows a solution of the kernel system while the Gram base moves
/// linearly from `from` to `to`. Returns false if the path is lost.
bool track_segment(const NumericFamily& nf, const std::array<Matrix6d, kChartCount>& charts,
                   const Matrix6c& from, const Matrix6c& to, TrackPoint& p);

}  // namespace quartic_sos::detail
