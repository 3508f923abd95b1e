#include <limits>

#include "solver_internal.hpp"

namespace quartic_sos::detail {

namespace {

using Sys = KernelSystem<Complex>;

constexpr double kInitialStep = 0.02;
constexpr double kMaxStep = 0.1;
constexpr double kMinStep = 1e-9;
constexpr double kCorrectorTol = 1e-10;
constexpr double kRechartBound = 1e3;

double state_norm(const TrackPoint& p) {
  return std::sqrt(p.lambda.squaredNorm() + p.k.squaredNorm());
}

bool tangent(const NumericFamily& nf, const std::array<Matrix6d, kChartCount>& charts,
             const Matrix6c& from, const Matrix6c& delta, double t, const TrackPoint& p,
             Sys::Vec15& dx) {
  const Matrix6d& chart = charts[p.chart];
  const auto w = Sys::kernel_frame(chart, p.k);
  const Matrix6c g = nf.with_base<Complex>(from + t * delta, p.lambda);
  const Sys::Vec18 rhs = -Sys::residual(delta, w);
  dx = Sys::jacobian(nf, chart, g, w).colPivHouseholderQr().solve(rhs);
  return dx.allFinite();
}

TrackPoint advanced(const TrackPoint& p, const Sys::Vec15& dx, double h) {
  TrackPoint q = p;
  Sys::apply(h * dx, q.lambda, q.k);
  return q;
}

}  // namespace

void rechart(const std::array<Matrix6d, kChartCount>& charts, TrackPoint& p) {
  const auto w = Sys::kernel_frame(charts[p.chart], p.k);
  double best = p.k.cwiseAbs().maxCoeff();
  for (int c = 0; c < kChartCount; ++c) {
    if (c == p.chart) continue;
    const Eigen::Matrix<Complex, 6, 3> v = charts[c].transpose().cast<Complex>() * w;
    const Eigen::FullPivLU<Eigen::Matrix3cd> lu(v.bottomRows<3>());
    if (!lu.isInvertible()) continue;
    const Eigen::Matrix3cd k = v.topRows<3>() * lu.inverse();
    const double size = k.cwiseAbs().maxCoeff();
    if (std::isfinite(size) && size < best) {
      best = size;
      p.k = k;
      p.chart = c;
    }
  }
}

bool track_segment(const NumericFamily& nf, const std::array<Matrix6d, kChartCount>& charts,
                   const Matrix6c& from, const Matrix6c& to, TrackPoint& p) {
  const Matrix6c delta = to - from;
  double t = 0.0;
  double h = kInitialStep;
  int streak = 0;
  if (p.k.cwiseAbs().maxCoeff() > kRechartBound) rechart(charts, p);

  while (t < 1.0) {
    h = std::min(h, 1.0 - t);
    bool ok = true;
    Sys::Vec15 k1, k2, k3, k4;
    ok = ok && tangent(nf, charts, from, delta, t, p, k1);
    ok = ok && tangent(nf, charts, from, delta, t + h / 2, advanced(p, k1, h / 2), k2);
    ok = ok && tangent(nf, charts, from, delta, t + h / 2, advanced(p, k2, h / 2), k3);
    ok = ok && tangent(nf, charts, from, delta, t + h, advanced(p, k3, h), k4);

    TrackPoint q = p;
    if (ok) {
      q = advanced(p, (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0, h);
      const Matrix6c base = from + (t + h) * delta;
      const double size = 1.0 + state_norm(q);
      double previous = std::numeric_limits<double>::infinity();
      ok = false;
      for (int iter = 0; iter < 3; ++iter) {
        const Matrix6d& chart = charts[q.chart];
        const auto w = Sys::kernel_frame(chart, q.k);
        const Matrix6c g = nf.with_base<Complex>(base, q.lambda);
        const Sys::Vec18 r = Sys::residual(g, w);
        if (r.norm() < kCorrectorTol * size) {
          ok = true;
          break;
        }
        const Sys::Vec15 step = Sys::jacobian(nf, chart, g, w).colPivHouseholderQr().solve(-r);
        const double n = step.norm();
        // Reject large or non-contracting corrections: they signal a path jump.
        if (!std::isfinite(n) || n > 0.05 * size || n > 0.5 * previous) break;
        previous = n;
        Sys::apply(step, q.lambda, q.k);
      }
    }

    if (ok) {
      p = q;
      t += h;
      if (++streak >= 3) {
        h = std::min(2.0 * h, kMaxStep);
        streak = 0;
      }
      if (p.k.cwiseAbs().maxCoeff() > kRechartBound) rechart(charts, p);
    } else {
      h /= 2.0;
      streak = 0;
      if (h < kMinStep) return false;
    }
  }
  return true;
}

}  // namespace quartic_sos::detail
