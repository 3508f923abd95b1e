#include "quartic_sos/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "quartic_sos/random.hpp"
#include "solver_internal.hpp"

namespace quartic_sos {

namespace detail {

NumericFamily::NumericFamily(const GramFamily& family) {
  scale = family.source.scale();
  if (!(scale > 0.0)) scale = 1.0;
  base = to_dense_double(family.base) / scale;
  for (int k = 0; k < 6; ++k) basis[k] = to_dense<int, double>(family.kernel_basis[k]);
}

std::array<Matrix6d, kChartCount> make_charts(std::uint64_t seed) {
  std::array<Matrix6d, kChartCount> charts;
  charts[0] = Matrix6d::Identity();
  for (int c = 1; c < kChartCount; ++c) {
    auto rng = make_rng(seed, 0xC4A27ULL + c);
    std::normal_distribution<double> n;
    Matrix6d a;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) a(i, j) = n(rng);
    }
    Matrix6d q = Eigen::HouseholderQR<Matrix6d>(a).householderQ();
    charts[c] = q;
  }
  return charts;
}

}  // namespace detail

ResidualVector residual_system(const GramFamily& family, const LambdaVector& lambda,
                               const KernelBlock& k) {
  Eigen::Matrix<Complex, 6, 3> w;
  w.topRows<3>() = k;
  w.bottomRows<3>().setIdentity();
  const Eigen::Matrix<Complex, 6, 3> gw = family.evaluate(lambda) * w;
  return Eigen::Map<const ResidualVector>(gw.data());
}

namespace {

using detail::NewtonOutcome;
using detail::NumericFamily;
using detail::TrackPoint;
using Charts = std::array<Matrix6d, detail::kChartCount>;

struct Candidate {
  TrackPoint point;
  double residual = 0.0;
  bool converged = false;
  int first_restart = -1;
  int hits = 0;
};

Candidate run_restart(const NumericFamily& nf, const Charts& charts, const SolveConfig& config,
                      int index) {
  auto rng = make_rng(config.master_seed, static_cast<std::uint64_t>(index));
  Candidate out;
  TrackPoint& p = out.point;
  p.chart = index % detail::kChartCount;
  for (int i = 0; i < 6; ++i) p.lambda(i) = complex_normal(rng);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) p.k(i, j) = complex_normal(rng);
  }
  const NewtonOutcome r = detail::gauss_newton<Complex>(
      nf, charts[p.chart], p.lambda, p.k, config.newton_max_iters, config.convergence_tol);
  out.converged = r.converged;
  out.residual = r.residual;
  out.first_restart = index;
  out.hits = 1;
  return out;
}

/// Runs fn(i) for i in [0, n) on `workers` threads, striding by worker.
template <typename Fn>
void parallel_for(int n, int workers, Fn&& fn) {
  workers = std::clamp(workers, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

int worker_count(const SolveConfig& config) {
  if (config.threads > 0) return config.threads;
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

/// Index of a candidate within dedup_tol of lambda, or -1.
int find_near(const std::vector<Candidate>& known, const LambdaVector& lambda, double tol) {
  for (std::size_t c = 0; c < known.size(); ++c) {
    if ((known[c].point.lambda - lambda).norm() < tol) return static_cast<int>(c);
  }
  return -1;
}

Matrix6c random_base(const Matrix6d& base, std::mt19937_64& rng) {
  Matrix6c out = base.cast<Complex>();
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      const Complex z = complex_normal(rng);
      out(i, j) += z;
      if (i != j) out(j, i) += z;
    }
  }
  return out;
}

/// Tracks every known solution around random triangle loops base -> a -> b
/// -> base and adds the endpoints that are new. Returns true if the last
/// permitted loop still produced new solutions.
bool monodromy_completion(const NumericFamily& nf, const Charts& charts,
                          const SolveConfig& config, std::vector<Candidate>& known) {
  if (known.empty() || config.monodromy_loops <= 0) return false;
  const Matrix6c home = nf.base.cast<Complex>();
  int stalled = 0;
  bool grew_last = false;
  for (int loop = 0; loop < config.monodromy_loops; ++loop) {
    auto rng = make_rng(config.master_seed ^ 0x6d6f6e6f64726f6dULL, static_cast<std::uint64_t>(loop));
    const Matrix6c a = random_base(nf.base, rng);
    const Matrix6c b = random_base(nf.base, rng);

    const int n = static_cast<int>(known.size());
    std::vector<Candidate> ends(static_cast<std::size_t>(n));
    parallel_for(n, worker_count(config), [&](int i) {
      Candidate c;
      c.point = known[i].point;
      const bool tracked = detail::track_segment(nf, charts, home, a, c.point) &&
                           detail::track_segment(nf, charts, a, b, c.point) &&
                           detail::track_segment(nf, charts, b, home, c.point);
      if (!tracked) return;
      const NewtonOutcome r = detail::gauss_newton<Complex>(
          nf, charts[c.point.chart], c.point.lambda, c.point.k, config.newton_max_iters,
          config.convergence_tol);
      c.converged = r.converged;
      c.residual = r.residual;
      ends[i] = c;
    });

    int added = 0;
    for (const Candidate& c : ends) {
      if (!c.converged || find_near(known, c.point.lambda, config.dedup_tol) >= 0) continue;
      known.push_back(c);
      ++added;
    }
    grew_last = added > 0;
    stalled = grew_last ? 0 : stalled + 1;
    if (stalled >= config.monodromy_stall) break;
  }
  return grew_last;
}

bool lambda_less(const LambdaVector& a, const LambdaVector& b) {
  for (int i = 0; i < 6; ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
  }
  for (int i = 0; i < 6; ++i) {
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

GramPoint finish_point(const GramFamily& family, const NumericFamily& nf, const Charts& charts,
                       const SolveConfig& config, const Candidate& c) {
  GramPoint p;
  p.hits = c.hits;
  p.first_restart = c.first_restart;
  p.kernel_residual = c.residual;
  LambdaVector lambda = c.point.lambda;

  // A near-real point counts as real only if the real system reconverges.
  if (lambda.imag().cwiseAbs().maxCoeff() <= config.real_tol) {
    Eigen::Matrix<double, 6, 1> lr = lambda.real();
    Eigen::Matrix3d kr = c.point.k.real();
    const NewtonOutcome polished = detail::gauss_newton<double>(
        nf, charts[c.point.chart], lr, kr, config.newton_max_iters, config.convergence_tol);
    if (polished.converged && (lr.cast<Complex>() - lambda).norm() < config.dedup_tol) {
      lambda = lr.cast<Complex>();
      p.reality = Reality::Real;
      p.kernel_residual = polished.residual;
    }
  }

  const Matrix6c g = nf.evaluate(lambda);
  const Eigen::JacobiSVD<Matrix6c> svd(g);
  const auto sv = svd.singularValues();
  p.fourth_singular_value = sv(3);
  p.numerical_rank = static_cast<int>((sv.array() > kRankTol).count());
  if (p.reality == Reality::Real) {
    const Eigen::SelfAdjointEigenSolver<Matrix6d> eig(g.real());
    Signature s;
    for (int i = 0; i < 6; ++i) {
      const double mu = eig.eigenvalues()(i);
      if (mu > kRankTol) ++s.positive;
      if (mu < -kRankTol) ++s.negative;
    }
    p.signature = s;
  }
  p.lambda = lambda * nf.scale;
  if (p.reality == Reality::Real) p.lambda = p.lambda.real().cast<Complex>();
  p.matrix = family.evaluate(p.lambda);
  return p;
}

}  // namespace

SolutionSet solve_all(const GramFamily& family, const SolveConfig& config) {
  const NumericFamily nf(family);
  const Charts charts = detail::make_charts(config.master_seed);
  const int restarts = std::max(config.restarts, 0);

  std::vector<Candidate> results(static_cast<std::size_t>(restarts));
  parallel_for(restarts, worker_count(config),
               [&](int i) { results[i] = run_restart(nf, charts, config, i); });

  SolutionSet set;
  set.config = config;
  set.scale = nf.scale;

  // Deterministic reduction in restart order. Linkage is against cluster
  // representatives; two clusters bridged by one point are merged.
  std::vector<Candidate> known;
  for (const Candidate& r : results) {
    if (!r.converged) continue;
    ++set.converged_restarts;
    std::vector<std::size_t> near;
    for (std::size_t c = 0; c < known.size(); ++c) {
      if ((known[c].point.lambda - r.point.lambda).norm() < config.dedup_tol) near.push_back(c);
    }
    if (near.empty()) {
      known.push_back(r);
      continue;
    }
    Candidate& target = known[near.front()];
    ++target.hits;
    if (r.residual < target.residual) {
      target.point = r.point;
      target.residual = r.residual;
    }
    for (auto it = near.rbegin(); *it != near.front(); ++it) {
      const Candidate other = known[*it];
      target.hits += other.hits;
      target.first_restart = std::min(target.first_restart, other.first_restart);
      if (other.residual < target.residual) {
        target.point = other.point;
        target.residual = other.residual;
      }
      known.erase(known.begin() + static_cast<std::ptrdiff_t>(*it));
    }
  }
  set.restart_classes = static_cast<int>(known.size());

  const int last_quartile = restarts - restarts / 4;
  for (const Candidate& c : known) {
    if (c.first_restart >= last_quartile) set.budget_exhausted = true;
  }

  if (monodromy_completion(nf, charts, config, known)) set.budget_exhausted = true;

  for (const Candidate& c : known) set.points.push_back(finish_point(family, nf, charts, config, c));

  std::sort(set.points.begin(), set.points.end(), [](const GramPoint& a, const GramPoint& b) {
    if (a.reality != b.reality) return a.reality == Reality::Real;
    if (a.signature && b.signature && !(*a.signature == *b.signature)) {
      return a.signature->positive > b.signature->positive;
    }
    return lambda_less(a.lambda, b.lambda);
  });

  for (const GramPoint& p : set.points) {
    ++set.counts.complex_total;
    if (p.reality == Reality::Real) ++set.counts.real_total;
    if (p.is_psd()) ++set.counts.psd_total;
  }
  return set;
}

CountReport certify_count(const SolutionSet& set) {
  CountReport report;
  const Counts& c = set.counts;
  report.checks = {
      {"complex", c.complex_total, kExpectedCounts.complex_total,
       c.complex_total == kExpectedCounts.complex_total},
      {"real", c.real_total, kExpectedCounts.real_total,
       c.real_total == kExpectedCounts.real_total},
      {"psd", c.psd_total, kExpectedCounts.psd_total, c.psd_total == kExpectedCounts.psd_total},
  };

  std::vector<const GramPoint*> non_real;
  for (const GramPoint& p : set.points) {
    if (p.reality == Reality::Complex) {
      non_real.push_back(&p);
    } else if (p.signature && p.signature->positive > 0 && p.signature->negative > 0) {
      ++report.mixed_sign_real;
    }
  }
  report.non_real = static_cast<int>(non_real.size());

  // Pair each non-real point with the nearest conjugate of another one.
  const double tol = set.config.dedup_tol;
  std::vector<bool> used(non_real.size(), false);
  bool closed = true;
  for (std::size_t i = 0; i < non_real.size(); ++i) {
    if (used[i]) continue;
    std::size_t match = non_real.size();
    for (std::size_t j = i + 1; j < non_real.size(); ++j) {
      if (!used[j] &&
          (non_real[j]->lambda - non_real[i]->lambda.conjugate()).norm() < tol * set.scale) {
        match = j;
        break;
      }
    }
    if (match == non_real.size()) {
      closed = false;
      continue;
    }
    used[i] = used[match] = true;
    ++report.conjugate_pairs;
  }
  report.conjugation_closed = closed;

  const int expected_non_real = kExpectedCounts.complex_total - kExpectedCounts.real_total;
  report.checks.push_back({"non-real", report.non_real, expected_non_real,
                           report.non_real == expected_non_real});
  report.checks.push_back({"conjugate pairs", report.conjugate_pairs, expected_non_real / 2,
                           closed && report.conjugate_pairs == expected_non_real / 2});
  const int expected_mixed = kExpectedCounts.real_total - kExpectedCounts.psd_total;
  report.checks.push_back({"mixed-sign real", report.mixed_sign_real, expected_mixed,
                           report.mixed_sign_real == expected_mixed});
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CountCheck& k) { return k.pass; });
  return report;
}

}  // namespace quartic_sos
