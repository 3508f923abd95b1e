#include "quartic_sos/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "exact_linalg.hpp"
#include "quartic_sos/random.hpp"
#include "solver_internal.hpp"

namespace quartic_sos {

namespace {

constexpr int kMacaulayDegree = 7;
constexpr int kNewtonIters = 100;

std::vector<Exponent> monomials_of_degree(int d) {
  std::vector<Exponent> out;
  for (int a = d; a >= 0; --a) {
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  }
  return out;
}

std::vector<mpq_class> row_of(const Polynomial& p, const std::vector<Exponent>& columns) {
  std::vector<mpq_class> row(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) row[c] = p.coeff(columns[c]);
  return row;
}

}  // namespace

MacaulayDeterminants macaulay_determinants(const std::array<Polynomial, 3>& cubics,
                                           const std::array<int, 3>& ordering) {
  const auto mons = monomials_of_degree(kMacaulayDegree);
  detail::RationalMatrix full;
  std::vector<std::size_t> non_reduced;
  for (std::size_t r = 0; r < mons.size(); ++r) {
    const Exponent& m = mons[r];
    int divisors = 0;
    for (int v = 0; v < 3; ++v) divisors += m[v] >= 3;
    if (divisors >= 2) non_reduced.push_back(r);
    const int* chosen = std::find_if(ordering.begin(), ordering.end(),
                                     [&](int v) { return m[v] >= 3; });
    Exponent q = m;
    q[*chosen] -= 3;
    full.push_back(row_of(Polynomial::monomial(q) * cubics[*chosen], mons));
  }
  detail::RationalMatrix minor;
  for (std::size_t r : non_reduced) {
    std::vector<mpq_class> row;
    for (std::size_t c : non_reduced) row.push_back(full[r][c]);
    minor.push_back(std::move(row));
  }
  return {detail::determinant(std::move(full)), detail::determinant(std::move(minor))};
}

int macaulay_rank(const std::array<Polynomial, 3>& cubics) {
  const auto columns = monomials_of_degree(kMacaulayDegree);
  const auto multipliers = monomials_of_degree(kMacaulayDegree - 3);
  detail::RationalMatrix m;
  for (const Polynomial& c : cubics) {
    for (const Exponent& e : multipliers) m.push_back(row_of(Polynomial::monomial(e) * c, columns));
  }
  return detail::rank(std::move(m));
}

CurveStatus smoothness_test(const TernaryQuartic& f) {
  const auto grad = gradient(f);
  CurveStatus status;
  std::array<int, 3> ordering{0, 1, 2};
  do {
    const MacaulayDeterminants d = macaulay_determinants(grad, ordering);
    if (d.denominator != 0) {
      status.resultant = d.numerator / d.denominator;
      status.ordering = ordering;
      status.method = "macaulay-quotient";
      status.discriminant_nonzero = *status.resultant != 0;
      break;
    }
  } while (std::next_permutation(ordering.begin(), ordering.end()));

  if (!status.resultant) {
    // Every ordering is degenerate; decide by whether the degree-7 part of the
    // gradient ideal is all of the degree-7 forms.
    const int r = macaulay_rank(grad);
    status.macaulay_rank = r;
    status.method = "macaulay-rank";
    status.discriminant_nonzero = r == static_cast<int>(monomials_of_degree(kMacaulayDegree).size());
  }
  status.smooth = status.discriminant_nonzero;
  status.verdict = status.smooth ? SmoothnessVerdict::Smooth : SmoothnessVerdict::Singular;
  if (!status.smooth) {
    const CommonZero z = numeric_singularity_oracle(f, 200);
    if (z.found) status.witness = z.point;
  }
  return status;
}

NumericForm NumericForm::from(const Polynomial& p) {
  NumericForm out;
  out.degree = std::max(p.max_degree(), 0);
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) s = std::max(s, std::abs(c.get_d()));
  if (s == 0.0) s = 1.0;
  for (const auto& [e, c] : p.terms()) out.terms.emplace_back(e, Complex(c.get_d() / s));
  return out;
}

NumericForm NumericForm::from(const QuadraticForm<Complex>& q) {
  NumericForm out;
  out.degree = 2;
  double s = 0.0;
  for (const Complex& c : q.c) s = std::max(s, std::abs(c));
  if (s == 0.0) s = 1.0;
  for (int i = 0; i < 6; ++i) {
    if (q.c[i] != Complex(0.0)) out.terms.emplace_back(kQuadMonomials[i], q.c[i] / s);
  }
  return out;
}

namespace {

Complex power(Complex base, int e) {
  Complex r(1.0);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Complex NumericForm::operator()(const std::array<Complex, 3>& x) const {
  Complex sum(0.0);
  for (const auto& [e, c] : terms) sum += c * power(x[0], e[0]) * power(x[1], e[1]) * power(x[2], e[2]);
  return sum;
}

std::array<Complex, 3> NumericForm::gradient(const std::array<Complex, 3>& x) const {
  std::array<Complex, 3> g{};
  for (const auto& [e, c] : terms) {
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      Exponent d = e;
      d[v] -= 1;
      g[v] += c * static_cast<double>(e[v]) * power(x[0], d[0]) * power(x[1], d[1]) *
              power(x[2], d[2]);
    }
  }
  return g;
}

CommonZero find_common_zero(const std::vector<NumericForm>& forms, int trials,
                            std::uint64_t seed) {
  const int m = static_cast<int>(forms.size());
  CommonZero best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(trial));
    Eigen::Vector3cd chart;
    Eigen::Vector3cd x;
    for (int v = 0; v < 3; ++v) chart(v) = complex_normal(rng);
    for (int v = 0; v < 3; ++v) x(v) = complex_normal(rng);
    x /= Complex((chart.transpose() * x)(0));  // chart^T x = 1

    bool finite = true;
    for (int iter = 0; iter < kNewtonIters; ++iter) {
      const std::array<Complex, 3> p{x(0), x(1), x(2)};
      Eigen::VectorXcd r(m + 1);
      Eigen::MatrixXcd jac(m + 1, 3);
      for (int i = 0; i < m; ++i) {
        r(i) = forms[i](p);
        const auto g = forms[i].gradient(p);
        for (int v = 0; v < 3; ++v) jac(i, v) = g[v];
      }
      r(m) = Complex((chart.transpose() * x)(0)) - Complex(1.0);
      jac.row(m) = chart.transpose();
      const Eigen::Vector3cd step = jac.completeOrthogonalDecomposition().solve(-r);
      if (!step.allFinite()) {
        finite = false;
        break;
      }
      x += step;
      if (step.norm() < 1e-15 * x.norm()) break;
    }
    if (!finite || !x.allFinite() || x.norm() == 0.0) continue;

    const Eigen::Vector3cd u = x / x.norm();
    const std::array<Complex, 3> pu{u(0), u(1), u(2)};
    double residual = 0.0;
    for (const NumericForm& form : forms) residual = std::max(residual, std::abs(form(pu)));
    if (residual < best.residual) {
      Eigen::Index k;
      u.cwiseAbs().maxCoeff(&k);
      const Eigen::Vector3cd display = u / u(k);
      best.point = {display(0), display(1), display(2)};
      best.residual = residual;
    }
    if (residual < kCommonZeroTol) {
      best.found = true;
      return best;
    }
  }
  return best;
}

CommonZero numeric_singularity_oracle(const TernaryQuartic& f, int trials, std::uint64_t seed) {
  const auto grad = gradient(f);
  return find_common_zero({NumericForm::from(grad[0]), NumericForm::from(grad[1]),
                           NumericForm::from(grad[2])},
                          trials, seed);
}

bool basepoint_check(const std::array<QuadraticForm<Complex>, 3>& forms, std::uint64_t seed,
                     int trials) {
  std::vector<NumericForm> numeric;
  for (const auto& q : forms) {
    if (std::all_of(q.c.begin(), q.c.end(), [](const Complex& c) { return c == Complex(0.0); })) {
      continue;
    }
    numeric.push_back(NumericForm::from(q));
  }
  if (numeric.empty()) return false;
  return !find_common_zero(numeric, trials, seed).found;
}

namespace {

constexpr int kAscentRestarts = 10;
constexpr int kAscentIters = 2000;
constexpr double kAscentStep = 0.5;
constexpr int kSphereStarts = 100;
constexpr int kSphereIters = 300;

using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Supergradient ascent of the minimum eigenvalue over the real family.
std::pair<double, Vec6> maximize_min_eigenvalue(const detail::NumericFamily& nf,
                                                std::uint64_t seed) {
  double best = -std::numeric_limits<double>::infinity();
  Vec6 best_lambda = Vec6::Zero();
  for (int start = 0; start <= kAscentRestarts; ++start) {
    Vec6 lambda = Vec6::Zero();
    if (start > 0) {
      auto rng = make_rng(seed, 0xA5CE47ULL + start);
      std::normal_distribution<double> n;
      for (int i = 0; i < 6; ++i) lambda(i) = n(rng);
    }
    for (int k = 0; k < kAscentIters; ++k) {
      const Eigen::SelfAdjointEigenSolver<Matrix6d> eig(nf.evaluate<double>(lambda));
      const double mu = eig.eigenvalues()(0);
      if (mu > best) {
        best = mu;
        best_lambda = lambda;
      }
      const Vec6 u = eig.eigenvectors().col(0);
      Vec6 g;
      for (int i = 0; i < 6; ++i) g(i) = u.dot(nf.basis[i] * u);
      const double norm = g.norm();
      if (norm == 0.0) break;
      lambda += (kAscentStep / std::sqrt(k + 1.0)) * g / norm;
    }
  }
  return {best, best_lambda};
}

/// Central-path refinement of max t subject to G(lambda) - t I >= 0: damped
/// Newton on s t + log det(G(lambda) - t I) for increasing s. The gap to the
/// optimum after each stage is at most 6 / s.
std::pair<double, Vec6> barrier_refine(const detail::NumericFamily& nf, const Vec6& start) {
  using Vec7 = Eigen::Matrix<double, 7, 1>;
  using Mat7 = Eigen::Matrix<double, 7, 7>;
  auto slack = [&](const Vec7& x) {
    return Matrix6d(nf.evaluate<double>(Vec6(x.head<6>())) - x(6) * Matrix6d::Identity());
  };
  // -(s t + log det S), or +inf outside the cone.
  auto objective = [&](const Vec7& x, double s) {
    const Eigen::LLT<Matrix6d> llt(slack(x));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const Eigen::VectorXd d = Eigen::MatrixXd(llt.matrixL()).diagonal();
    if ((d.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
    return -s * x(6) - 2.0 * d.array().log().sum();
  };

  Vec7 x;
  x.head<6>() = start;
  x(6) = Eigen::SelfAdjointEigenSolver<Matrix6d>(nf.evaluate<double>(start)).eigenvalues()(0) - 1.0;
  std::array<Matrix6d, 7> dirs;
  for (int i = 0; i < 6; ++i) dirs[i] = nf.basis[i];
  dirs[6] = -Matrix6d::Identity();

  for (double s = 1.0; s <= 1e12; s *= 10.0) {
    for (int it = 0; it < 100; ++it) {
      const Matrix6d inv = slack(x).inverse();
      std::array<Matrix6d, 7> p;
      for (int i = 0; i < 7; ++i) p[i] = inv * dirs[i];
      Vec7 g;
      Mat7 h;
      for (int i = 0; i < 7; ++i) {
        g(i) = -p[i].trace();
        for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = (p[i] * p[j]).trace();
      }
      g(6) -= s;
      const Vec7 step = -h.ldlt().solve(g);
      const double decrement = -g.dot(step);
      if (!(decrement > 1e-14)) break;
      const double f0 = objective(x, s);
      double alpha = 1.0;
      while (alpha > 1e-12 && !(objective(x + alpha * step, s) <= f0 - 0.25 * alpha * decrement)) {
        alpha *= 0.5;
      }
      if (alpha <= 1e-12) break;
      x += alpha * step;
    }
  }
  const Vec6 lambda = x.head<6>();
  return {Eigen::SelfAdjointEigenSolver<Matrix6d>(nf.evaluate<double>(lambda)).eigenvalues()(0),
          lambda};
}

/// Projected gradient descent of f on the unit sphere from random starts.
std::pair<double, Eigen::Vector3d> minimize_on_sphere(const QuarticCoeffs<double>& f,
                                                      std::uint64_t seed) {
  auto value = [&](const Eigen::Vector3d& x) { return eval_quartic<double>(f, {x(0), x(1), x(2)}); };
  auto grad = [&](const Eigen::Vector3d& x) {
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    for (int k = 0; k < 15; ++k) {
      const Exponent& e = kQuarticMonomials[k];
      for (int v = 0; v < 3; ++v) {
        if (e[v] == 0) continue;
        double t = f[k] * e[v];
        for (int w = 0; w < 3; ++w) t *= std::pow(x(w), e[w] - (w == v));
        g(v) += t;
      }
    }
    return g;
  };
  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector3d best_x = Eigen::Vector3d::UnitX();
  for (int start = 0; start < kSphereStarts; ++start) {
    auto rng = make_rng(seed, 0x5F4E7ULL + start);
    std::normal_distribution<double> n;
    Eigen::Vector3d x(n(rng), n(rng), n(rng));
    x.normalize();
    double fx = value(x);
    double eta = 0.1;
    for (int k = 0; k < kSphereIters && eta > 1e-14; ++k) {
      Eigen::Vector3d g = grad(x);
      g -= g.dot(x) * x;
      const Eigen::Vector3d y = (x - eta * g).normalized();
      const double fy = value(y);
      if (fy < fx) {
        x = y;
        fx = fy;
        eta *= 1.5;
      } else {
        eta *= 0.5;
      }
    }
    if (fx < best) {
      best = fx;
      best_x = x;
    }
  }
  return {best, best_x};
}

}  // namespace

PositivityStatus nonnegativity_test(const TernaryQuartic& f, const GramFamily& family,
                                    std::uint64_t seed) {
  const detail::NumericFamily nf(family);
  PositivityStatus status;

  QuarticCoeffs<double> normalized = f.to_double();
  for (double& c : normalized) c /= nf.scale;
  const auto [fmin, xmin] = minimize_on_sphere(normalized, seed);
  if (fmin < -kPsdTol) {
    std::array<mpq_class, 3> exact{mpq_class(xmin(0)), mpq_class(xmin(1)), mpq_class(xmin(2))};
    const mpq_class v = eval_quartic(f, exact);
    if (v < mpq_class(-kPsdTol) * mpq_class(nf.scale)) {
      status.counterexample = std::array<double, 3>{xmin(0), xmin(1), xmin(2)};
      status.counterexample_value = v;
    }
  }

  auto [mu, lambda] = maximize_min_eigenvalue(nf, seed);
  if (mu < -kPsdTol) {
    const auto [refined_mu, refined_lambda] = barrier_refine(nf, lambda);
    if (refined_mu > mu) {
      mu = refined_mu;
      lambda = refined_lambda;
    }
  }
  status.best_min_eigenvalue = mu;

  if (status.counterexample) {
    status.verdict = PositivityVerdict::Negative;
  } else if (mu >= -kPsdTol) {
    status.verdict = PositivityVerdict::Nonnegative;
    GramPoint cert;
    cert.lambda = (lambda * nf.scale).cast<Complex>();
    cert.matrix = family.evaluate(cert.lambda);
    cert.reality = Reality::Real;
    const Eigen::SelfAdjointEigenSolver<Matrix6d> eig(nf.evaluate<double>(lambda));
    Signature s;
    for (int i = 0; i < 6; ++i) {
      s.positive += eig.eigenvalues()(i) > kRankTol;
      s.negative += eig.eigenvalues()(i) < -kRankTol;
    }
    cert.signature = s;
    cert.numerical_rank = s.positive + s.negative;
    Eigen::Matrix<double, 6, 1> sv = eig.eigenvalues().cwiseAbs();
    std::sort(sv.data(), sv.data() + 6, std::greater<>());
    cert.fourth_singular_value = sv(3);
    status.certificate = cert;
  } else {
    status.verdict = PositivityVerdict::Indeterminate;
  }
  status.nonnegative = status.verdict == PositivityVerdict::Nonnegative;
  return status;
}

}  // namespace quartic_sos
