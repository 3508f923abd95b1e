#include "quartic_sos/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace quartic_sos {

namespace {

bool form_is_real(const QuadraticForm<Complex>& q) {
  return std::all_of(q.c.begin(), q.c.end(), [](const Complex& c) { return c.imag() == 0.0; });
}

double max_abs(const QuarticCoeffs<Complex>& c) {
  double m = 0.0;
  for (const Complex& v : c) m = std::max(m, std::abs(v));
  return m;
}

double complex_residual(const QuarticCoeffs<Complex>& target, const Representation& rep) {
  QuarticCoeffs<Complex> diff = target;
  for (int k = 0; k < 3; ++k) {
    const QuarticCoeffs<Complex> sq = quad_square(rep.forms[k]);
    for (int i = 0; i < 15; ++i) diff[i] -= static_cast<double>(rep.signs[k]) * sq[i];
  }
  const double scale = max_abs(target);
  return max_abs(diff) / (scale > 0.0 ? scale : 1.0);
}

QuarticCoeffs<Complex> quartic_of(const Matrix6c& g) {
  return gram_to_quartic(from_dense(g));
}

void check_rank(const Eigen::VectorXd& singular_values, double scale) {
  const double s4 = singular_values(3) / scale;
  if (!(s4 < kRankTol)) throw RankMismatch(s4);
}

}  // namespace

bool Representation::is_real() const {
  return std::all_of(forms.begin(), forms.end(), form_is_real);
}

bool Representation::all_plus() const {
  return std::all_of(signs.begin(), signs.end(), [](int s) { return s > 0; });
}

bool Representation::mixed_signs() const {
  const bool plus = std::any_of(signs.begin(), signs.end(), [](int s) { return s > 0; });
  const bool minus = std::any_of(signs.begin(), signs.end(), [](int s) { return s < 0; });
  return is_real() && plus && minus;
}

Representation factor_real(const Matrix6d& g, double scale) {
  const Eigen::SelfAdjointEigenSolver<Matrix6d> eig(g);
  std::array<int, 6> order;
  std::iota(order.begin(), order.end(), 0);
  const auto& mu = eig.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(mu(a)) > std::abs(mu(b)); });
  Eigen::VectorXd sv(6);
  for (int i = 0; i < 6; ++i) sv(i) = std::abs(mu(order[i]));
  check_rank(sv, scale);

  Representation rep;
  for (int k = 0; k < 3; ++k) {
    const int idx = order[k];
    rep.signs[k] = mu(idx) < 0 ? -1 : 1;
    const double root = std::sqrt(std::abs(mu(idx)));
    for (int i = 0; i < 6; ++i) rep.forms[k].c[i] = Complex(root * eig.eigenvectors()(i, idx));
  }
  rep.residual = complex_residual(quartic_of(g.cast<Complex>()), rep);
  return rep;
}

Representation factor_complex(const Matrix6c& g, double scale) {
  const Eigen::JacobiSVD<Matrix6c> svd(g);
  check_rank(svd.singularValues(), scale);

  Matrix6c a = g / scale;
  std::vector<Eigen::Matrix<Complex, 6, 1>> vectors;
  while (vectors.size() < 3) {
    Eigen::Index k;
    const double diag = a.diagonal().cwiseAbs().maxCoeff(&k);
    if (diag > kPivotTol) {
      const Eigen::Matrix<Complex, 6, 1> v = a.col(k) / std::sqrt(a(k, k));
      vectors.push_back(v);
      a -= v * v.transpose();
      continue;
    }
    if (vectors.size() == 2) break;  // a rank-1 remainder always has a diagonal pivot
    Eigen::Index j;
    a.cwiseAbs().maxCoeff(&j, &k);
    const Complex pivot = a(j, k);
    if (std::abs(pivot) <= kPivotTol) break;
    // The rank-2 part (U W^T + W U^T) / a equals s t with s = U m sqrt(2/a) and
    // t = W m sqrt(2/a); then s t = ((s + t) / 2)^2 + (i (s - t) / 2)^2.
    const Eigen::Matrix<Complex, 6, 1> u = a.col(j);
    const Eigen::Matrix<Complex, 6, 1> w = a.col(k);
    const Complex r = std::sqrt(2.0 / pivot);
    const Eigen::Matrix<Complex, 6, 1> s = u * r;
    const Eigen::Matrix<Complex, 6, 1> t = w * r;
    vectors.push_back((s + t) / 2.0);
    vectors.push_back(Complex(0.0, 1.0) * (s - t) / 2.0);
    a -= (u * w.transpose() + w * u.transpose()) / pivot;
  }

  Representation rep;
  const double root = std::sqrt(scale);
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    for (int i = 0; i < 6; ++i) rep.forms[k].c[i] = vectors[k](i) * root;
  }
  rep.residual = complex_residual(quartic_of(g), rep);
  return rep;
}

void normalize(Representation& rep) {
  for (auto& form : rep.forms) {
    double m = 0.0;
    for (const Complex& c : form.c) m = std::max(m, std::abs(c));
    if (m == 0.0) continue;
    const auto lead = std::find_if(form.c.begin(), form.c.end(),
                                   [&](const Complex& c) { return std::abs(c) > 1e-12 * m; });
    const bool flip = std::abs(lead->real()) > 1e-12 * std::abs(*lead) ? lead->real() < 0.0
                                                                       : lead->imag() < 0.0;
    if (flip) {
      for (Complex& c : form.c) c = -c;
    }
  }
  std::array<int, 3> order{0, 1, 2};
  auto key = [&](int k) {
    std::array<double, 12> out;
    for (int i = 0; i < 6; ++i) {
      out[2 * i] = rep.forms[k].c[i].real();
      out[2 * i + 1] = rep.forms[k].c[i].imag();
    }
    return out;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (rep.signs[a] != rep.signs[b]) return rep.signs[a] > rep.signs[b];
    return key(a) > key(b);
  });
  const Representation copy = rep;
  for (int k = 0; k < 3; ++k) {
    rep.signs[k] = copy.signs[order[k]];
    rep.forms[k] = copy.forms[order[k]];
  }
}

double representation_residual(const TernaryQuartic& f, const Representation& rep) {
  if (rep.is_real()) {
    QuarticCoeffs<mpq_class> diff = f.coeffs();
    for (int k = 0; k < 3; ++k) {
      QuadraticForm<mpq_class> q;
      for (int i = 0; i < 6; ++i) q.c[i] = mpq_class(rep.forms[k].c[i].real());
      const QuarticCoeffs<mpq_class> sq = quad_square(q);
      for (int i = 0; i < 15; ++i) diff[i] -= rep.signs[k] * sq[i];
    }
    mpq_class worst = 0;
    mpq_class scale = 0;
    for (int i = 0; i < 15; ++i) {
      worst = std::max<mpq_class>(worst, abs(diff[i]));
      scale = std::max<mpq_class>(scale, abs(f.coeffs()[i]));
    }
    return mpq_class(worst / scale).get_d();
  }
  QuarticCoeffs<Complex> target;
  const QuarticCoeffs<double> fd = f.to_double();
  for (int i = 0; i < 15; ++i) target[i] = fd[i];
  return complex_residual(target, rep);
}

Verification verify_representation(const TernaryQuartic& f, const Representation& rep) {
  Verification v;
  v.exact = rep.is_real();
  v.residual = representation_residual(f, rep);
  v.pass = v.residual <= kResidualTol;
  v.basepoint_free = basepoint_check(rep.forms);
  return v;
}

Representation classify_point(const GramFamily& family, const GramPoint& point) {
  const double scale = family.source.scale();
  Representation rep = point.reality == Reality::Real
                           ? factor_real(point.matrix.real(), scale)
                           : factor_complex(point.matrix, scale);
  rep.class_lambda = point.lambda;
  normalize(rep);
  rep.residual = representation_residual(family.source, rep);
  return rep;
}

std::string to_string(Hypothesis h) {
  return h == Hypothesis::Smooth ? "smooth" : "nonnegative";
}

std::vector<Representation> PipelineReport::real_certificates() const {
  std::vector<Representation> out;
  for (const Representation& r : representations) {
    if (r.is_real() && r.all_plus()) out.push_back(r);
  }
  for (const Representation& r : representations) {
    if (r.is_real() && !r.all_plus()) out.push_back(r);
  }
  return out;
}

PipelineReport run_pipeline(const TernaryQuartic& f, const SolveConfig& config) {
  PipelineReport report;
  report.curve = smoothness_test(f);
  if (!report.curve.smooth) {
    report.failed = Hypothesis::Smooth;
    return report;
  }
  const GramFamily family = build_family(f);
  report.positivity = nonnegativity_test(f, family, config.master_seed);
  if (!report.positivity->nonnegative) report.failed = Hypothesis::Nonnegative;

  report.solutions = solve_all(family, config);
  const SolutionSet& set = *report.solutions;
  report.residuals_ok = true;
  report.signatures_agree = true;
  for (const GramPoint& p : set.points) {
    Representation rep;
    try {
      rep = classify_point(family, p);
    } catch (const RankMismatch&) {
      rep.class_lambda = p.lambda;
      rep.residual = std::numeric_limits<double>::infinity();
    }
    report.residuals_ok = report.residuals_ok && rep.residual <= kResidualTol;
    if (p.reality == Reality::Real) {
      const int plus = static_cast<int>(std::count(rep.signs.begin(), rep.signs.end(), 1));
      if (!p.signature || !rep.is_real() || plus != p.signature->positive ||
          3 - plus != p.signature->negative) {
        report.signatures_agree = false;
      }
    }
    if (!rep.is_real()) {
      ++report.non_real;
    } else if (rep.all_plus()) {
      ++report.sum_of_squares;
    } else if (rep.mixed_signs()) {
      ++report.signed_real;
    }
    report.representations.push_back(std::move(rep));
  }
  report.psd_paths_agree = report.sum_of_squares == set.counts.psd_total;
  report.count_report = certify_count(set);
  report.pass = !report.failed && report.count_report->pass && report.residuals_ok &&
                report.signatures_agree && report.psd_paths_agree &&
                report.sum_of_squares == kExpectedCounts.psd_total &&
                report.signed_real == kExpectedCounts.real_total - kExpectedCounts.psd_total &&
                report.non_real == kExpectedCounts.complex_total - kExpectedCounts.real_total;
  return report;
}

}  // namespace quartic_sos
