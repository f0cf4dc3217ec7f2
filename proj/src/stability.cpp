#include "cal/stability.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "cal/errors.hpp"

namespace cal {

namespace {
constexpr double kMarginBand = 1e-9;
}

std::complex<double> CharPoly::eval(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (double c : coeffs) acc = acc * s + c;
  return acc;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::Unstable: return "unstable";
    default: return "marginal";
  }
}

CharPoly char_poly_oscillator(double m, double theta, double k) {
  return CharPoly{{m, theta, k}};
}

CharPoly char_poly_case_i(double alpha1, double alpha2, double theta, double gamma, double k) {
  const double a2sq_thsq = alpha2 * alpha2 * theta * theta;
  const double c2 = (alpha1 * alpha2 * theta + alpha2 * alpha2 * theta * theta -
                     alpha1 * alpha1) /
                    a2sq_thsq;
  const double c1 = (alpha1 * alpha2 * theta * theta - alpha1 * alpha1 * theta) / a2sq_thsq;
  return CharPoly{{1.0 / (theta * theta), 2.0 / theta, c2, c1, gamma * k / (alpha2 * alpha2)}};
}

CharPoly char_poly_case_ii(double rho, double nu, double eps_dis, double gamma, double k) {
  const double e = eps_dis;
  return CharPoly{{e * e * rho, -2.0 * e * rho, rho - e * nu, nu, gamma * k}};
}

CharPoly char_poly_collapsed_theta(double alpha1, double alpha2, double gamma, double k) {
  return CharPoly{{1.0, alpha1 / alpha2, gamma * k / (alpha2 * alpha2)}};
}

CharPoly char_poly_collapsed_eps(double rho, double nu, double gamma, double k) {
  return CharPoly{{rho, nu, gamma * k}};
}

CharPoly characteristic_polynomial(const LagrangianSpec& spec, double k_eigen, bool collapsed) {
  if (spec.is_first_order()) {
    const auto& f = spec.first_order();
    return char_poly_oscillator(f.m, f.weight.ratio_dot(), k_eigen);
  }
  if (spec.is_case_i()) {
    const auto& c = spec.case_i();
    if (collapsed)
      return char_poly_collapsed_theta(c.kinetic.alpha1, c.kinetic.alpha2, c.gamma, k_eigen);
    return char_poly_case_i(c.kinetic.alpha1, c.kinetic.alpha2, c.kinetic.theta, c.gamma,
                            k_eigen);
  }
  const auto& c = spec.case_ii();
  if (collapsed) return char_poly_collapsed_eps(c.rho, c.nu, c.gamma, k_eigen);
  return char_poly_case_ii(c.rho, c.nu, c.eps_dis, c.gamma, k_eigen);
}

std::vector<std::complex<double>> polynomial_roots(const CharPoly& p) {
  detail::require(!p.coeffs.empty() && p.coeffs.front() != 0.0,
                  "polynomial_roots: leading coefficient must be nonzero");
  detail::require(p.degree() >= 1, "polynomial_roots: degree must be >= 1");

  const int n = p.degree();
  std::vector<std::complex<double>> roots;
  if (n == 1) {
    roots.push_back({-p.coeffs[1] / p.coeffs[0], 0.0});
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeffs[n - i] / p.coeffs[0];
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()[i]);
  }

  for (const auto& r : roots) {
    // Backward error against the polynomial evaluated with absolute coeffs.
    double scale = 0.0;
    const double ar = std::abs(r);
    for (double c : p.coeffs) scale = scale * ar + std::abs(c);
    detail::require(std::abs(p.eval(r)) <= 1e-9 * std::max(scale, 1e-300),
                    "polynomial_roots: root failed the backward-error bound");
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

bool routh_hurwitz_stable(const CharPoly& p) {
  const int deg = p.degree();
  detail::require(deg >= 2 && deg <= 4, "routh_hurwitz_stable: degree must be 2, 3 or 4");

  std::vector<double> a = p.coeffs;
  if (a[0] < 0.0)
    for (double& c : a) c = -c;

  // Necessary: every coefficient strictly positive.
  for (double c : a)
    if (!(c > 0.0)) return false;

  if (deg == 2) return true;
  if (deg == 3) return a[1] * a[2] > a[0] * a[3];
  // deg == 4: first-column entries of the Routh array.
  const double b1 = (a[1] * a[2] - a[0] * a[3]) / a[1];
  if (!(b1 > 0.0)) return false;
  const double c1 = a[3] - a[1] * a[4] / b1;
  return c1 > 0.0;
}

std::vector<StabilityReport> classify(const LagrangianSpec& spec, const Potential& p,
                                      const Eigen::VectorXd& equilibrium, bool collapsed) {
  detail::require(p.grad(equilibrium, 0.0).norm() <= 1e-8,
                  "classify: point is not an equilibrium of the potential");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.hessian(equilibrium, 0.0));
  detail::require(es.info() == Eigen::Success, "classify: Hessian eigendecomposition failed");

  std::string law;
  if (spec.is_first_order()) law = "oscillator";
  else if (spec.is_case_i()) law = collapsed ? "collapsed-theta" : "fourth-stab";
  else law = collapsed ? "collapsed-eps" : "fourth-uns";

  std::vector<StabilityReport> reports;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    StabilityReport rep;
    rep.law = law;
    rep.k_eigen = es.eigenvalues()[i];
    rep.poly = characteristic_polynomial(spec, rep.k_eigen, collapsed);
    rep.roots = polynomial_roots(rep.poly);
    rep.max_real_part = rep.roots.front().real();
    for (const auto& r : rep.roots) rep.max_real_part = std::max(rep.max_real_part, r.real());
    if (std::abs(rep.max_real_part) <= kMarginBand) {
      rep.verdict = Verdict::Marginal;
      rep.hurwitz_stable = false;
    } else {
      rep.verdict = rep.max_real_part < 0.0 ? Verdict::Stable : Verdict::Unstable;
      const int deg = rep.poly.degree();
      rep.hurwitz_stable =
          (deg >= 2 && deg <= 4) ? routh_hurwitz_stable(rep.poly) : rep.max_real_part < 0.0;
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

Verdict overall_verdict(const std::vector<StabilityReport>& reports) {
  bool marginal = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Unstable) return Verdict::Unstable;
    if (r.verdict == Verdict::Marginal) marginal = true;
  }
  return marginal ? Verdict::Marginal : Verdict::Stable;
}

}  // namespace cal
