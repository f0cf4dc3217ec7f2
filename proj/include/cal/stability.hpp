#ifndef CAL_STABILITY_HPP
#define CAL_STABILITY_HPP

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

#include "cal/lagrangian.hpp"

namespace cal {

/// Real polynomial, coefficients highest degree first, leading coeff nonzero.
struct CharPoly {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::complex<double> eval(std::complex<double> s) const;
};

enum class Verdict { Stable, Unstable, Marginal };

std::string to_string(Verdict v);

/// Linear stability of one scalar mode: the characteristic roots of the law
/// with V_q replaced by k_eigen * q.
struct StabilityReport {
  std::string law;  // which law the polynomial came from
  double k_eigen = 0.0;
  CharPoly poly;
  std::vector<std::complex<double>> roots;
  double max_real_part = 0.0;
  bool hurwitz_stable = false;
  Verdict verdict = Verdict::Marginal;
};

// Characteristic polynomials of each law, V_q -> k q.
CharPoly char_poly_oscillator(double m, double theta, double k);
CharPoly char_poly_case_i(double alpha1, double alpha2, double theta, double gamma, double k);
CharPoly char_poly_case_ii(double rho, double nu, double eps_dis, double gamma, double k);
CharPoly char_poly_collapsed_theta(double alpha1, double alpha2, double gamma, double k);
CharPoly char_poly_collapsed_eps(double rho, double nu, double gamma, double k);

/// Polynomial of the spec's own law; `collapsed` selects the second-order
/// limit law of a fourth-order spec.
CharPoly characteristic_polynomial(const LagrangianSpec& spec, double k_eigen,
                                   bool collapsed = false);

/// All complex roots via the balanced companion matrix. Each root satisfies
/// the scaled backward-error bound |p(r)| <= 1e-9 * sum_i |a_i| |r|^(n-i).
std::vector<std::complex<double>> polynomial_roots(const CharPoly& p);

/// Routh-Hurwitz criterion for degrees 2..4: true iff every root has a
/// strictly negative real part.
bool routh_hurwitz_stable(const CharPoly& p);

/// One report per Hessian eigenvalue of the potential at the equilibrium.
/// Fails the precondition unless |grad| <= 1e-8 there.
std::vector<StabilityReport> classify(const LagrangianSpec& spec, const Potential& p,
                                      const Eigen::VectorXd& equilibrium,
                                      bool collapsed = false);

/// Overall verdict: stable iff every mode is stable; a marginal mode makes
/// the whole classification marginal unless some mode is outright unstable.
Verdict overall_verdict(const std::vector<StabilityReport>& reports);

}  // namespace cal

#endif  // CAL_STABILITY_HPP
