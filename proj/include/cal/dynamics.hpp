#ifndef CAL_DYNAMICS_HPP
#define CAL_DYNAMICS_HPP

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "cal/lagrangian.hpp"

namespace cal {

/// Jet (q, qdot, qddot, q3) of a trajectory at one instant. Laws of lower
/// order populate only the leading blocks and keep the rest zero.
struct State4 {
  Eigen::VectorXd q;
  Eigen::VectorXd qdot;
  Eigen::VectorXd qddot;
  Eigen::VectorXd q3;

  static State4 zero(int n);
  int dim() const { return static_cast<int>(q.size()); }
};

struct TrajectoryMeta {
  std::string integrator;
  double step = 0.0;  // fixed step, or initial step for adaptive
  bool diverged = false;
  double blowup_time = 0.0;  // meaningful only when diverged
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State4> states;
  TrajectoryMeta meta;

  std::size_t size() const { return times.size(); }
};

// ---------------------------------------------------------------------------
// Right-hand sides. Each returns the highest derivative solved from its law.
// ---------------------------------------------------------------------------

/// m qddot + theta qdot + V_q = 0.
Eigen::VectorXd damped_oscillator_rhs(double m, double theta, const Potential& p, double t,
                                      const Eigen::VectorXd& q, const Eigen::VectorXd& qdot);

/// qdot = -V_q / theta.
Eigen::VectorXd gradient_flow_rhs(double theta, const Potential& p, double t,
                                  const Eigen::VectorXd& q);

/// Fourth-order law of the growing-weight case. Solves for q4 in
///   (1/theta^2) q4 + (2/theta) q3 + c2 qddot + c1 qdot + (gamma/alpha2^2) V_q = 0
/// with c2 = (a1 a2 th + a2^2 th^2 - a1^2)/(a2^2 th^2),
///      c1 = (a1 a2 th^2 - a1^2 th)/(a2^2 th^2).
Eigen::VectorXd fourth_order_stab_rhs(const LagrangianSpec& spec, double t, const State4& s);

/// Fourth-order law of the decaying-weight case.
///   q4 = (2 e rho q3 - (rho - e nu) qddot - nu qdot - gamma V_q) / (e^2 rho).
Eigen::VectorXd fourth_order_uns_rhs(const LagrangianSpec& spec, double t, const State4& s);

/// Second-order-kinetic Euler-Lagrange law for arbitrary constant weight
/// ratios r1 = hdot/h, r2 = hddot/h. Ratios (theta, theta^2) reproduce
/// fourth_order_stab_rhs; (0, 0) is the unweighted autonomous law.
Eigen::VectorXd kinetic_el_rhs(const SecondOrderKinetic& kin, double gamma, const Potential& p,
                               double r1, double r2, double t, const State4& s);

/// theta -> infinity limit: qddot + (a1/a2) qdot + (gamma/a2^2) V_q = 0.
Eigen::VectorXd collapsed_theta_rhs(double alpha1, double alpha2, double gamma,
                                    const Potential& p, double t, const Eigen::VectorXd& q,
                                    const Eigen::VectorXd& qdot);

/// eps -> 0 limit: rho qddot + nu qdot + gamma V_q = 0.
Eigen::VectorXd collapsed_eps_rhs(double rho, double nu, double gamma, const Potential& p,
                                  double t, const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& qdot);

/// Cauchy jet whose qddot, q3 are consistent with the collapsed theta law,
/// placing the fourth-order system on the slow manifold up to O(1/theta).
State4 collapsed_theta_jet(double alpha1, double alpha2, double gamma, const Potential& p,
                           double t, const Eigen::VectorXd& q0, const Eigen::VectorXd& qdot0);

// ---------------------------------------------------------------------------
// Boundary-condition residuals at the trajectory endpoint.
// ---------------------------------------------------------------------------

/// The two displayed endpoint conditions of each fourth-order case, verbatim.
std::pair<Eigen::VectorXd, Eigen::VectorXd> boundary_residuals_printed(const LagrangianSpec& spec,
                                                                       const State4& s_end);

/// The natural conditions (L_p - d/dt L_a)/h and L_a/h, with d/dt L_a
/// expanded analytically through the weight ratios.
std::pair<Eigen::VectorXd, Eigen::VectorXd> boundary_residuals_generic(const LagrangianSpec& spec,
                                                                       double t_end,
                                                                       const State4& s_end);

// ---------------------------------------------------------------------------
// Trajectory-level checks.
// ---------------------------------------------------------------------------

/// Euler-Lagrange residual (d^2/dt^2 L_a - d/dt L_p + L_q)/h per interior
/// sample, time derivatives taken by central differences on the uniform
/// trajectory grid. For first-order specs the L_a term vanishes.
/// Requires >= 5 uniformly spaced samples.
std::vector<Eigen::VectorXd> el_residual(const Trajectory& traj, const LagrangianSpec& spec);

/// 1/2 m |qdot|^2 + V(q, t).
double mechanical_energy(double m, const Potential& p, double t, const Eigen::VectorXd& q,
                         const Eigen::VectorXd& qdot);

/// Conserved quantity of the autonomous (h == 1) second-order-kinetic law:
/// qdot . (L_p - d/dt L_a) + qddot . L_a - Lbar.
double ostrogradsky_energy(const SecondOrderKinetic& kin, double gamma, const Potential& p,
                           double t, const State4& s);

}  // namespace cal

#endif  // CAL_DYNAMICS_HPP
