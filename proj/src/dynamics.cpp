#include "cal/dynamics.hpp"

#include <cmath>

#include "cal/errors.hpp"

namespace cal {

State4 State4::zero(int n) {
  State4 s;
  s.q = Eigen::VectorXd::Zero(n);
  s.qdot = Eigen::VectorXd::Zero(n);
  s.qddot = Eigen::VectorXd::Zero(n);
  s.q3 = Eigen::VectorXd::Zero(n);
  return s;
}

Eigen::VectorXd damped_oscillator_rhs(double m, double theta, const Potential& p, double t,
                                      const Eigen::VectorXd& q, const Eigen::VectorXd& qdot) {
  detail::require(m > 0.0, "damped_oscillator_rhs: m must be > 0");
  detail::require(q.size() == qdot.size(), "damped_oscillator_rhs: dimension mismatch");
  return -(theta * qdot + p.grad(q, t)) / m;
}

Eigen::VectorXd gradient_flow_rhs(double theta, const Potential& p, double t,
                                  const Eigen::VectorXd& q) {
  detail::require(theta > 0.0, "gradient_flow_rhs: theta must be > 0");
  return -p.grad(q, t) / theta;
}

Eigen::VectorXd fourth_order_stab_rhs(const LagrangianSpec& spec, double t, const State4& s) {
  detail::require(spec.is_case_i(), "fourth_order_stab_rhs: spec must be case i");
  const auto& c = spec.case_i();
  const double a1 = c.kinetic.alpha1;
  const double a2 = c.kinetic.alpha2;
  const double th = c.kinetic.theta;
  const double a2sq_thsq = a2 * a2 * th * th;
  const double c2 = (a1 * a2 * th + a2 * a2 * th * th - a1 * a1) / a2sq_thsq;
  const double c1 = (a1 * a2 * th * th - a1 * a1 * th) / a2sq_thsq;
  const Eigen::VectorXd vq = c.potential.grad(s.q, t);
  return -th * th *
         ((2.0 / th) * s.q3 + c2 * s.qddot + c1 * s.qdot + (c.gamma / (a2 * a2)) * vq);
}

Eigen::VectorXd fourth_order_uns_rhs(const LagrangianSpec& spec, double t, const State4& s) {
  detail::require(spec.is_case_ii(), "fourth_order_uns_rhs: spec must be case ii");
  const auto& c = spec.case_ii();
  const double e = c.eps_dis;
  const Eigen::VectorXd vq = c.potential.grad(s.q, t);
  return (2.0 * e * c.rho * s.q3 - (c.rho - e * c.nu) * s.qddot - c.nu * s.qdot -
          c.gamma * vq) /
         (e * e * c.rho);
}

Eigen::VectorXd kinetic_el_rhs(const SecondOrderKinetic& kin, double gamma, const Potential& p,
                               double r1, double r2, double t, const State4& s) {
  // Full expansion of d^2/dt^2 T_a + 2 r1 d/dt T_a + r2 T_a - d/dt T_p - r1 T_p
  // + gamma V_q = 0, solved for q4.
  const double a1 = kin.alpha1;
  const double a2 = kin.alpha2;
  const double thsq = kin.theta * kin.theta;
  const double a2sq = a2 * a2;
  const Eigen::VectorXd vq = p.grad(s.q, t);
  const double c3 = 2.0 * r1;
  const double c2 = (r1 * a1 * a2 + r2 * a2sq - a1 * a1) / a2sq;
  const double c1 = (r2 * a1 * a2 - r1 * a1 * a1) / a2sq;
  return -(c3 * s.q3 + c2 * s.qddot + c1 * s.qdot + (gamma * thsq / a2sq) * vq);
}

Eigen::VectorXd collapsed_theta_rhs(double alpha1, double alpha2, double gamma,
                                    const Potential& p, double t, const Eigen::VectorXd& q,
                                    const Eigen::VectorXd& qdot) {
  detail::require(alpha2 != 0.0, "collapsed_theta_rhs: alpha2 must be nonzero");
  return -(alpha1 / alpha2) * qdot - (gamma / (alpha2 * alpha2)) * p.grad(q, t);
}

Eigen::VectorXd collapsed_eps_rhs(double rho, double nu, double gamma, const Potential& p,
                                  double t, const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& qdot) {
  detail::require(rho > 0.0, "collapsed_eps_rhs: rho must be > 0");
  return -(nu * qdot + gamma * p.grad(q, t)) / rho;
}

State4 collapsed_theta_jet(double alpha1, double alpha2, double gamma, const Potential& p,
                           double t, const Eigen::VectorXd& q0, const Eigen::VectorXd& qdot0) {
  State4 s;
  s.q = q0;
  s.qdot = qdot0;
  s.qddot = collapsed_theta_rhs(alpha1, alpha2, gamma, p, t, q0, qdot0);
  // Time derivative of the collapsed law; V treated as frozen in t between
  // schedule breakpoints.
  s.q3 = -(alpha1 / alpha2) * s.qddot -
         (gamma / (alpha2 * alpha2)) * (p.hessian(q0, t) * qdot0);
  return s;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> boundary_residuals_printed(const LagrangianSpec& spec,
                                                                       const State4& s_end) {
  detail::require(!spec.is_first_order(),
                  "boundary_residuals_printed: spec must be case i or case ii");
  if (spec.is_case_i()) {
    const auto& k = spec.case_i().kinetic;
    const double thsq = k.theta * k.theta;
    Eigen::VectorXd r1 =
        (k.alpha1 * k.alpha1 / thsq) * s_end.qdot - (k.alpha2 * k.alpha2 / thsq) * s_end.q3;
    Eigen::VectorXd r2 =
        (k.alpha1 * k.alpha2 / thsq) * s_end.qdot + (k.alpha2 * k.alpha2 / thsq) * s_end.qddot;
    return {std::move(r1), std::move(r2)};
  }
  const auto& c = spec.case_ii();
  const double e = c.eps_dis;
  Eigen::VectorXd r1 = e * e * c.rho * s_end.qddot;
  Eigen::VectorXd r2 = e * c.nu * s_end.qddot - c.rho * e * e * s_end.q3;
  return {std::move(r1), std::move(r2)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> boundary_residuals_generic(const LagrangianSpec& spec,
                                                                       double t_end,
                                                                       const State4& s_end) {
  detail::require(!spec.is_first_order(),
                  "boundary_residuals_generic: spec must provide a second-order kinetic term");
  const double rdot = spec.weight().ratio_dot();
  const Partials pp = unweighted_partials(spec, t_end, s_end.q, s_end.qdot, s_end.qddot);
  // d/dt L_a = h (rdot T_a + T_a'), with T_a' evaluated on the jet.
  Eigen::VectorXd ta_dot;
  if (spec.is_case_i()) {
    const auto& k = spec.case_i().kinetic;
    ta_dot = (k.alpha2 / (k.theta * k.theta)) * (k.alpha1 * s_end.qddot + k.alpha2 * s_end.q3);
  } else {
    const auto& c = spec.case_ii();
    ta_dot = c.eps_dis * c.eps_dis * c.rho * s_end.q3;
  }
  Eigen::VectorXd r1 = pp.L_p - rdot * pp.L_a - ta_dot;
  Eigen::VectorXd r2 = pp.L_a;
  return {std::move(r1), std::move(r2)};
}

std::vector<Eigen::VectorXd> el_residual(const Trajectory& traj, const LagrangianSpec& spec) {
  const std::size_t n = traj.size();
  detail::require(n >= 5, "el_residual: need at least 5 samples");
  detail::require(traj.states.size() == n, "el_residual: times/states length mismatch");
  const double dt = traj.times[1] - traj.times[0];
  detail::require(dt > 0.0, "el_residual: times must be increasing");
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = traj.times[i + 1] - traj.times[i];
    detail::require(std::abs(d - dt) <= 1e-9 * std::max(1.0, std::abs(dt)),
                    "el_residual: grid is not uniform, resample first");
  }

  const WeightFn w = spec.weight();
  // h(t_{i+1})/h(t_i) and h(t_{i-1})/h(t_i); constants on a uniform grid.
  const double rp = w.step_ratio(dt);
  const double rm = w.step_ratio(-dt);

  std::vector<Partials> parts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = traj.states[i];
    parts[i] = unweighted_partials(spec, traj.times[i], s.q, s.qdot, s.qddot);
  }

  std::vector<Eigen::VectorXd> out;
  out.reserve(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    Eigen::VectorXd r =
        parts[i].L_q - (rp * parts[i + 1].L_p - rm * parts[i - 1].L_p) / (2.0 * dt);
    if (!spec.is_first_order()) {
      r += (rp * parts[i + 1].L_a - 2.0 * parts[i].L_a + rm * parts[i - 1].L_a) / (dt * dt);
    }
    out.push_back(std::move(r));
  }
  return out;
}

double mechanical_energy(double m, const Potential& p, double t, const Eigen::VectorXd& q,
                         const Eigen::VectorXd& qdot) {
  return 0.5 * m * qdot.squaredNorm() + p.eval(q, t);
}

double ostrogradsky_energy(const SecondOrderKinetic& kin, double gamma, const Potential& p,
                           double t, const State4& s) {
  const double w = 1.0 / (kin.theta * kin.theta);
  const Eigen::VectorXd op = kin.alpha1 * s.qdot + kin.alpha2 * s.qddot;
  const Eigen::VectorXd t_p = kin.alpha1 * w * op;
  const Eigen::VectorXd t_a = kin.alpha2 * w * op;
  const Eigen::VectorXd t_a_dot = kin.alpha2 * w * (kin.alpha1 * s.qddot + kin.alpha2 * s.q3);
  const double lbar = kinetic_eval(kin, s.qdot, s.qddot) + gamma * p.eval(s.q, t);
  return s.qdot.dot(t_p - t_a_dot) + s.qddot.dot(t_a) - lbar;
}

}  // namespace cal
