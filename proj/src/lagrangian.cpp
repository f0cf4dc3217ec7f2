#include "cal/lagrangian.hpp"

#include <cmath>

#include "cal/errors.hpp"

namespace cal {

WeightFn::WeightFn(ExpPos e) : form_(e) {
  detail::require(e.theta > 0.0, "ExpPos: theta must be > 0");
}

WeightFn::WeightFn(ExpNeg e) : form_(e) {
  detail::require(e.eps_dis > 0.0, "ExpNeg: eps_dis must be > 0");
}

double WeightFn::ratio_dot() const {
  if (const auto* e = std::get_if<ExpPos>(&form_)) return e->theta;
  if (const auto* e = std::get_if<ExpNeg>(&form_)) return -1.0 / e->eps_dis;
  return 0.0;
}

double WeightFn::ratio_ddot() const {
  const double r = ratio_dot();
  return r * r;
}

double kinetic_eval(const SecondOrderKinetic& k, const Eigen::VectorXd& qdot,
                    const Eigen::VectorXd& qddot) {
  detail::require(qdot.size() == qddot.size(), "kinetic_eval: dimension mismatch");
  const Eigen::VectorXd op = k.alpha1 * qdot + k.alpha2 * qddot;
  return 0.5 / (k.theta * k.theta) * op.squaredNorm();
}

LagrangianSpec::LagrangianSpec(FirstOrderLagrangian first) : form_(std::move(first)) {
  detail::require(std::get<FirstOrderLagrangian>(form_).m > 0.0,
                  "FirstOrderLagrangian: m must be > 0");
}

LagrangianSpec::LagrangianSpec(CaseISpec case_i) : form_(std::move(case_i)) {
  const auto& k = std::get<CaseISpec>(form_).kinetic;
  detail::require(k.alpha2 != 0.0, "SecondOrderKinetic: alpha2 must be nonzero");
  detail::require(k.theta > 0.0, "SecondOrderKinetic: theta must be > 0");
}

LagrangianSpec::LagrangianSpec(CaseIISpec case_ii) : form_(std::move(case_ii)) {
  const auto& c = std::get<CaseIISpec>(form_);
  detail::require(c.rho > 0.0 && c.nu > 0.0 && c.eps_dis > 0.0,
                  "CaseIISpec: rho, nu, eps_dis must be > 0");
}

const Potential& LagrangianSpec::potential() const {
  if (is_first_order()) return first_order().potential;
  if (is_case_i()) return case_i().potential;
  return case_ii().potential;
}

WeightFn LagrangianSpec::weight() const {
  if (is_first_order()) return first_order().weight;
  if (is_case_i()) return WeightFn(ExpPos{case_i().kinetic.theta});
  return WeightFn(ExpNeg{case_ii().eps_dis});
}

Partials unweighted_partials(const LagrangianSpec& spec, double t, const Eigen::VectorXd& q,
                             const Eigen::VectorXd& qdot, const Eigen::VectorXd& qddot) {
  detail::require(q.size() == qdot.size() && q.size() == qddot.size(),
                  "partials: jet dimension mismatch");
  Partials out;
  if (spec.is_first_order()) {
    const auto& f = spec.first_order();
    out.L_q = f.gamma * f.potential.grad(q, t);
    out.L_p = f.m * qdot;
    out.L_a = Eigen::VectorXd::Zero(q.size());
    return out;
  }
  if (spec.is_case_i()) {
    const auto& c = spec.case_i();
    const auto& k = c.kinetic;
    const double w = 1.0 / (k.theta * k.theta);
    const Eigen::VectorXd op = k.alpha1 * qdot + k.alpha2 * qddot;
    out.L_q = c.gamma * c.potential.grad(q, t);
    out.L_p = k.alpha1 * w * op;
    out.L_a = k.alpha2 * w * op;
    return out;
  }
  const auto& c = spec.case_ii();
  const double e = c.eps_dis;
  out.L_q = c.gamma * c.potential.grad(q, t);
  out.L_p = e * c.nu * qdot;
  out.L_a = e * e * c.rho * qddot;
  return out;
}

Partials lagrangian_partials(const LagrangianSpec& spec, double t, const Eigen::VectorXd& q,
                             const Eigen::VectorXd& qdot, const Eigen::VectorXd& qddot) {
  Partials out = unweighted_partials(spec, t, q, qdot, qddot);
  const double h = spec.weight().weight(t);
  out.L_q *= h;
  out.L_p *= h;
  out.L_a *= h;
  return out;
}

double unweighted_integrand(const LagrangianSpec& spec, double t, const Eigen::VectorXd& q,
                            const Eigen::VectorXd& qdot, const Eigen::VectorXd& qddot) {
  detail::require(q.size() == qdot.size() && q.size() == qddot.size(),
                  "integrand: jet dimension mismatch");
  if (spec.is_first_order()) {
    const auto& f = spec.first_order();
    return 0.5 * f.m * qdot.squaredNorm() + f.gamma * f.potential.eval(q, t);
  }
  if (spec.is_case_i()) {
    const auto& c = spec.case_i();
    return kinetic_eval(c.kinetic, qdot, qddot) + c.gamma * c.potential.eval(q, t);
  }
  const auto& c = spec.case_ii();
  const double e = c.eps_dis;
  return 0.5 * e * e * c.rho * qddot.squaredNorm() + 0.5 * e * c.nu * qdot.squaredNorm() +
         c.gamma * c.potential.eval(q, t);
}

double integrand(const LagrangianSpec& spec, double t, const Eigen::VectorXd& q,
                 const Eigen::VectorXd& qdot, const Eigen::VectorXd& qddot) {
  return spec.weight().weight(t) * unweighted_integrand(spec, t, q, qdot, qddot);
}

}  // namespace cal
