#ifndef CAL_LAGRANGIAN_HPP
#define CAL_LAGRANGIAN_HPP

#include <Eigen/Core>
#include <cmath>
#include <variant>

#include "cal/potential.hpp"

namespace cal {

/// Positive weight applied to the integrand. Dynamics code never evaluates
/// h(t) itself, only the constant log-derivative ratios hdot/h and hddot/h;
/// exp(theta*t) would overflow long before the ratios lose meaning.
struct Const1 {};
struct ExpPos {
  double theta = 1.0;  // h(t) = exp(theta * t), theta > 0
};
struct ExpNeg {
  double eps_dis = 1.0;  // h(t) = exp(-t / eps_dis), eps_dis > 0
};

class WeightFn {
 public:
  WeightFn() : form_(Const1{}) {}
  explicit WeightFn(Const1 c) : form_(c) {}
  explicit WeightFn(ExpPos e);
  explicit WeightFn(ExpNeg e);

  double ratio_dot() const;   // hdot / h, constant in t
  double ratio_ddot() const;  // hddot / h, constant in t
  double log_weight(double t) const { return ratio_dot() * t; }
  double weight(double t) const { return std::exp(log_weight(t)); }
  /// h(t + dt) / h(t); exact for this family, independent of t.
  double step_ratio(double dt) const { return std::exp(ratio_dot() * dt); }

  bool is_const() const { return std::holds_alternative<Const1>(form_); }

 private:
  std::variant<Const1, ExpPos, ExpNeg> form_;
};

/// Lbar = 1/2 m |qdot|^2 + gamma V(q, t), weighted by h(t).
struct FirstOrderLagrangian {
  double m = 1.0;
  double gamma = 1.0;
  Potential potential;
  WeightFn weight;
};

/// T = 1/(2 theta^2) |alpha1 qdot + alpha2 qddot|^2.
struct SecondOrderKinetic {
  double alpha1 = 0.0;
  double alpha2 = 1.0;
  double theta = 1.0;
};

double kinetic_eval(const SecondOrderKinetic& k, const Eigen::VectorXd& qdot,
                    const Eigen::VectorXd& qddot);

/// Growing weight h = exp(theta t) over Lbar = T + gamma V; theta is shared
/// between kinetic scaling and weight.
struct CaseISpec {
  SecondOrderKinetic kinetic;
  double gamma = 1.0;
  Potential potential;
};

/// Decaying weight h = exp(-t/eps_dis) over the integrand
/// 1/2 eps^2 rho |qddot|^2 + 1/2 eps nu |qdot|^2 + gamma V.
struct CaseIISpec {
  double rho = 1.0;
  double nu = 1.0;
  double eps_dis = 1.0;
  double gamma = 1.0;
  Potential potential;
};

/// Single parameter bundle handed to dynamics and stability.
class LagrangianSpec {
 public:
  explicit LagrangianSpec(FirstOrderLagrangian first);
  explicit LagrangianSpec(CaseISpec case_i);
  explicit LagrangianSpec(CaseIISpec case_ii);

  bool is_first_order() const { return std::holds_alternative<FirstOrderLagrangian>(form_); }
  bool is_case_i() const { return std::holds_alternative<CaseISpec>(form_); }
  bool is_case_ii() const { return std::holds_alternative<CaseIISpec>(form_); }

  const FirstOrderLagrangian& first_order() const { return std::get<FirstOrderLagrangian>(form_); }
  const CaseISpec& case_i() const { return std::get<CaseISpec>(form_); }
  const CaseIISpec& case_ii() const { return std::get<CaseIISpec>(form_); }

  const Potential& potential() const;
  WeightFn weight() const;

 private:
  std::variant<FirstOrderLagrangian, CaseISpec, CaseIISpec> form_;
};

struct Partials {
  Eigen::VectorXd L_q;
  Eigen::VectorXd L_p;
  Eigen::VectorXd L_a;
};

/// Partial derivatives of the unweighted integrand Lbar w.r.t. q, qdot, qddot.
Partials unweighted_partials(const LagrangianSpec& spec, double t, const Eigen::VectorXd& q,
                             const Eigen::VectorXd& qdot, const Eigen::VectorXd& qddot);

/// Partial derivatives of the full weighted integrand L = h(t) Lbar.
Partials lagrangian_partials(const LagrangianSpec& spec, double t, const Eigen::VectorXd& q,
                             const Eigen::VectorXd& qdot, const Eigen::VectorXd& qddot);

/// Scalar value of Lbar (no weight).
double unweighted_integrand(const LagrangianSpec& spec, double t, const Eigen::VectorXd& q,
                            const Eigen::VectorXd& qdot, const Eigen::VectorXd& qddot);

/// Scalar value of L = h(t) Lbar.
double integrand(const LagrangianSpec& spec, double t, const Eigen::VectorXd& q,
                 const Eigen::VectorXd& qdot, const Eigen::VectorXd& qddot);

}  // namespace cal

#endif  // CAL_LAGRANGIAN_HPP
