#ifndef CAL_INTEGRATE_HPP
#define CAL_INTEGRATE_HPP

#include <Eigen/Core>
#include <functional>

#include "cal/dynamics.hpp"

namespace cal {

/// Time derivative of a flat state vector.
using FlatRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

enum class Method { RK4Fixed, RK45Adaptive };

struct IntegratorOptions {
  Method method = Method::RK4Fixed;
  double step = 1e-3;  // fixed-step size; also the adaptive initial step
  double rtol = 1e-8;
  double atol = 1e-10;
  double h_min = 1e-12;
  double h_max = 1.0;
  double blowup_norm = 1e12;
  /// Uniform output spacing for the adaptive method (dense-output resample).
  /// <= 0 selects (t_end - t0) / 1000.
  double output_dt = 0.0;
};

/// One classical Runge-Kutta step. Throws DivergenceError if the rhs returns
/// a non-finite value.
Eigen::VectorXd rk4_step(const FlatRhs& rhs, double t, const Eigen::VectorXd& s, double h);

/// Flat-state layout: n configuration coordinates, `order` stacked derivative
/// blocks (q first, highest derivative last).
struct StateLayout {
  int n = 1;
  int order = 2;  // 1: (q), 2: (q, qdot), 4: full jet
};

State4 unpack_state(const Eigen::VectorXd& flat, const StateLayout& layout);
Eigen::VectorXd pack_state(const State4& s, const StateLayout& layout);

/// Integrate the Cauchy problem from t0 to t_end.
///
/// RK4Fixed records every step on the fixed grid; RK45Adaptive resamples its
/// dense output (cubic Hermite, locally O(h^4)) onto a uniform grid. If the
/// state norm exceeds blowup_norm or turns non-finite, integration stops and
/// the divergence flag carries the first offending time. Adaptive step
/// underflow throws StiffnessError.
Trajectory integrate(const FlatRhs& rhs, const Eigen::VectorXd& s0, double t0, double t_end,
                     const IntegratorOptions& opts, const StateLayout& layout);

// Flat right-hand sides for every law in the catalog.
FlatRhs oscillator_flat_rhs(double m, double theta, const Potential& p);
FlatRhs gradient_flow_flat_rhs(double theta, const Potential& p);
FlatRhs fourth_stab_flat_rhs(const LagrangianSpec& spec);
FlatRhs fourth_uns_flat_rhs(const LagrangianSpec& spec);
FlatRhs kinetic_el_flat_rhs(const SecondOrderKinetic& kin, double gamma, const Potential& p,
                            double r1, double r2);
FlatRhs collapsed_theta_flat_rhs(double alpha1, double alpha2, double gamma, const Potential& p);
FlatRhs collapsed_eps_flat_rhs(double rho, double nu, double gamma, const Potential& p);

}  // namespace cal

#endif  // CAL_INTEGRATE_HPP
