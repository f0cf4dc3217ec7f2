#ifndef CAL_DISCRETE_HPP
#define CAL_DISCRETE_HPP

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "cal/lagrangian.hpp"

namespace cal {

/// Grid values x_1..x_N with uniform spacing eps_grid; node k lives at time
/// t0 + (k-1) * eps_grid (k is 1-based).
struct DiscretePath {
  std::vector<Eigen::VectorXd> values;
  double eps_grid = 0.1;
  double t0 = 0.0;

  std::size_t nodes() const { return values.size(); }
  int dim() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }
  void validate() const;
};

/// Integrand L(k, x, p) on the grid with exact partials. k is the 1-based
/// node index of the left endpoint of the interval.
struct DiscreteLagrangian {
  std::function<double(int, const Eigen::VectorXd&, const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(int, const Eigen::VectorXd&, const Eigen::VectorXd&)> d_x;
  std::function<Eigen::VectorXd(int, const Eigen::VectorXd&, const Eigen::VectorXd&)> d_p;
};

/// L(k,x,p) = 1/2 m |p|^2 (no position dependence).
DiscreteLagrangian free_particle_lagrangian(double m = 1.0);

/// Samples a first-order Lagrangian on the grid. The weight enters as
/// h(t_k)/h(t_ref) with t_ref = t0, so the sampled factor stays O(1) near the
/// start of the grid instead of overflowing for large theta*t; rescaling the
/// action by the positive constant h(t_ref) moves no stationary point.
DiscreteLagrangian sampled_lagrangian(const FirstOrderLagrangian& lag, const DiscretePath& grid);

/// eps * sum_{k=1}^{N-1} L(k, x_k, (x_{k+1}-x_k)/eps).
double action(const DiscretePath& path, const DiscreteLagrangian& L);

/// Exact gradient of action() in all N*n free values.
std::vector<Eigen::VectorXd> action_gradient(const DiscretePath& path,
                                             const DiscreteLagrangian& L);

/// Per interior node i=2..N-1: L_x(i, x_i, D x_i) - [L_p(i,..) - L_p(i-1,..)]/eps.
std::vector<Eigen::VectorXd> discrete_el_residual(const DiscretePath& path,
                                                  const DiscreteLagrangian& L);

struct MinimizeReport {
  long iterations = 0;
  double grad_inf_norm = 0.0;
  double action_value = 0.0;
  bool converged = false;
};

/// Plain gradient descent x <- x - eta * grad(action), optionally holding the
/// first node fixed. Stops when the free-coordinate gradient sup-norm drops
/// to tol or max_iters is hit. Throws DivergenceError if the action turns
/// non-finite.
std::pair<DiscretePath, MinimizeReport> gradient_flow_minimize(const DiscretePath& path0,
                                                               const DiscreteLagrangian& L,
                                                               double eta, double tol,
                                                               long max_iters,
                                                               bool clamp_first);

}  // namespace cal

#endif  // CAL_DISCRETE_HPP
