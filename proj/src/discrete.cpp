#include "cal/discrete.hpp"

#include <cmath>
#include <string>

#include "cal/errors.hpp"

namespace cal {

void DiscretePath::validate() const {
  detail::require(nodes() >= 3, "DiscretePath: need at least 3 nodes");
  detail::require(eps_grid > 0.0, "DiscretePath: eps_grid must be > 0");
  for (const auto& v : values)
    detail::require(v.size() == values.front().size(), "DiscretePath: mixed node dimensions");
}

DiscreteLagrangian free_particle_lagrangian(double m) {
  DiscreteLagrangian L;
  L.value = [m](int, const Eigen::VectorXd&, const Eigen::VectorXd& p) {
    return 0.5 * m * p.squaredNorm();
  };
  L.d_x = [](int, const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    return Eigen::VectorXd::Zero(x.size()).eval();
  };
  L.d_p = [m](int, const Eigen::VectorXd&, const Eigen::VectorXd& p) {
    return (m * p).eval();
  };
  return L;
}

DiscreteLagrangian sampled_lagrangian(const FirstOrderLagrangian& lag, const DiscretePath& grid) {
  const double t0 = grid.t0;
  const double eps = grid.eps_grid;
  const WeightFn w = lag.weight;
  auto weight_at = [t0, eps, w](int k) {
    const double t = t0 + (k - 1) * eps;
    return std::exp(w.log_weight(t) - w.log_weight(t0));
  };
  auto time_at = [t0, eps](int k) { return t0 + (k - 1) * eps; };

  DiscreteLagrangian L;
  L.value = [lag, weight_at, time_at](int k, const Eigen::VectorXd& x, const Eigen::VectorXd& p) {
    return weight_at(k) *
           (0.5 * lag.m * p.squaredNorm() + lag.gamma * lag.potential.eval(x, time_at(k)));
  };
  L.d_x = [lag, weight_at, time_at](int k, const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    return (weight_at(k) * lag.gamma * lag.potential.grad(x, time_at(k))).eval();
  };
  L.d_p = [lag, weight_at](int k, const Eigen::VectorXd&, const Eigen::VectorXd& p) {
    return (weight_at(k) * lag.m * p).eval();
  };
  return L;
}

namespace {

Eigen::VectorXd forward_diff(const DiscretePath& path, std::size_t k) {
  // D x_k = (x_{k+1} - x_k) / eps for 0-based k.
  return (path.values[k + 1] - path.values[k]) / path.eps_grid;
}

}  // namespace

double action(const DiscretePath& path, const DiscreteLagrangian& L) {
  path.validate();
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < path.nodes(); ++k)
    sum += L.value(static_cast<int>(k) + 1, path.values[k], forward_diff(path, k));
  return path.eps_grid * sum;
}

std::vector<Eigen::VectorXd> action_gradient(const DiscretePath& path,
                                             const DiscreteLagrangian& L) {
  path.validate();
  const std::size_t n = path.nodes();
  const double eps = path.eps_grid;

  std::vector<Eigen::VectorXd> lp(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k)
    lp[k] = L.d_p(static_cast<int>(k) + 1, path.values[k], forward_diff(path, k));

  std::vector<Eigen::VectorXd> grad(n);
  grad[0] = eps * L.d_x(1, path.values[0], forward_diff(path, 0)) - lp[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    grad[i] = eps * L.d_x(static_cast<int>(i) + 1, path.values[i], forward_diff(path, i)) -
              (lp[i] - lp[i - 1]);
  }
  grad[n - 1] = lp[n - 2];
  return grad;
}

std::vector<Eigen::VectorXd> discrete_el_residual(const DiscretePath& path,
                                                  const DiscreteLagrangian& L) {
  path.validate();
  const std::size_t n = path.nodes();
  const double eps = path.eps_grid;
  std::vector<Eigen::VectorXd> out;
  out.reserve(n - 2);
  Eigen::VectorXd lp_prev = L.d_p(1, path.values[0], forward_diff(path, 0));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Eigen::VectorXd dxi = forward_diff(path, i);
    const Eigen::VectorXd lp_i = L.d_p(static_cast<int>(i) + 1, path.values[i], dxi);
    out.push_back(L.d_x(static_cast<int>(i) + 1, path.values[i], dxi) - (lp_i - lp_prev) / eps);
    lp_prev = lp_i;
  }
  return out;
}

std::pair<DiscretePath, MinimizeReport> gradient_flow_minimize(const DiscretePath& path0,
                                                               const DiscreteLagrangian& L,
                                                               double eta, double tol,
                                                               long max_iters,
                                                               bool clamp_first) {
  detail::require(eta > 0.0, "gradient_flow_minimize: eta must be > 0");
  detail::require(tol > 0.0, "gradient_flow_minimize: tol must be > 0");
  path0.validate();

  DiscretePath path = path0;
  MinimizeReport report;

  auto free_inf_norm = [&](const std::vector<Eigen::VectorXd>& g) {
    double nrm = 0.0;
    for (std::size_t i = clamp_first ? 1 : 0; i < g.size(); ++i)
      nrm = std::max(nrm, g[i].lpNorm<Eigen::Infinity>());
    return nrm;
  };

  for (long it = 0; it <= max_iters; ++it) {
    const auto grad = action_gradient(path, L);
    report.grad_inf_norm = free_inf_norm(grad);
    report.iterations = it;
    if (report.grad_inf_norm <= tol) {
      report.converged = true;
      break;
    }
    if (it == max_iters) break;
    for (std::size_t i = clamp_first ? 1 : 0; i < path.nodes(); ++i)
      path.values[i] -= eta * grad[i];
    const double a = action(path, L);
    if (!std::isfinite(a))
      throw DivergenceError("gradient_flow_minimize: action diverged at iteration " +
                                std::to_string(it + 1),
                            it + 1);
  }
  report.action_value = action(path, L);
  return {std::move(path), report};
}

}  // namespace cal
