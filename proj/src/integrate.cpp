#include "cal/integrate.hpp"

#include <cmath>
#include <string>

#include "cal/errors.hpp"

namespace cal {

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

Eigen::VectorXd eval_rhs(const FlatRhs& rhs, double t, const Eigen::VectorXd& s) {
  Eigen::VectorXd d = rhs(t, s);
  if (!all_finite(d))
    throw DivergenceError("rhs returned a non-finite value at t=" + std::to_string(t), -1);
  return d;
}

struct BlowupCheck {
  double norm_limit;
  bool tripped = false;
  double time = 0.0;

  // Flags non-finite states as well: a NaN norm fails the <= comparison.
  bool exceeded(double t, const Eigen::VectorXd& s) {
    const double nrm = s.norm();
    if (!(nrm <= norm_limit)) {
      tripped = true;
      time = t;
      return true;
    }
    return false;
  }
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order embedded weights.
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

struct DopriStep {
  Eigen::VectorXd y_new;
  Eigen::VectorXd f_new;  // FSAL stage
  double error;           // scaled RMS error estimate
};

DopriStep dopri_step(const FlatRhs& rhs, double t, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& f0, double h, double rtol, double atol) {
  const Eigen::VectorXd k1 = f0;
  const Eigen::VectorXd k2 = eval_rhs(rhs, t + c2 * h, y + h * (a21 * k1));
  const Eigen::VectorXd k3 = eval_rhs(rhs, t + c3 * h, y + h * (a31 * k1 + a32 * k2));
  const Eigen::VectorXd k4 = eval_rhs(rhs, t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const Eigen::VectorXd k5 =
      eval_rhs(rhs, t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const Eigen::VectorXd k6 =
      eval_rhs(rhs, t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));

  DopriStep out;
  out.y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  out.f_new = eval_rhs(rhs, t + h, out.y_new);

  const Eigen::VectorXd y4 =
      y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * out.f_new);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(out.y_new[i]));
    const double e = (out.y_new[i] - y4[i]) / sc;
    acc += e * e;
  }
  out.error = std::sqrt(acc / static_cast<double>(y.size()));
  return out;
}

// Cubic Hermite interpolant on one accepted step.
Eigen::VectorXd hermite(const Eigen::VectorXd& y0, const Eigen::VectorXd& f0,
                        const Eigen::VectorXd& y1, const Eigen::VectorXd& f1, double h,
                        double u) {
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  return h00 * y0 + (h10 * h) * f0 + h01 * y1 + (h11 * h) * f1;
}

}  // namespace

Eigen::VectorXd rk4_step(const FlatRhs& rhs, double t, const Eigen::VectorXd& s, double h) {
  detail::require(h > 0.0, "rk4_step: step must be > 0");
  const Eigen::VectorXd k1 = eval_rhs(rhs, t, s);
  const Eigen::VectorXd k2 = eval_rhs(rhs, t + 0.5 * h, s + 0.5 * h * k1);
  const Eigen::VectorXd k3 = eval_rhs(rhs, t + 0.5 * h, s + 0.5 * h * k2);
  const Eigen::VectorXd k4 = eval_rhs(rhs, t + h, s + h * k3);
  return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

State4 unpack_state(const Eigen::VectorXd& flat, const StateLayout& layout) {
  const int n = layout.n;
  detail::require(flat.size() == static_cast<Eigen::Index>(n) * layout.order,
                  "unpack_state: flat size does not match layout");
  State4 s = State4::zero(n);
  s.q = flat.segment(0, n);
  if (layout.order >= 2) s.qdot = flat.segment(n, n);
  if (layout.order >= 4) {
    s.qddot = flat.segment(2 * n, n);
    s.q3 = flat.segment(3 * n, n);
  }
  return s;
}

Eigen::VectorXd pack_state(const State4& s, const StateLayout& layout) {
  const int n = layout.n;
  Eigen::VectorXd flat(static_cast<Eigen::Index>(n) * layout.order);
  flat.segment(0, n) = s.q;
  if (layout.order >= 2) flat.segment(n, n) = s.qdot;
  if (layout.order >= 4) {
    flat.segment(2 * n, n) = s.qddot;
    flat.segment(3 * n, n) = s.q3;
  }
  return flat;
}

namespace {

Trajectory integrate_rk4(const FlatRhs& rhs, const Eigen::VectorXd& s0, double t0, double t_end,
                         const IntegratorOptions& opts, const StateLayout& layout) {
  Trajectory traj;
  traj.meta.integrator = "rk4";
  traj.meta.step = opts.step;

  BlowupCheck blowup{opts.blowup_norm};
  Eigen::VectorXd y = s0;
  double t = t0;
  traj.times.push_back(t);
  traj.states.push_back(unpack_state(y, layout));
  if (blowup.exceeded(t, y)) {
    traj.meta.diverged = true;
    traj.meta.blowup_time = t;
    return traj;
  }

  const long n_steps = static_cast<long>(std::ceil((t_end - t0) / opts.step - 1e-12));
  for (long k = 0; k < n_steps; ++k) {
    const double t_next = (k + 1 == n_steps) ? t_end : t0 + (k + 1) * opts.step;
    const double h = t_next - t;
    try {
      y = rk4_step(rhs, t, y, h);
    } catch (const DivergenceError&) {
      traj.meta.diverged = true;
      traj.meta.blowup_time = t;
      return traj;
    }
    t = t_next;
    traj.times.push_back(t);
    traj.states.push_back(unpack_state(y, layout));
    if (blowup.exceeded(t, y)) {
      traj.meta.diverged = true;
      traj.meta.blowup_time = t;
      return traj;
    }
  }
  return traj;
}

Trajectory integrate_rk45(const FlatRhs& rhs, const Eigen::VectorXd& s0, double t0, double t_end,
                          const IntegratorOptions& opts, const StateLayout& layout) {
  Trajectory traj;
  traj.meta.integrator = "rk45";
  traj.meta.step = opts.step;

  const double out_dt = opts.output_dt > 0.0 ? opts.output_dt : (t_end - t0) / 1000.0;
  BlowupCheck blowup{opts.blowup_norm};

  Eigen::VectorXd y = s0;
  double t = t0;
  Eigen::VectorXd f = eval_rhs(rhs, t, y);
  double h = std::min(opts.step, opts.h_max);
  double err_prev = 1.0;

  traj.times.push_back(t);
  traj.states.push_back(unpack_state(y, layout));
  if (blowup.exceeded(t, y)) {
    traj.meta.diverged = true;
    traj.meta.blowup_time = t;
    return traj;
  }
  long next_sample = 1;

  while (t < t_end) {
    h = std::min(h, t_end - t);
    DopriStep step;
    try {
      step = dopri_step(rhs, t, y, f, h, opts.rtol, opts.atol);
    } catch (const DivergenceError&) {
      traj.meta.diverged = true;
      traj.meta.blowup_time = t;
      return traj;
    }

    if (step.error <= 1.0) {
      // Accepted: emit every uniform sample inside (t, t+h].
      const double t_new = t + h;
      while (true) {
        const double ts = t0 + next_sample * out_dt;
        const bool last = ts >= t_end - 1e-12 * std::max(1.0, std::abs(t_end));
        const double t_target = last ? t_end : ts;
        if (t_target > t_new + 1e-12 * std::max(1.0, std::abs(t_new))) break;
        const double u = (t_target - t) / h;
        Eigen::VectorXd ys = hermite(y, f, step.y_new, step.f_new, h, u);
        traj.times.push_back(t_target);
        traj.states.push_back(unpack_state(ys, layout));
        ++next_sample;
        if (blowup.exceeded(t_target, ys)) {
          traj.meta.diverged = true;
          traj.meta.blowup_time = t_target;
          return traj;
        }
        if (last) break;
      }
      t = t_new;
      y = step.y_new;
      f = step.f_new;
      if (t >= t_end - 1e-12 * std::max(1.0, std::abs(t_end))) break;
      // PI controller (order 5).
      const double fac = 0.9 * std::pow(std::max(step.error, 1e-10), -0.7 / 5.0) *
                         std::pow(std::max(err_prev, 1e-10), 0.4 / 5.0);
      err_prev = std::max(step.error, 1e-10);
      h = std::min(opts.h_max, h * std::min(5.0, std::max(0.2, fac)));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(step.error, -1.0 / 5.0));
    }
    if (h < opts.h_min)
      throw StiffnessError("adaptive step underflow at t=" + std::to_string(t), t);
  }
  return traj;
}

}  // namespace

Trajectory integrate(const FlatRhs& rhs, const Eigen::VectorXd& s0, double t0, double t_end,
                     const IntegratorOptions& opts, const StateLayout& layout) {
  detail::require(t_end > t0, "integrate: t_end must exceed t0");
  detail::require(opts.step > 0.0, "integrate: step must be > 0");
  detail::require(opts.h_min <= opts.h_max, "integrate: h_min must not exceed h_max");
  detail::require(opts.rtol > 0.0 && opts.atol > 0.0, "integrate: tolerances must be > 0");
  if (opts.method == Method::RK4Fixed) return integrate_rk4(rhs, s0, t0, t_end, opts, layout);
  return integrate_rk45(rhs, s0, t0, t_end, opts, layout);
}

FlatRhs oscillator_flat_rhs(double m, double theta, const Potential& p) {
  const int n = p.dim();
  return [m, theta, p, n](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd dy(2 * n);
    dy.segment(0, n) = y.segment(n, n);
    dy.segment(n, n) = damped_oscillator_rhs(m, theta, p, t, y.segment(0, n), y.segment(n, n));
    return dy;
  };
}

FlatRhs gradient_flow_flat_rhs(double theta, const Potential& p) {
  return [theta, p](double t, const Eigen::VectorXd& y) {
    return gradient_flow_rhs(theta, p, t, y);
  };
}

namespace {

FlatRhs jet_flat_rhs(std::function<Eigen::VectorXd(double, const State4&)> top, int n) {
  return [top = std::move(top), n](double t, const Eigen::VectorXd& y) {
    StateLayout layout{n, 4};
    const State4 s = unpack_state(y, layout);
    Eigen::VectorXd dy(4 * n);
    dy.segment(0, n) = s.qdot;
    dy.segment(n, n) = s.qddot;
    dy.segment(2 * n, n) = s.q3;
    dy.segment(3 * n, n) = top(t, s);
    return dy;
  };
}

}  // namespace

FlatRhs fourth_stab_flat_rhs(const LagrangianSpec& spec) {
  return jet_flat_rhs(
      [spec](double t, const State4& s) { return fourth_order_stab_rhs(spec, t, s); },
      spec.potential().dim());
}

FlatRhs fourth_uns_flat_rhs(const LagrangianSpec& spec) {
  return jet_flat_rhs(
      [spec](double t, const State4& s) { return fourth_order_uns_rhs(spec, t, s); },
      spec.potential().dim());
}

FlatRhs kinetic_el_flat_rhs(const SecondOrderKinetic& kin, double gamma, const Potential& p,
                            double r1, double r2) {
  return jet_flat_rhs(
      [kin, gamma, p, r1, r2](double t, const State4& s) {
        return kinetic_el_rhs(kin, gamma, p, r1, r2, t, s);
      },
      p.dim());
}

FlatRhs collapsed_theta_flat_rhs(double alpha1, double alpha2, double gamma, const Potential& p) {
  const int n = p.dim();
  return [alpha1, alpha2, gamma, p, n](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd dy(2 * n);
    dy.segment(0, n) = y.segment(n, n);
    dy.segment(n, n) =
        collapsed_theta_rhs(alpha1, alpha2, gamma, p, t, y.segment(0, n), y.segment(n, n));
    return dy;
  };
}

FlatRhs collapsed_eps_flat_rhs(double rho, double nu, double gamma, const Potential& p) {
  const int n = p.dim();
  return [rho, nu, gamma, p, n](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd dy(2 * n);
    dy.segment(0, n) = y.segment(n, n);
    dy.segment(n, n) =
        collapsed_eps_rhs(rho, nu, gamma, p, t, y.segment(0, n), y.segment(n, n));
    return dy;
  };
}

}  // namespace cal
