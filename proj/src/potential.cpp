#include "cal/potential.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "cal/errors.hpp"

namespace cal {

std::size_t EmpiricalRisk::active_index(double t) const {
  if (schedule.empty()) return 0;
  std::size_t idx = schedule.front().second;
  for (const auto& [start, sample] : schedule) {
    if (start <= t) idx = sample;
    else break;
  }
  return idx;
}

Potential::Potential(Quadratic quad) : form_(std::move(quad)), dim_(0) {
  const auto& q = std::get<Quadratic>(form_);
  detail::require(q.stiffness.rows() == q.stiffness.cols(), "Quadratic: stiffness must be square");
  detail::require(q.center.size() == q.stiffness.rows(), "Quadratic: center/stiffness dimension mismatch");
  const double scale = std::max(1.0, q.stiffness.cwiseAbs().maxCoeff());
  detail::require((q.stiffness - q.stiffness.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
                  "Quadratic: stiffness must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.stiffness, Eigen::EigenvaluesOnly);
  detail::require(es.eigenvalues().minCoeff() >= -1e-12 * scale,
                  "Quadratic: stiffness must be positive semidefinite");
  dim_ = static_cast<int>(q.center.size());
}

Potential::Potential(Rosenbrock rosen) : form_(rosen), dim_(2) {}

Potential::Potential(EmpiricalRisk risk) : form_(std::move(risk)), dim_(0) {
  const auto& r = std::get<EmpiricalRisk>(form_);
  detail::require(!r.samples.empty(), "EmpiricalRisk: needs at least one sample");
  dim_ = static_cast<int>(r.samples.front().input.size());
  for (const auto& s : r.samples)
    detail::require(s.input.size() == dim_, "EmpiricalRisk: inconsistent sample dimensions");
  for (const auto& [start, idx] : r.schedule)
    detail::require(idx < r.samples.size(), "EmpiricalRisk: schedule index out of range");
  detail::require(std::is_sorted(r.schedule.begin(), r.schedule.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; }),
                  "EmpiricalRisk: schedule must be sorted by time");
}

void Potential::check_dim(const Eigen::VectorXd& q) const {
  detail::require(q.size() == dim_, "Potential: argument dimension mismatch");
}

double Potential::eval(const Eigen::VectorXd& q, double t) const {
  check_dim(q);
  if (const auto* quad = std::get_if<Quadratic>(&form_)) {
    const Eigen::VectorXd d = q - quad->center;
    return 0.5 * d.dot(quad->stiffness * d);
  }
  if (const auto* ros = std::get_if<Rosenbrock>(&form_)) {
    const double x = q[0], y = q[1];
    const double u = ros->a - x;
    const double v = y - x * x;
    return u * u + ros->b * v * v;
  }
  const auto& risk = std::get<EmpiricalRisk>(form_);
  const auto& s = risk.samples[risk.active_index(t)];
  const double r = s.input.dot(q) - s.target;
  return 0.5 * r * r;
}

Eigen::VectorXd Potential::grad(const Eigen::VectorXd& q, double t) const {
  check_dim(q);
  if (const auto* quad = std::get_if<Quadratic>(&form_)) {
    return quad->stiffness * (q - quad->center);
  }
  if (const auto* ros = std::get_if<Rosenbrock>(&form_)) {
    const double x = q[0], y = q[1];
    const double v = y - x * x;
    Eigen::VectorXd g(2);
    g[0] = -2.0 * (ros->a - x) - 4.0 * ros->b * x * v;
    g[1] = 2.0 * ros->b * v;
    return g;
  }
  const auto& risk = std::get<EmpiricalRisk>(form_);
  const auto& s = risk.samples[risk.active_index(t)];
  const double r = s.input.dot(q) - s.target;
  return r * s.input;
}

Eigen::MatrixXd Potential::hessian(const Eigen::VectorXd& q, double t) const {
  check_dim(q);
  if (const auto* quad = std::get_if<Quadratic>(&form_)) {
    (void)q;
    return quad->stiffness;
  }
  if (const auto* ros = std::get_if<Rosenbrock>(&form_)) {
    const double x = q[0], y = q[1];
    Eigen::MatrixXd h(2, 2);
    h(0, 0) = 2.0 - 4.0 * ros->b * (y - x * x) + 8.0 * ros->b * x * x;
    h(0, 1) = -4.0 * ros->b * x;
    h(1, 0) = h(0, 1);
    h(1, 1) = 2.0 * ros->b;
    return h;
  }
  const auto& risk = std::get<EmpiricalRisk>(form_);
  const auto& s = risk.samples[risk.active_index(t)];
  return s.input * s.input.transpose();  // Gauss-Newton, exact for the linear model
}

Potential make_quadratic(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& center) {
  return Potential(Quadratic{stiffness, center});
}

Potential make_scalar_quadratic(double stiffness, double center) {
  Eigen::MatrixXd k(1, 1);
  k(0, 0) = stiffness;
  Eigen::VectorXd c(1);
  c[0] = center;
  return Potential(Quadratic{k, c});
}

}  // namespace cal
