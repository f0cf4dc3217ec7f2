#ifndef CAL_POTENTIAL_HPP
#define CAL_POTENTIAL_HPP

#include <Eigen/Core>
#include <map>
#include <variant>
#include <vector>

namespace cal {

/// V(q) = 1/2 (q - c)^T K (q - c), with K symmetric positive semidefinite.
struct Quadratic {
  Eigen::MatrixXd stiffness;
  Eigen::VectorXd center;
};

/// Classic two-dimensional banana valley: V(x,y) = (a-x)^2 + b (y - x^2)^2.
struct Rosenbrock {
  double a = 1.0;
  double b = 100.0;
};

/// Least-squares risk of a linear model on one sample at a time.
///
/// The active sample is piecewise constant in t: entry (t_k, i_k) of the
/// schedule activates sample i_k on [t_k, t_{k+1}). Times before the first
/// breakpoint use the first entry; an empty schedule pins sample 0.
struct EmpiricalRisk {
  struct Sample {
    Eigen::VectorXd input;
    double target = 0.0;
  };
  std::vector<Sample> samples;
  std::vector<std::pair<double, std::size_t>> schedule;  // sorted by time

  std::size_t active_index(double t) const;
};

/// Objective V(q, t) with exact gradient and Hessian.
class Potential {
 public:
  explicit Potential(Quadratic quad);
  explicit Potential(Rosenbrock rosen);
  explicit Potential(EmpiricalRisk risk);

  int dim() const { return dim_; }

  double eval(const Eigen::VectorXd& q, double t) const;
  Eigen::VectorXd grad(const Eigen::VectorXd& q, double t) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& q, double t) const;

  bool is_quadratic() const { return std::holds_alternative<Quadratic>(form_); }
  const Quadratic& quadratic() const { return std::get<Quadratic>(form_); }

 private:
  void check_dim(const Eigen::VectorXd& q) const;

  std::variant<Quadratic, Rosenbrock, EmpiricalRisk> form_;
  int dim_;
};

/// Convenience constructors used throughout tests and scenarios.
Potential make_quadratic(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& center);
Potential make_scalar_quadratic(double stiffness, double center = 0.0);

}  // namespace cal

#endif  // CAL_POTENTIAL_HPP
