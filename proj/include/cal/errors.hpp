#ifndef CAL_ERRORS_HPP
#define CAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cal {

/// Violated precondition or type invariant (dimension mismatch, bad parameter).
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical process produced a non-finite quantity.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long iteration)
      : std::runtime_error(what), iteration(iteration) {}
  long iteration;
};

/// Adaptive step control hit the minimum step size.
class StiffnessError : public std::runtime_error {
 public:
  StiffnessError(const std::string& what, double time)
      : std::runtime_error(what), time(time) {}
  double time;
};

namespace detail {
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractViolation(msg);
}
}  // namespace detail

}  // namespace cal

#endif  // CAL_ERRORS_HPP
