#ifndef CAL_SCENARIO_HPP
#define CAL_SCENARIO_HPP

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cal/integrate.hpp"
#include "cal/stability.hpp"

namespace cal {

/// Config document failed validation.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Output files could not be written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace exit_code {
constexpr int ok = 0;
constexpr int config = 2;
constexpr int divergence = 3;
constexpr int io = 4;
}  // namespace exit_code

/// Validated scenario description. Everything the runner needs is resolved
/// here; `raw` keeps the original document for echoing into summaries.
struct ScenarioConfig {
  std::string scenario;
  std::filesystem::path out_dir;
  nlohmann::json raw;

  std::optional<Potential> potential;

  // dynamics parameters (explicit names; the grid spacing is eps_grid,
  // the dissipation scale eps_dis)
  double m = 1.0;
  double theta = 1.0;
  double gamma = 1.0;
  double alpha1 = 0.0;
  double alpha2 = 1.0;
  double rho = 1.0;
  double nu = 1.0;
  double eps_dis = 0.1;
  std::string weight = "const1";  // const1 | exp_pos | exp_neg
  std::string law;                // stability-sweep / sweep law selector

  Eigen::VectorXd q0, qdot0, qddot0, q3_0;
  double t_end = 10.0;
  double t_skip = 0.5;
  bool matched_jet = true;

  IntegratorOptions integrator;

  std::vector<double> theta_grid;
  std::vector<double> eps_dis_grid;
  std::vector<double> m_grid;

  // discrete-path scenarios
  double eps_grid = 0.1;
  int path_nodes = 21;
  unsigned seed = 0;
  std::string path_init = "affine";  // affine | random
  Eigen::VectorXd path_start, path_end;
  std::string discrete_lagrangian = "sampled";  // free | sampled
  double eta = 0.01;
  double tol = 1e-10;
  long max_iters = 200000;
  bool clamp_first = false;
};

/// Parse and validate a config document. Throws ConfigError.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& file);

/// Execute one scenario; writes trajectory CSVs, summary.json and plot.gp
/// into cfg.out_dir. Returns an exit_code value.
int run(const ScenarioConfig& cfg);

/// Execute the grid cross-product; writes sweep.csv (one ordered row per
/// combination) and summary.json. Row workers run concurrently up to
/// CAL_THREADS. Returns an exit_code value.
int sweep(const ScenarioConfig& cfg);

/// Closed-form solution of m qddot + theta qdot + k q = 0 from (q0, v0).
double closed_form_oscillator(double m, double theta, double k, double q0, double v0, double t);

/// 17-significant-digit decimal formatting used by every CSV writer.
std::string fmt17(double x);

}  // namespace cal

#endif  // CAL_SCENARIO_HPP
