#pragma once

#include "skt/group.hpp"
#include "skt/root_system.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace skt {

enum class Integrator { rk4_fixed, rkf45_adaptive };
enum class Termination { converged, t_end_reached, positivity_violation };

std::string to_string(Integrator i);
std::string to_string(Termination t);
Integrator parse_integrator(const std::string& s);
Termination parse_termination(const std::string& s);

struct FlowConfig {
  Integrator integrator = Integrator::rk4_fixed;
  double h = 0.01;         // fixed step, or initial step for rkf45
  double t_end = 100.0;
  double tol = 1e-8;       // convergence: ||X - 1||_inf < tol and ||X'||_inf < tol
  double eps_pos = 1e-8;   // every x_alpha must stay above this
  double rtol = 1e-8;      // rkf45 local error tolerance
  double min_step = 1e-12;
  bool stop_on_convergence = true;

  void validate() const;
};

struct Sample {
  double t = 0.0;
  Eigen::VectorXd x;
  double F = 0.0;
  double grad_inf = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;
  Termination termination = Termination::t_end_reached;
  std::map<std::string, std::string> metadata;

  const Sample& final() const { return samples.back(); }
};

/// Q = [<alpha_i, alpha_j>] in the normalization of rs.
Eigen::MatrixXd gram_matrix(const RootSystem& rs);

/// X' = -Q grad F(X). Throws DomainError when some x_alpha <= 0.
Eigen::VectorXd rhs(const RootSystem& rs, const Eigen::VectorXd& X);

/// x'_beta = -sum_{alpha > 0} (1 - 1/x_alpha) <alpha, beta> for every beta > 0.
Eigen::VectorXd rhs_per_root(const RootSystem& rs, const Eigen::VectorXd& X);

/// Largest deviation between rhs pushed through the affine map and rhs_per_root,
/// relative to max(1, |rhs_per_root|).
double rhs_consistency(const RootSystem& rs, const Eigen::VectorXd& X);

Trajectory integrate(const RootSystem& rs, const Eigen::VectorXd& x0, const FlowConfig& cfg = {});

/// One trajectory per factor; factors decouple.
std::vector<Trajectory> integrate(const GroupSpec& gs, const std::vector<Eigen::VectorXd>& x0,
                                  const FlowConfig& cfg = {});

/// Integrates Y' = -grad H, H(Y) = F(Q^{1/2} Y), and returns the largest
/// ||Q^{1/2} Y(t) - X(t)||_inf over the samples of the Y run. The convergence
/// stop is disabled for both runs.
double gradient_flow_check(const RootSystem& rs, const Eigen::VectorXd& x0, FlowConfig cfg = {});

/// CSV with '#' metadata lines and header t,x_1,...,x_n,F,grad_inf (17 significant digits).
void write_csv(std::ostream& os, const Trajectory& tr);
Trajectory read_csv(std::istream& is);
void write_json(std::ostream& os, const Trajectory& tr);
Trajectory read_json(std::istream& is);

}  // namespace skt
