#pragma once

#include "skt/error.hpp"
#include "skt/hermitian.hpp"
#include "skt/root_system.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace skt {

/// Torus vector V representing the closed 2-form kappa([., .], V); coefficients
/// in {i H_{alpha_i}} over all factors.
struct RicciRep {
  Eigen::VectorXd v;
};

/// Z_{J_q} = sum_{alpha > 0} i H_alpha.
Eigen::VectorXd z_vector(const GroupSpec& gs);
/// Z_{J_q, g_q} = sum_{alpha > 0} (1 / x_alpha) i H_alpha with x given per global positive root.
Eigen::VectorXd z_vector(const GroupSpec& gs, const FiberMetric& weights);

/// rho^C = -kappa([., .], Z_{J_q}); independent of the metric.
RicciRep chern_ricci(const HermitianStructure& h);
/// rho^B = kappa([., .], -Z_{J_q} + P_t Z_{J_q, g_q}), x taken with the scales z applied.
RicciRep bismut_ricci(const HermitianStructure& h);

/// sigma_V = kappa([., .], V) as a 2-form on the Chevalley basis.
InvariantForm sigma_form(const GroupSpec& gs, const Eigen::VectorXd& v);

struct CytReport {
  bool cyt = false;
  double residual = 0.0;  // ||V||_inf
  Eigen::VectorXd v;
};

CytReport is_cyt(const HermitianStructure& h, double tol = 1e-10);

/// Rows are the coefficient vectors k^alpha of the positive roots, in library order.
Eigen::MatrixXd coefficient_matrix(const RootSystem& rs);

namespace detail {

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> root_values(const RootSystem& rs,
                                                                     const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::Scalar;
  if (X.size() != rs.rank())
    throw std::invalid_argument("expected " + std::to_string(rs.rank()) + " simple values for " + rs.type().name());
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> k = coefficient_matrix(rs).cast<Scalar>();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x =
      (k * (X.derived().array() - Scalar(1)).matrix()).array() + Scalar(1);
  for (Eigen::Index a = 0; a < x.size(); ++a)
    if (!(x(a) > Scalar(0)))
      throw DomainError("x_alpha <= 0 for positive root #" + std::to_string(a) + " of " + rs.type().name());
  return x;
}

}  // namespace detail

/// F(X) = sum_{alpha > 0} (x_alpha - log x_alpha) on the pluriclosed family.
template <typename Derived>
typename Derived::Scalar functional_F(const RootSystem& rs, const Eigen::MatrixBase<Derived>& X) {
  using std::log;
  const auto x = detail::root_values(rs, X);
  return (x.array() - x.array().log()).sum();
}

/// dF/dx_i = sum_{alpha > 0} k^alpha_i (1 - 1/x_alpha).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> grad_F(const RootSystem& rs,
                                                                const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::Scalar;
  const auto x = detail::root_values(rs, X);
  return coefficient_matrix(rs).cast<Scalar>().transpose() * (Scalar(1) - x.array().inverse()).matrix();
}

/// Hessian sum_{alpha > 0} k^alpha (k^alpha)^T / x_alpha^2; positive definite.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> hessian_F(
    const RootSystem& rs, const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::Scalar;
  const auto x = detail::root_values(rs, X);
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> k = coefficient_matrix(rs).cast<Scalar>();
  return k.transpose() * x.array().square().inverse().matrix().asDiagonal() * k;
}

struct NewtonResult {
  Eigen::VectorXd x;
  double grad_inf = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton on grad F with backtracking that keeps every x_alpha positive
/// and F decreasing. Stops when ||grad F||_inf < tol.
NewtonResult newton_critical_point(const RootSystem& rs, const Eigen::VectorXd& x0, double tol = 1e-10,
                                   int max_iterations = 200);

}  // namespace skt
