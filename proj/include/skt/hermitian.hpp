#pragma once

#include "skt/group.hpp"
#include "skt/invariant_form.hpp"

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace skt {

/// Inner product g_t on the torus in the basis {i H_{alpha_i}} of all factors.
/// Cross-factor blocks may be nonzero. g_t = g_K(P_t ., .).
struct TorusMetric {
  Eigen::MatrixXd matrix;

  /// z_f times the Killing block of each factor, zero cross-blocks.
  static TorusMetric killing(const GroupSpec& gs, const std::vector<double>& z);
  /// Symmetric and positive definite (smallest eigenvalue > tol)?
  bool is_positive_definite(double tol = 1e-10) const;
};

/// Complex structure J_t on the torus, same basis as TorusMetric.
struct TorusComplexStructure {
  Eigen::MatrixXd matrix;

  bool squares_to_minus_identity(double tol = 1e-10) const;
  /// A J_t with g_t(J., J.) = g_t, built as M^{-1/2} R M^{1/2} with R the
  /// standard block rotation. Requires even dimension.
  static TorusComplexStructure compatible_with(const Eigen::MatrixXd& metric);
};

/// Fiber parameters x_alpha > 0, one per global positive root, before the
/// per-factor scale z is applied.
struct FiberMetric {
  std::vector<double> x;
};

/// Left- and Ad(T)-invariant Hermitian structure (J, g), g = g_t + g_q.
///
/// The metric on the root space of alpha in factor f is z_f * x_alpha times
/// the negative of the invariant form; the torus metric is stored absolutely.
class HermitianStructure {
 public:
  HermitianStructure(std::shared_ptr<const GroupSpec> group, std::vector<double> z, TorusMetric torus,
                     FiberMetric fiber, std::optional<TorusComplexStructure> jt = std::nullopt);

  /// z_f * bi-invariant metric on each factor, with an optional J_t.
  static HermitianStructure biinvariant(std::shared_ptr<const GroupSpec> group, std::vector<double> z = {},
                                        std::optional<TorusComplexStructure> jt = std::nullopt);

  const GroupSpec& group() const { return *group_; }
  const std::shared_ptr<const GroupSpec>& group_ptr() const { return group_; }
  const std::vector<double>& z() const { return z_; }
  const TorusMetric& torus() const { return torus_; }
  const FiberMetric& fiber() const { return fiber_; }
  const std::optional<TorusComplexStructure>& jt() const { return jt_; }

  /// Effective z_f * x_alpha for any global root (x_{-alpha} = x_alpha).
  double x(int r) const { return xeff_[static_cast<std::size_t>(group_->positive_of(r))]; }
  /// y_alpha = -i eps_alpha x_alpha.
  std::complex<double> y(int r) const { return {0.0, -group_->sign(r) * x(r)}; }
  /// g_t(i H_a, i H_b) for arbitrary roots a, b.
  double torus_inner(int a, int b) const;
  /// P_t in torus coordinates: K^{-1} M.
  Eigen::MatrixXd torus_operator() const;

  /// Same structure with the given fiber (unscaled) or torus replaced.
  HermitianStructure with_fiber(FiberMetric fiber) const;
  HermitianStructure with_torus(TorusMetric torus) const;
  HermitianStructure with_jt(std::optional<TorusComplexStructure> jt) const;

 private:
  std::shared_ptr<const GroupSpec> group_;
  std::vector<double> z_;
  TorusMetric torus_;
  FiberMetric fiber_;
  std::optional<TorusComplexStructure> jt_;
  std::vector<double> xeff_;
};

/// g as a complex-bilinear form on two Chevalley basis vectors.
std::complex<double> metric(const HermitianStructure& h, int a, int b);

/// Kaehler form omega = g(J., .) as a 2-form. Needs J_t.
InvariantForm omega_form(const HermitianStructure& h);

/// Closed-form components of d omega and d^c omega on three Chevalley basis
/// vectors (any order). Torus-argument components of d omega need J_t.
std::complex<double> d_omega(const HermitianStructure& h, int a, int b, int c);
std::complex<double> dc_omega(const HermitianStructure& h, int a, int b, int c);

/// d^c omega materialized from dc_omega on every increasing triple.
InvariantForm dc_omega_form(const HermitianStructure& h);

/// d* omega = -theta_Z with Z = sum_{alpha > 0} (1/x_alpha) i H_alpha; returns
/// the coefficients of -Z in {i H_{alpha_i}}.
Eigen::VectorXd d_star_omega(const HermitianStructure& h);

/// Closed-form component of dd^c omega on four Chevalley basis vectors.
std::complex<double> ddc_omega(const HermitianStructure& h, int a, int b, int c, int d);

enum class CheckMode { closed_form, brute_force };

struct PluriclosedWitness {
  enum class Kind { none, skt1, skt2, other };
  Kind kind = Kind::none;
  std::vector<int> roots;      // global root indices (pair or quadruple)
  std::vector<int> basis;      // basis indices for Kind::other
  double residual = 0.0;
};

/// Residuals are in the units of the two conditions: for skt1 the torus
/// identity g_t(iH_a, iH_b) = ..., i.e. half of the dd^c omega component
/// (E_a, E_-a, E_b, E_-b); for skt2 the mixed component itself.
struct PluriclosedReport {
  bool pluriclosed = false;
  double max_residual = 0.0;
  PluriclosedWitness worst;
  PluriclosedWitness worst_skt1;
  PluriclosedWitness worst_skt2;
  std::size_t cases = 0;
};

PluriclosedReport is_pluriclosed(const HermitianStructure& h, double tol = 1e-10,
                                 CheckMode mode = CheckMode::closed_form);

/// The pluriclosed family: per factor x_alpha = 1 + sum_j k_j (x_j - 1),
/// fiber and torus (Killing block) scaled by z_f. Throws DomainError naming the
/// offending root when some x_alpha <= 0.
HermitianStructure pluriclosed_family(std::shared_ptr<const GroupSpec> group, const std::vector<double>& z,
                                      const std::vector<Eigen::VectorXd>& simple_values,
                                      std::optional<TorusComplexStructure> jt = std::nullopt);

/// Affine extension of simple values to all positive roots of one factor.
Eigen::VectorXd family_values(const RootSystem& rs, const Eigen::VectorXd& simple_values);

/// Sufficient positivity bound 1 - 1/h(alpha_max).
double positivity_bound(const RootSystem& rs);

/// max |x_{a+b} - x_a - x_b| over a, b, a+b positive; 0 iff G/T is Kaehler.
double kahler_flag_residual(const HermitianStructure& h);

/// Positive scales z making (+) z_f (-B_f) compatible with J_t on the torus.
struct CompatibleCone {
  Eigen::MatrixXd basis;                 // columns span the linear solution space
  std::optional<Eigen::VectorXd> interior;  // strictly positive member, max entry 1
  bool empty() const { return !interior.has_value(); }
  bool contains(const Eigen::VectorXd& z, double tol = 1e-9) const;
  std::string describe() const;
};

CompatibleCone biinvariant_compatible(const GroupSpec& gs, const TorusComplexStructure& jt);

/// True iff J_t leaves no proper nonempty sum of factor tori invariant.
/// Refuses (std::invalid_argument) more than 20 factors.
bool is_irreducible(const GroupSpec& gs, const TorusComplexStructure& jt, double tol = 1e-12);

}  // namespace skt
