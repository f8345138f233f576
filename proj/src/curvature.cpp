#include "skt/curvature.hpp"

#include <Eigen/Cholesky>

namespace skt {

Eigen::VectorXd z_vector(const GroupSpec& gs) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(gs.torus_dim());
  for (int r = 0; r < gs.num_positive(); ++r) z += gs.coroot(r);
  return z;
}

Eigen::VectorXd z_vector(const GroupSpec& gs, const FiberMetric& weights) {
  if (static_cast<int>(weights.x.size()) != gs.num_positive())
    throw std::invalid_argument("z_vector: one weight per positive root expected");
  Eigen::VectorXd z = Eigen::VectorXd::Zero(gs.torus_dim());
  for (int r = 0; r < gs.num_positive(); ++r) z += gs.coroot(r) / weights.x[static_cast<std::size_t>(r)];
  return z;
}

RicciRep chern_ricci(const HermitianStructure& h) { return {-z_vector(h.group())}; }

RicciRep bismut_ricci(const HermitianStructure& h) {
  const GroupSpec& gs = h.group();
  FiberMetric eff{std::vector<double>(static_cast<std::size_t>(gs.num_positive()))};
  for (int r = 0; r < gs.num_positive(); ++r) eff.x[static_cast<std::size_t>(r)] = h.x(r);
  return {-z_vector(gs) + h.torus_operator() * z_vector(gs, eff)};
}

InvariantForm sigma_form(const GroupSpec& gs, const Eigen::VectorXd& v) {
  if (v.size() != gs.torus_dim()) throw std::invalid_argument("sigma_form: torus vector has wrong size");
  InvariantForm s(2, gs.dim());
  // kappa([E_a, E_-a], i V) = kappa(H_a, i V) = i <a, V>
  for (int r = 0; r < gs.num_positive(); ++r) {
    double val = 0.0;
    for (int i = 0; i < gs.torus_dim(); ++i) val += v(i) * gs.root_on_torus(r, i);
    s.set({gs.e(r), gs.e(gs.negative(r))}, std::complex<double>(0.0, val));
  }
  return s;
}

CytReport is_cyt(const HermitianStructure& h, double tol) {
  CytReport rep;
  rep.v = bismut_ricci(h).v;
  rep.residual = rep.v.size() ? rep.v.cwiseAbs().maxCoeff() : 0.0;
  rep.cyt = rep.residual < tol;
  return rep;
}

Eigen::MatrixXd coefficient_matrix(const RootSystem& rs) {
  Eigen::MatrixXd k(rs.num_positive(), rs.rank());
  for (int a = 0; a < rs.num_positive(); ++a)
    for (int j = 0; j < rs.rank(); ++j) k(a, j) = rs.root(a).coeffs[static_cast<std::size_t>(j)];
  return k;
}

NewtonResult newton_critical_point(const RootSystem& rs, const Eigen::VectorXd& x0, double tol, int max_iterations) {
  const Eigen::MatrixXd k = coefficient_matrix(rs);
  auto admissible = [&](const Eigen::VectorXd& x) {
    return ((k * (x.array() - 1.0).matrix()).array() + 1.0 > 0.0).all();
  };
  if (!admissible(x0)) throw DomainError("newton_critical_point: start outside the positivity domain");

  NewtonResult res{x0, 0.0, 0, false};
  double f = functional_F(rs, res.x);
  for (; res.iterations < max_iterations; ++res.iterations) {
    const Eigen::VectorXd g = grad_F(rs, res.x);
    res.grad_inf = g.cwiseAbs().maxCoeff();
    if (res.grad_inf < tol) {
      res.converged = true;
      return res;
    }
    const Eigen::VectorXd step = -hessian_F(rs, res.x).llt().solve(g);
    const double slope = g.dot(step);
    double t = 1.0;
    while (t > 1e-16) {
      const Eigen::VectorXd trial = res.x + t * step;
      if (admissible(trial)) {
        const double ft = functional_F(rs, trial);
        // Rounding slack: near the minimum F changes below machine resolution.
        if (ft <= f + 1e-4 * t * slope + 1e-14 * std::abs(f)) {
          res.x = trial;
          f = ft;
          break;
        }
      }
      t *= 0.5;
    }
    if (t <= 1e-16) break;
  }
  res.grad_inf = grad_F(rs, res.x).cwiseAbs().maxCoeff();
  res.converged = res.grad_inf < tol;
  return res;
}

}  // namespace skt
