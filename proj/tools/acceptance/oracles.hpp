#pragma once

// Independent reference computations used by the acceptance suite and the
// unit tests. Nothing here calls the closed formulas it is meant to check.

#include "skt/curvature.hpp"
#include "skt/hermitian.hpp"
#include "skt/invariant_form.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace skt::oracle {

using cplx = std::complex<double>;

/// Dual Coxeter number from the standard tables.
inline int dual_coxeter(const SimpleType& t) {
  const int n = t.rank;
  switch (t.family) {
    case 'A': return n + 1;
    case 'B': return 2 * n - 1;
    case 'C': return n + 1;
    case 'D': return 2 * n - 2;
    case 'E': return n == 6 ? 12 : n == 7 ? 18 : 30;
    case 'F': return 9;
    case 'G': return 4;
  }
  return 0;
}

/// Right-hand sides of the flow as printed for SU(3), SO(5) and G2 in (x, y).
inline Eigen::Vector2d printed_su3(double x, double y) {
  return {2 / x - 1 / y + 1 / (x + y - 1) - 2, -1 / x + 2 / y + 1 / (x + y - 1) - 2};
}
inline Eigen::Vector2d printed_so5(double x, double y) {
  return {2 / x - 1 / y + 1 / (x + y - 1) - 2, -1 / x + 1 / y + 1 / (x + 2 * y - 2) - 1};
}
inline Eigen::Vector2d printed_g2(double x, double y) {
  return {2 / x - 3 / y - 1 / (x + y - 1) + 1 / (2 * x + y - 2) + 3 / (3 * x + y - 3) - 2,
          -3 / x + 6 / y + 3 / (x + y - 1) - 3 / (3 * x + y - 3) + 3 / (3 * x + 2 * y - 4) - 6};
}

/// Sum of absolute values of the printed terms; the scale for relative errors.
inline double printed_scale(char family, double x, double y) {
  auto a = [](double v) { return std::abs(v); };
  if (family == 'A') return 2 / a(x) + 2 / a(y) + 1 / a(x + y - 1) + 2;
  if (family == 'B') return 2 / a(x) + 1 / a(y) + 1 / a(x + y - 1) + 1 / a(x + 2 * y - 2) + 2;
  return 6 / a(x) + 6 / a(y) + 3 / a(x + y - 1) + 1 / a(2 * x + y - 2) + 3 / a(3 * x + y - 3) +
         3 / a(3 * x + 2 * y - 4) + 6;
}

/// F by explicit summation over the positive roots.
inline double F_direct(const RootSystem& rs, const Eigen::VectorXd& X) {
  double f = 0.0;
  for (const Root& r : rs.positives()) {
    double x = 1.0;
    for (int j = 0; j < rs.rank(); ++j) x += r.coeffs[static_cast<std::size_t>(j)] * (X(j) - 1.0);
    f += x - std::log(x);
  }
  return f;
}

/// Central differences of F_direct.
inline Eigen::VectorXd grad_fd(const RootSystem& rs, const Eigen::VectorXd& X, double step = 1e-6) {
  Eigen::VectorXd g(X.size());
  for (Eigen::Index i = 0; i < X.size(); ++i) {
    Eigen::VectorXd p = X, m = X;
    p(i) += step;
    m(i) -= step;
    g(i) = (F_direct(rs, p) - F_direct(rs, m)) / (2 * step);
  }
  return g;
}

/// J on the complexified algebra in the Chevalley basis: J E_a = i eps_a E_a,
/// J H_i = sum_j (J_t)_{ji} H_j.
inline Eigen::MatrixXcd complex_structure(const GroupSpec& gs, const Eigen::MatrixXd& jt) {
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(gs.dim(), gs.dim());
  J.topLeftCorner(gs.torus_dim(), gs.torus_dim()) = jt.cast<cplx>();
  for (int r = 0; r < gs.num_roots(); ++r) J(gs.e(r), gs.e(r)) = cplx(0.0, gs.sign(r));
  return J;
}

/// scale * f(J., J., J.) for a 3-form.
inline InvariantForm pullback3(const InvariantForm& f, const Eigen::MatrixXcd& J, cplx scale) {
  const int n = f.dim();
  std::vector<std::vector<std::pair<int, cplx>>> cols(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (J(r, c) != cplx(0.0)) cols[static_cast<std::size_t>(c)].push_back({r, J(r, c)});
  InvariantForm out(3, n);
  for_each_increasing_tuple(n, 3, [&](std::span<const int> t) {
    cplx v = 0.0;
    for (auto [a, ca] : cols[static_cast<std::size_t>(t[0])])
      for (auto [b, cb] : cols[static_cast<std::size_t>(t[1])])
        for (auto [c, cc] : cols[static_cast<std::size_t>(t[2])]) v += ca * cb * cc * f({a, b, c});
    if (v != cplx(0.0)) out.set(t, scale * v);
  });
  return out;
}

/// d omega by the Chevalley-Eilenberg differential of the Kaehler form.
inline InvariantForm d_omega_oracle(const HermitianStructure& h) {
  return exterior_derivative(h.group(), omega_form(h));
}

/// d^c omega = -(d omega)(J., J., J.).
inline InvariantForm dc_omega_oracle(const HermitianStructure& h) {
  return pullback3(d_omega_oracle(h), complex_structure(h.group(), h.jt()->matrix), -1.0);
}

/// theta_X = g(., X) for X = sum_i c_i (i H_i) in the torus.
inline InvariantForm theta(const HermitianStructure& h, const Eigen::VectorXd& c) {
  const GroupSpec& gs = h.group();
  InvariantForm t(1, gs.dim());
  // g(H_j, i H_i) = i g(H_j, H_i) = -i M_ji
  const Eigen::VectorXd mc = h.torus().matrix * c;
  for (int j = 0; j < gs.torus_dim(); ++j) t.set({gs.h(j)}, cplx(0.0, -mc(j)));
  return t;
}

/// sigma_X(Y, W) = kappa([Y, W], X) for a torus vector X = sum_i c_i (i H_i),
/// evaluated through the bracket and the Gram matrix only.
inline InvariantForm sigma(const GroupSpec& gs, const Eigen::VectorXd& c) {
  InvariantForm s(2, gs.dim());
  for_each_increasing_tuple(gs.dim(), 2, [&](std::span<const int> t) {
    cplx v = 0.0;
    for (const Term& term : gs.bracket(t[0], t[1]))
      if (gs.is_torus(term.index)) v += term.coeff * cplx(0.0, gs.killing_gram().row(term.index).dot(c));
    if (v != cplx(0.0)) s.set(t, v);
  });
  return s;
}

/// Real g-orthonormal basis of the compact form, as columns over the Chevalley basis.
inline Eigen::MatrixXcd orthonormal_basis(const HermitianStructure& h) {
  const GroupSpec& gs = h.group();
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(gs.dim(), gs.dim());
  // Torus: i H_i with M^{-1/2} to orthonormalize.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.torus().matrix);
  const Eigen::MatrixXd w = es.operatorInverseSqrt();
  const int T = gs.torus_dim();
  B.topLeftCorner(T, T) = cplx(0.0, 1.0) * w.cast<cplx>();
  int col = T;
  for (int r = 0; r < gs.num_positive(); ++r) {
    const double s = 1.0 / std::sqrt(2.0 * h.x(r));
    B(gs.e(r), col) = s;
    B(gs.e(gs.negative(r)), col) = -s;
    ++col;
    B(gs.e(r), col) = cplx(0.0, s);
    B(gs.e(gs.negative(r)), col) = cplx(0.0, s);
    ++col;
  }
  return B;
}

/// Evaluates a k-form on arbitrary vectors given as columns over the Chevalley basis.
inline cplx evaluate(const InvariantForm& f, const std::vector<Eigen::VectorXcd>& v) {
  cplx total = 0.0;
  const int k = f.degree();
  f.for_each([&](std::span<const int> idx, cplx val) {
    // Alternating sum over permutations of the stored sorted tuple.
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
      int sign = 1;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) sign = -sign;
      cplx p = val * static_cast<double>(sign);
      for (int i = 0; i < k; ++i) p *= v[static_cast<std::size_t>(i)](idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
      total += p;
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return total;
}

/// Pointwise inner product of two 2-forms, sum over i < j on a g-orthonormal basis.
inline double inner2(const HermitianStructure& h, const InvariantForm& a, const InvariantForm& b) {
  const Eigen::MatrixXcd B = orthonormal_basis(h);
  double s = 0.0;
  for (int i = 0; i < B.cols(); ++i)
    for (int j = i + 1; j < B.cols(); ++j) {
      const std::vector<Eigen::VectorXcd> v{B.col(i), B.col(j)};
      s += (evaluate(a, v) * evaluate(b, v)).real();
    }
  return s;
}

/// Uniform simple values strictly above the positivity bound of rs.
inline Eigen::VectorXd random_simple_values(const RootSystem& rs, std::mt19937_64& rng, double hi = 3.0,
                                            double margin = 0.05) {
  const double lo = positivity_bound(rs) + margin;
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd X(rs.rank());
  for (Eigen::Index i = 0; i < X.size(); ++i) X(i) = u(rng);
  return X;
}

/// Random structure: SPD torus metric, positive fiber, compatible J_t, scale in [0.5, 2].
inline HermitianStructure random_structure(std::shared_ptr<const GroupSpec> gs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.3, 3.0), zs(0.5, 2.0);
  const int T = gs->torus_dim();
  Eigen::MatrixXd A(T, T);
  for (int i = 0; i < T; ++i)
    for (int j = 0; j < T; ++j) A(i, j) = u(rng);
  TorusMetric torus{A * A.transpose() + 0.5 * Eigen::MatrixXd::Identity(T, T)};
  FiberMetric fiber{std::vector<double>(static_cast<std::size_t>(gs->num_positive()))};
  for (double& v : fiber.x) v = pos(rng);
  std::vector<double> z(static_cast<std::size_t>(gs->num_factors()));
  for (double& v : z) v = zs(rng);
  std::optional<TorusComplexStructure> jt;
  if (T % 2 == 0) jt = TorusComplexStructure::compatible_with(torus.matrix);
  return HermitianStructure(std::move(gs), z, std::move(torus), std::move(fiber), std::move(jt));
}

}  // namespace skt::oracle
