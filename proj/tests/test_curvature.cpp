#include "generators.hpp"
#include "oracles.hpp"

#include "skt/curvature.hpp"
#include "skt/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace skt;

namespace {

using cplx = std::complex<double>;

double max_diff(const InvariantForm& a, const InvariantForm& b) {
  double m = 0.0;
  for_each_increasing_tuple(a.dim(), a.degree(),
                            [&](std::span<const int> t) { m = std::max(m, std::abs(a(t) - b(t))); });
  return m;
}

std::vector<std::shared_ptr<const GroupSpec>> groups() {
  return {GroupSpec::simple({'A', 2}), GroupSpec::simple({'B', 3}), GroupSpec::simple({'G', 2}, Normalization::short2),
          GroupSpec::simple({'C', 4}, Normalization::killing),
          GroupSpec::make({{{'A', 1}, Normalization::long2}, {{'B', 2}, Normalization::short2}})};
}

std::vector<SimpleType> flow_types() {
  return {{'A', 2}, {'A', 4}, {'B', 2}, {'B', 4}, {'C', 3}, {'D', 4}, {'D', 5}, {'G', 2}, {'F', 4}, {'E', 6}};
}

}  // namespace

TEST(ZVector, Examples) {
  auto gs = GroupSpec::simple({'A', 2});
  EXPECT_TRUE(z_vector(*gs).isApprox(Eigen::Vector2d(2.0, 2.0)));
  EXPECT_TRUE(z_vector(*gs, FiberMetric{{2.0, 2.0, 3.0}}).isApprox(Eigen::Vector2d(5.0 / 6, 5.0 / 6)));
  for (const auto& g : groups()) {
    const FiberMetric ones{std::vector<double>(static_cast<std::size_t>(g->num_positive()), 1.0)};
    EXPECT_TRUE(z_vector(*g, ones).isApprox(z_vector(*g)));
  }
  EXPECT_THROW(z_vector(*gs, FiberMetric{{1.0}}), std::invalid_argument);
}

TEST(ChernRicci, Examples) {
  const HermitianStructure a2 = HermitianStructure::biinvariant(GroupSpec::simple({'A', 2}));
  EXPECT_TRUE(chern_ricci(a2).v.isApprox(Eigen::Vector2d(-2.0, -2.0)));
  const HermitianStructure g2 = HermitianStructure::biinvariant(GroupSpec::simple({'G', 2}));
  EXPECT_TRUE(chern_ricci(g2).v.isApprox(Eigen::Vector2d(-10.0, -6.0)));
  const HermitianStructure prod = HermitianStructure::biinvariant(
      GroupSpec::make({{{'A', 2}, Normalization::long2}, {{'G', 2}, Normalization::long2}}));
  EXPECT_TRUE(chern_ricci(prod).v.isApprox((Eigen::VectorXd(4) << -2, -2, -10, -6).finished()));
}

TEST(ChernRicci, IndependentOfMetric) {
  std::mt19937_64 rng(gen::kSeed);
  for (const auto& gs : groups()) {
    const Eigen::VectorXd ref = chern_ricci(HermitianStructure::biinvariant(gs)).v;
    for (int trial = 0; trial < 10; ++trial)
      EXPECT_EQ(chern_ricci(oracle::random_structure(gs, rng)).v, ref);
  }
}

TEST(SigmaForm, MatchesBracketOracle) {
  std::mt19937_64 rng(gen::kSeed + 1);
  for (const auto& gs : groups()) {
    const Eigen::VectorXd v = gen::uniform_vector(rng, gs->torus_dim(), -3.0, 3.0);
    EXPECT_LT(max_diff(sigma_form(*gs, v), oracle::sigma(*gs, v)), 1e-12);
  }
}

TEST(BismutRicci, Examples) {
  for (const auto& gs : groups()) {
    std::vector<double> z(static_cast<std::size_t>(gs->num_factors()));
    for (std::size_t f = 0; f < z.size(); ++f) z[f] = 0.7 + 0.9 * static_cast<double>(f);
    EXPECT_LT(bismut_ricci(HermitianStructure::biinvariant(gs, z)).v.cwiseAbs().maxCoeff(), 1e-14);
  }
  auto a2 = GroupSpec::simple({'A', 2});
  const HermitianStructure h = pluriclosed_family(a2, {1.0}, {Eigen::Vector2d(2.0, 2.0)});
  EXPECT_TRUE(bismut_ricci(h).v.isApprox(Eigen::Vector2d(-7.0 / 6, -7.0 / 6)));
}

// rho^B = rho^C - d d* omega, with d* omega taken as a 1-form and d the Chevalley-Eilenberg differential.
TEST(BismutRicci, ChernMinusDDStar) {
  std::mt19937_64 rng(gen::kSeed + 2);
  for (const auto& gs : groups())
    for (int trial = 0; trial < 3; ++trial) {
      const HermitianStructure h = oracle::random_structure(gs, rng);
      const InvariantForm dd_star = exterior_derivative(*gs, oracle::theta(h, d_star_omega(h)));
      InvariantForm expected(2, gs->dim());
      const InvariantForm chern = sigma_form(*gs, chern_ricci(h).v);
      for_each_increasing_tuple(gs->dim(), 2, [&](std::span<const int> t) {
        const cplx v = chern(t) - dd_star(t);
        if (v != cplx(0.0)) expected.set(t, v);
      });
      EXPECT_LT(max_diff(sigma_form(*gs, bismut_ricci(h).v), expected), 1e-11);
    }
}

// Rescaling the whole metric by z leaves rho^B unchanged.
TEST(BismutRicci, ScaleInvariant) {
  std::mt19937_64 rng(gen::kSeed + 3);
  for (const SimpleType& t : flow_types()) {
    auto gs = GroupSpec::simple(t);
    const Eigen::VectorXd xs = oracle::random_simple_values(gs->roots(0), rng);
    const Eigen::VectorXd v1 = bismut_ricci(pluriclosed_family(gs, {1.0}, {xs})).v;
    for (double z : {0.3, 2.5}) {
      const Eigen::VectorXd vz = bismut_ricci(pluriclosed_family(gs, {z}, {xs})).v;
      EXPECT_LT((vz - v1).cwiseAbs().maxCoeff(), 1e-12) << t.name();
      EXPECT_EQ(is_cyt(pluriclosed_family(gs, {z}, {xs})).cyt, is_cyt(pluriclosed_family(gs, {1.0}, {xs})).cyt);
    }
  }
}

// On the pluriclosed family V^B = -grad F, so CYT forces the critical point X = 1.
TEST(BismutRicci, EqualsMinusGradientOnFamily) {
  std::mt19937_64 rng(gen::kSeed + 4);
  for (const SimpleType& t : flow_types()) {
    auto gs = GroupSpec::simple(t);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXd xs = oracle::random_simple_values(gs->roots(0), rng);
      const Eigen::VectorXd v = bismut_ricci(pluriclosed_family(gs, {1.0}, {xs})).v;
      EXPECT_LT((v + grad_F(gs->roots(0), xs)).cwiseAbs().maxCoeff(), 1e-12) << t.name();
    }
  }
}

TEST(IsCyt, Examples) {
  EXPECT_TRUE(is_cyt(HermitianStructure::biinvariant(GroupSpec::simple({'E', 6}))).cyt);
  auto a2 = GroupSpec::simple({'A', 2});
  const CytReport rep = is_cyt(pluriclosed_family(a2, {1.0}, {Eigen::Vector2d(2.0, 2.0)}));
  EXPECT_FALSE(rep.cyt);
  EXPECT_NEAR(rep.residual, 7.0 / 6, 1e-14);
}

TEST(IsCyt, PluriclosedAndCytOnlyAtBiinvariant) {
  std::mt19937_64 rng(gen::kSeed + 5);
  for (const SimpleType& t : flow_types()) {
    auto gs = GroupSpec::simple(t);
    const RootSystem& rs = gs->roots(0);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd xs = oracle::random_simple_values(rs, rng);
      const CytReport rep = is_cyt(pluriclosed_family(gs, {1.0}, {xs}));
      // ||V||_inf bounds the distance to X = 1 through the Hessian, which is >= K^T K / max x^2.
      if ((xs.array() - 1.0).abs().maxCoeff() > 1e-3) EXPECT_FALSE(rep.cyt) << t.name();
    }
    EXPECT_TRUE(is_cyt(pluriclosed_family(gs, {1.0}, {Eigen::VectorXd::Ones(rs.rank())})).cyt);
  }
}

TEST(Functional, A2Example) {
  const RootSystem rs = build_root_system({'A', 2});
  const Eigen::Vector2d x(2.0, 2.0);
  EXPECT_NEAR(functional_F(rs, x), 7.0 - 2.0 * std::log(2.0) - std::log(3.0), 1e-14);
  EXPECT_TRUE(grad_F(rs, x).isApprox(Eigen::Vector2d(7.0 / 6, 7.0 / 6)));
}

TEST(Functional, MinimumAtOnes) {
  for (const SimpleType& t : gen::types_up_to(8)) {
    const RootSystem rs = build_root_system(t);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(rs.rank());
    EXPECT_DOUBLE_EQ(functional_F(rs, ones), rs.num_positive());
    EXPECT_EQ(grad_F(rs, ones).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Functional, MatchesDirectSumAndDifferences) {
  std::mt19937_64 rng(gen::kSeed + 6);
  for (const SimpleType& t : flow_types()) {
    const RootSystem rs = build_root_system(t);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd x = oracle::random_simple_values(rs, rng);
      const double f = functional_F(rs, x);
      EXPECT_NEAR(f, oracle::F_direct(rs, x), 1e-12 * f);
      EXPECT_GE(f, rs.num_positive() - 1e-12);
      const Eigen::VectorXd g = grad_F(rs, x);
      const Eigen::VectorXd fd = oracle::grad_fd(rs, x);
      EXPECT_LT((g - fd).cwiseAbs().maxCoeff(), 1e-6 * std::max(1.0, g.cwiseAbs().maxCoeff())) << t.name();
    }
  }
}

TEST(Functional, HessianIsDerivativeOfGradient) {
  std::mt19937_64 rng(gen::kSeed + 7);
  for (const SimpleType& t : flow_types()) {
    const RootSystem rs = build_root_system(t);
    const Eigen::VectorXd x = oracle::random_simple_values(rs, rng);
    const Eigen::MatrixXd hess = hessian_F(rs, x);
    const double step = 1e-6;
    for (int i = 0; i < rs.rank(); ++i) {
      Eigen::VectorXd p = x, m = x;
      p(i) += step;
      m(i) -= step;
      const Eigen::VectorXd col = (grad_F(rs, p) - grad_F(rs, m)) / (2 * step);
      EXPECT_LT((hess.col(i) - col).cwiseAbs().maxCoeff(), 1e-6 * std::max(1.0, col.cwiseAbs().maxCoeff()));
    }
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hess).eigenvalues().minCoeff(), 0.0);
  }
}

// f(t) = F(X + t D) has f''(t) = sum (x'_alpha)^2 / x_alpha^2 > 0.
TEST(Functional, ConvexAlongLines) {
  std::mt19937_64 rng(gen::kSeed + 8);
  for (const SimpleType& t : flow_types()) {
    const RootSystem rs = build_root_system(t);
    const Eigen::MatrixXd k = coefficient_matrix(rs);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXd x = oracle::random_simple_values(rs, rng);
      const Eigen::VectorXd d = gen::uniform_vector(rng, rs.rank(), -1.0, 1.0);
      const Eigen::VectorXd xa = family_values(rs, x);
      const Eigen::VectorXd dxa = k * d;
      const double expected = (dxa.array() / xa.array()).square().sum();
      const double s = 1e-4;
      const double fd = (functional_F(rs, Eigen::VectorXd(x + s * d)) - 2 * functional_F(rs, x) +
                         functional_F(rs, Eigen::VectorXd(x - s * d))) /
                        (s * s);
      EXPECT_GT(expected, 0.0);
      EXPECT_NEAR(fd, expected, 1e-4 * std::max(1.0, expected)) << t.name();
      EXPECT_NEAR(d.dot(hessian_F(rs, x) * d), expected, 1e-10 * std::max(1.0, expected));
    }
  }
}

TEST(Functional, RejectsBadInput) {
  const RootSystem rs = build_root_system({'B', 2});
  EXPECT_THROW(functional_F(rs, Eigen::Vector2d(0.5, 0.5)), DomainError);
  EXPECT_THROW(grad_F(rs, Eigen::Vector3d(1.0, 1.0, 1.0)), std::invalid_argument);
}

TEST(Newton, FindsBiinvariantPoint) {
  std::mt19937_64 rng(gen::kSeed + 9);
  for (const SimpleType& t : flow_types()) {
    const RootSystem rs = build_root_system(t);
    for (int trial = 0; trial < 10; ++trial) {
      const NewtonResult res = newton_critical_point(rs, oracle::random_simple_values(rs, rng, 5.0, 0.01));
      EXPECT_TRUE(res.converged) << t.name();
      EXPECT_LT((res.x.array() - 1.0).abs().maxCoeff(), 1e-8) << t.name();
    }
  }
  EXPECT_THROW(newton_critical_point(build_root_system({'B', 2}), Eigen::Vector2d(0.5, 0.5)), DomainError);
}
