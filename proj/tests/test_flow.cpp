#include "generators.hpp"
#include "oracles.hpp"

#include "skt/error.hpp"
#include "skt/flow.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace skt;

namespace {

RootSystem a2() { return build_root_system({'A', 2}); }
RootSystem b2() { return build_root_system({'B', 2}); }
RootSystem g2() { return build_root_system({'G', 2}, Normalization::short2); }

FlowConfig config(Integrator i) {
  FlowConfig cfg;
  cfg.integrator = i;
  return cfg;
}

void expect_same(const Trajectory& a, const Trajectory& b) {
  EXPECT_EQ(a.termination, b.termination);
  EXPECT_EQ(a.metadata, b.metadata);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].t, b.samples[i].t);
    EXPECT_EQ(a.samples[i].x, b.samples[i].x);
    EXPECT_EQ(a.samples[i].F, b.samples[i].F);
    EXPECT_EQ(a.samples[i].grad_inf, b.samples[i].grad_inf);
  }
}

}  // namespace

TEST(GramMatrix, Examples) {
  Eigen::Matrix2d q;
  q << 2, -1, -1, 2;
  EXPECT_TRUE(gram_matrix(a2()).isApprox(q));
  q << 2, -1, -1, 1;
  EXPECT_TRUE(gram_matrix(b2()).isApprox(q));
  q << 2, -3, -3, 6;
  EXPECT_TRUE(gram_matrix(g2()).isApprox(q));
}

TEST(Rhs, Examples) {
  EXPECT_TRUE(rhs(a2(), Eigen::Vector2d(2.0, 2.0)).isApprox(Eigen::Vector2d(-7.0 / 6, -7.0 / 6)));
  EXPECT_LT((rhs(g2(), Eigen::Vector2d(1.0, 2.0)) - Eigen::Vector2d(0.0, -5.0)).cwiseAbs().maxCoeff(), 1e-14);
  for (const SimpleType& t : gen::types_up_to(8)) {
    const RootSystem rs = build_root_system(t);
    EXPECT_EQ(rhs(rs, Eigen::VectorXd::Ones(rs.rank())).cwiseAbs().maxCoeff(), 0.0);
  }
  EXPECT_THROW(rhs(b2(), Eigen::Vector2d(0.5, 0.5)), DomainError);
}

TEST(Rhs, MatchesPrintedSystems) {
  std::mt19937_64 rng(gen::kSeed);
  struct Case {
    RootSystem rs;
    Eigen::Vector2d (*printed)(double, double);
    char family;
  };
  const std::vector<Case> cases{{a2(), oracle::printed_su3, 'A'}, {b2(), oracle::printed_so5, 'B'},
                                {g2(), oracle::printed_g2, 'G'}};
  for (const Case& c : cases)
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::VectorXd x = oracle::random_simple_values(c.rs, rng, 4.0, 0.01);
      const Eigen::Vector2d expected = c.printed(x(0), x(1));
      EXPECT_LT((rhs(c.rs, x) - expected).cwiseAbs().maxCoeff(), 1e-12 * oracle::printed_scale(c.family, x(0), x(1)));
    }
}

TEST(Rhs, IsMinusGramTimesGradient) {
  std::mt19937_64 rng(gen::kSeed + 1);
  for (const SimpleType& t : gen::types_up_to(6)) {
    const RootSystem rs = build_root_system(t, Normalization::short2);
    const Eigen::VectorXd x = oracle::random_simple_values(rs, rng);
    const Eigen::VectorXd expected = -rs.gram() * oracle::grad_fd(rs, x);
    EXPECT_LT((rhs(rs, x) - expected).cwiseAbs().maxCoeff(), 1e-5 * std::max(1.0, expected.cwiseAbs().maxCoeff()))
        << t.name();
  }
}

// The simple-value flow pushed through the affine map agrees with the per-root flow.
TEST(Rhs, ConsistentWithPerRootFlow) {
  std::mt19937_64 rng(gen::kSeed + 2);
  for (const SimpleType& t : gen::types_up_to(8)) {
    const RootSystem rs = build_root_system(t);
    for (int trial = 0; trial < 50; ++trial)
      EXPECT_LT(rhs_consistency(rs, oracle::random_simple_values(rs, rng)), 1e-12) << t.name();
  }
}

TEST(Integrate, A2Converges) {
  for (Integrator i : {Integrator::rk4_fixed, Integrator::rkf45_adaptive}) {
    const Trajectory tr = integrate(a2(), Eigen::Vector2d(2.0, 2.0), config(i));
    EXPECT_EQ(tr.termination, Termination::converged) << to_string(i);
    EXPECT_LT((tr.final().x.array() - 1.0).abs().maxCoeff(), 1e-6);
    // Strictly decreasing until F reaches its minimum 3 to machine precision.
    for (std::size_t k = 1; k < tr.samples.size(); ++k) {
      ASSERT_LE(tr.samples[k].F, tr.samples[k - 1].F);
      if (tr.samples[k - 1].F - 3.0 > 1e-12) ASSERT_LT(tr.samples[k].F, tr.samples[k - 1].F);
    }
    EXPECT_EQ(tr.metadata.at("type"), "A2");
    EXPECT_EQ(tr.metadata.at("integrator"), to_string(i));
  }
}

TEST(Integrate, ConstantAtBiinvariantPoint) {
  const Trajectory stop = integrate(g2(), Eigen::Vector2d(1.0, 1.0));
  EXPECT_EQ(stop.termination, Termination::converged);
  EXPECT_EQ(stop.samples.size(), 1u);

  FlowConfig cfg;
  cfg.stop_on_convergence = false;
  cfg.t_end = 5.0;
  const Trajectory tr = integrate(g2(), Eigen::Vector2d(1.0, 1.0), cfg);
  EXPECT_EQ(tr.termination, Termination::t_end_reached);
  for (const Sample& s : tr.samples) EXPECT_EQ(s.x, Eigen::Vector2d(1.0, 1.0));
}

TEST(Integrate, CoordinateLinesAreInvariant) {
  for (const RootSystem& rs : {a2(), b2(), g2()})
    for (Integrator i : {Integrator::rk4_fixed, Integrator::rkf45_adaptive})
      for (int fixed = 0; fixed < 2; ++fixed) {
        Eigen::Vector2d x0(2.0, 2.0);
        x0(fixed) = 1.0;
        FlowConfig cfg = config(i);
        cfg.t_end = 50.0;
        const Trajectory tr = integrate(rs, x0, cfg);
        double dev = 0.0;
        for (const Sample& s : tr.samples) dev = std::max(dev, std::abs(s.x(fixed) - 1.0));
        EXPECT_LT(dev, 1e-9) << rs.type().name() << " " << to_string(i);
      }
}

TEST(Integrate, FDecreasesFromRandomStarts) {
  std::mt19937_64 rng(gen::kSeed + 3);
  for (const SimpleType& t : {SimpleType{'A', 3}, SimpleType{'B', 3}, SimpleType{'C', 4}, SimpleType{'D', 4},
                              SimpleType{'F', 4}, SimpleType{'G', 2}})
    for (Integrator i : {Integrator::rk4_fixed, Integrator::rkf45_adaptive}) {
      const RootSystem rs = build_root_system(t);
      FlowConfig cfg = config(i);
      cfg.t_end = 200.0;
      const Trajectory tr = integrate(rs, oracle::random_simple_values(rs, rng), cfg);
      for (std::size_t k = 1; k < tr.samples.size(); ++k)
        ASSERT_LE(tr.samples[k].F, tr.samples[k - 1].F + 1e-10) << t.name();
      EXPECT_EQ(tr.termination, Termination::converged) << t.name();
      EXPECT_LT((tr.final().x.array() - 1.0).abs().maxCoeff(), 1e-6);
    }
}

TEST(Integrate, IntegratorsAgree) {
  FlowConfig rk4 = config(Integrator::rk4_fixed);
  FlowConfig rkf = config(Integrator::rkf45_adaptive);
  rk4.t_end = rkf.t_end = 3.0;
  rk4.stop_on_convergence = rkf.stop_on_convergence = false;
  rkf.rtol = 1e-11;
  const Eigen::Vector2d x0(0.8, 2.5);
  const Trajectory a = integrate(b2(), x0, rk4);
  const Trajectory b = integrate(b2(), x0, rkf);
  EXPECT_NEAR(a.final().t, 3.0, 1e-12);
  EXPECT_NEAR(b.final().t, 3.0, 1e-12);
  EXPECT_LT((a.final().x - b.final().x).cwiseAbs().maxCoeff(), 1e-8);
}

// Scaling the Gram matrix by c reparametrizes time: X_{cQ}(t) = X_Q(c t).
TEST(Integrate, NormalizationCovariance) {
  for (const SimpleType& t : {SimpleType{'A', 2}, SimpleType{'B', 3}, SimpleType{'G', 2}}) {
    const RootSystem l = build_root_system(t, Normalization::long2);
    const RootSystem k = build_root_system(t, Normalization::killing);
    const double c = killing_normalization_constant(l);
    FlowConfig cl, ck;
    cl.stop_on_convergence = ck.stop_on_convergence = false;
    cl.t_end = 2.0;
    cl.h = 0.01;
    ck.t_end = cl.t_end / c;
    ck.h = cl.h / c;
    const Eigen::VectorXd x0 = Eigen::VectorXd::LinSpaced(l.rank(), 1.3, 2.1);
    const Trajectory a = integrate(l, x0, cl);
    const Trajectory b = integrate(k, x0, ck);
    ASSERT_EQ(a.samples.size(), b.samples.size()) << t.name();
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      EXPECT_NEAR(b.samples[i].t * c, a.samples[i].t, 1e-12);
      EXPECT_LT((a.samples[i].x - b.samples[i].x).cwiseAbs().maxCoeff(), 1e-12) << t.name();
    }
  }
}

TEST(Integrate, RejectsStartOutsideDomain) {
  try {
    integrate(b2(), Eigen::Vector2d(0.5, 0.5));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("(1,2)"), std::string::npos) << msg;
    EXPECT_NE(msg.find("0.666667"), std::string::npos) << msg;
  }
  EXPECT_THROW(integrate(b2(), Eigen::Vector3d(1.0, 1.0, 1.0)), std::invalid_argument);
}

TEST(Integrate, ReportsPositivityViolation) {
  FlowConfig cfg;
  cfg.h = 200.0;
  cfg.min_step = 20.0;
  cfg.t_end = 1000.0;
  const Trajectory tr = integrate(b2(), Eigen::Vector2d(0.7, 0.7), cfg);
  EXPECT_EQ(tr.termination, Termination::positivity_violation);
  EXPECT_EQ(tr.samples.size(), 1u);
}

TEST(Integrate, ProductFactorsDecouple) {
  const GroupSpec gs({{{'A', 2}, Normalization::long2}, {{'G', 2}, Normalization::short2}});
  const std::vector<Eigen::VectorXd> x0{Eigen::Vector2d(2.0, 1.5), Eigen::Vector2d(1.2, 0.9)};
  const std::vector<Trajectory> trs = integrate(gs, x0);
  ASSERT_EQ(trs.size(), 2u);
  expect_same(trs[0], integrate(a2(), x0[0]));
  expect_same(trs[1], integrate(g2(), x0[1]));
  EXPECT_THROW(integrate(gs, {x0[0]}), std::invalid_argument);
}

TEST(FlowConfig, Validation) {
  FlowConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.h = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.t_end = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.tol = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(FlowEnums, ParseRoundTrip) {
  for (Integrator i : {Integrator::rk4_fixed, Integrator::rkf45_adaptive}) EXPECT_EQ(parse_integrator(to_string(i)), i);
  EXPECT_EQ(parse_integrator("rk4"), Integrator::rk4_fixed);
  EXPECT_EQ(parse_integrator("rkf45"), Integrator::rkf45_adaptive);
  EXPECT_THROW(parse_integrator("euler"), ParseError);
  for (Termination t : {Termination::converged, Termination::t_end_reached, Termination::positivity_violation})
    EXPECT_EQ(parse_termination(to_string(t)), t);
  EXPECT_THROW(parse_termination("done"), ParseError);
}

TEST(GradientFlowCheck, Examples) {
  FlowConfig cfg;
  cfg.h = 0.005;
  EXPECT_LT(gradient_flow_check(a2(), Eigen::Vector2d(2.0, 2.0), cfg), 1e-6);
  // Only the rounding of Q^{1/2} Q^{-1/2} remains.
  EXPECT_LT(gradient_flow_check(a2(), Eigen::Vector2d(1.0, 1.0)), 1e-14);
  EXPECT_LT(gradient_flow_check(b2(), Eigen::Vector2d(1.5, 0.9)), 1e-6);
}

TEST(TrajectoryIo, CsvRoundTripIsExact) {
  for (Integrator i : {Integrator::rk4_fixed, Integrator::rkf45_adaptive}) {
    const Trajectory tr = integrate(g2(), Eigen::Vector2d(1.7, 0.8), config(i));
    std::stringstream ss;
    write_csv(ss, tr);
    expect_same(read_csv(ss), tr);
  }
}

TEST(TrajectoryIo, JsonRoundTripIsExact) {
  const Trajectory tr = integrate(b2(), Eigen::Vector2d(1.7, 0.8), config(Integrator::rkf45_adaptive));
  std::stringstream ss;
  write_json(ss, tr);
  expect_same(read_json(ss), tr);
}

TEST(TrajectoryIo, CsvLayout) {
  FlowConfig cfg;
  cfg.t_end = 0.02;
  const Trajectory tr = integrate(a2(), Eigen::Vector2d(2.0, 2.0), cfg);
  std::stringstream ss;
  write_csv(ss, tr);
  const std::string text = ss.str();
  EXPECT_NE(text.find("# termination=t_end_reached\n"), std::string::npos);
  EXPECT_NE(text.find("\nt,x_1,x_2,F,grad_inf\n"), std::string::npos);
  EXPECT_NE(text.find("# type=A2\n"), std::string::npos);
}

TEST(TrajectoryIo, MalformedInput) {
  auto csv = [](const std::string& s) {
    std::istringstream is(s);
    return read_csv(is);
  };
  EXPECT_THROW(csv(""), ParseError);
  EXPECT_THROW(csv("# termination=converged\n"), ParseError);
  EXPECT_THROW(csv("t,x_1,F,grad_inf\n0,1,1,0\n"), ParseError);
  EXPECT_THROW(csv("# termination=converged\nt,x_1,F,grad_inf\n0,1,1\n"), ParseError);
  EXPECT_THROW(csv("# termination=converged\nt,x_1,F,grad_inf\n0,abc,1,0\n"), ParseError);
  EXPECT_THROW(csv("# termination=converged\nx,y\n"), ParseError);
  std::istringstream js("{\"samples\": 3");
  EXPECT_THROW(read_json(js), ParseError);
}
