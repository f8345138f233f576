#include "criteria.hpp"

#include "oracles.hpp"

#include "skt/curvature.hpp"
#include "skt/flow.hpp"
#include "skt/hermitian.hpp"
#include "skt/structure_constants.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

namespace skt::acceptance {

namespace {

// Pinned tolerances and budgets.
constexpr double kIdentityTol = 1e-12;
constexpr double kIdentityBudget = 60.0;
constexpr double kKillingPluriclosedTol = 1e-10;
constexpr double kKillingPluriclosedBudget = 120.0;
constexpr double kFamilyTol = 1e-9;
constexpr double kPerturbation = 0.1;
constexpr double kPerturbedMin = 1e-3;
constexpr double kPrintedRelTol = 1e-12;
constexpr double kConvergedDist = 1e-6;
constexpr double kMonotoneSlack = 1e-10;
constexpr double kConvergenceBudget = 60.0;
constexpr double kInvariantLineTol = 1e-9;
constexpr double kNewtonDist = 1e-8;
constexpr double kOracleTol = 1e-10;
constexpr double kKillingConstTol = 1e-12;
constexpr double kFdStep = 1e-6;
constexpr double kFdRelTol = 1e-6;

using Clock = std::chrono::steady_clock;

SimpleType T(const char* name) { return SimpleType::parse(name); }

std::vector<SimpleType> types(std::initializer_list<const char*> names) {
  std::vector<SimpleType> out;
  for (const char* n : names) out.push_back(T(n));
  return out;
}

std::vector<SimpleType> range(char family, int lo, int hi) {
  std::vector<SimpleType> out;
  for (int r = lo; r <= hi; ++r) out.push_back(make_type(family, r));
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

// Paper-matching normalization of each rank-2 example.
Normalization example_norm(const SimpleType& t) { return t.family == 'G' ? Normalization::short2 : Normalization::long2; }

Result c1() {
  Result r{1, "", true, "", 0.0};
  std::vector<SimpleType> ts = range('A', 1, 8);
  for (auto v : {range('B', 2, 4), range('C', 3, 4), range('D', 4, 5), types({"G2", "F4"})}) ts.insert(ts.end(), v.begin(), v.end());
  const auto start = Clock::now();
  double worst = 0.0;
  std::string failed;
  for (const SimpleType& t : ts) {
    const RootSystem rs = build_root_system(t);
    const IdentityReport rep = verify_identities(rs, structure_constants(rs), kIdentityTol);
    for (const IdentityCheck& c : rep.checks) worst = std::max(worst, c.max_residual);
    if (!rep.all_passed()) {
      r.passed = false;
      for (const IdentityCheck& c : rep.checks)
        if (!c.passed) failed += " " + t.name() + ":" + c.name;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= kIdentityBudget) r.passed = false;
  r.detail = std::to_string(ts.size()) + " types, max float residual " + fmt(worst) + ", " + fmt(secs) + " s" +
             (failed.empty() ? "" : ", failed:" + failed);
  return r;
}

Result c2() {
  Result r{2, "", true, "", 0.0};
  const auto start = Clock::now();
  double worst = 0.0;
  for (const SimpleType& t : types({"A2", "A3", "B2", "B3", "C3", "D4", "G2"})) {
    const auto h = HermitianStructure::biinvariant(GroupSpec::simple(t, Normalization::killing));
    const PluriclosedReport rep = is_pluriclosed(h, kKillingPluriclosedTol, CheckMode::brute_force);
    worst = std::max(worst, rep.max_residual);
    if (!rep.pluriclosed) r.passed = false;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= kKillingPluriclosedBudget) r.passed = false;
  r.detail = "max residual " + fmt(worst) + ", " + fmt(secs) + " s";
  return r;
}

Result c3(std::mt19937_64& rng) {
  Result r{3, "", true, "", 0.0};
  double worst_closed = 0.0, worst_brute = 0.0, min_perturbed = 1e300;
  std::uniform_real_distribution<double> zs(0.5, 2.0);
  for (const SimpleType& t : types({"A2", "A3", "B2", "B3", "C3", "D4", "G2"})) {
    const auto gs = GroupSpec::simple(t);
    const RootSystem& rs = gs->roots(0);
    std::uniform_int_distribution<int> pick(rs.rank(), rs.num_positive() - 1);
    for (int s = 0; s < 100; ++s) {
      const HermitianStructure h =
          pluriclosed_family(gs, {zs(rng)}, {oracle::random_simple_values(rs, rng)});
      const PluriclosedReport closed = is_pluriclosed(h, kFamilyTol, CheckMode::closed_form);
      const PluriclosedReport brute = is_pluriclosed(h, kFamilyTol, CheckMode::brute_force);
      worst_closed = std::max(worst_closed, closed.max_residual);
      worst_brute = std::max(worst_brute, brute.max_residual);
      if (!closed.pluriclosed || !brute.pluriclosed) r.passed = false;

      FiberMetric bumped = h.fiber();
      bumped.x[static_cast<std::size_t>(pick(rng))] += kPerturbation;
      const PluriclosedReport off = is_pluriclosed(h.with_fiber(bumped), kFamilyTol, CheckMode::closed_form);
      min_perturbed = std::min(min_perturbed, off.worst_skt1.residual);
      if (!(off.worst_skt1.residual > kPerturbedMin)) r.passed = false;
    }
  }
  r.detail = "max residual closed " + fmt(worst_closed) + " brute " + fmt(worst_brute) +
             ", min perturbed skt1 residual " + fmt(min_perturbed);
  return r;
}

Result c4(std::mt19937_64& rng) {
  Result r{4, "", true, "", 0.0};
  double worst = 0.0;
  for (const SimpleType& t : types({"A2", "B2", "G2"})) {
    const RootSystem rs = build_root_system(t, example_norm(t));
    for (int s = 0; s < 1000; ++s) {
      const Eigen::VectorXd X = oracle::random_simple_values(rs, rng, 4.0, 0.01);
      const Eigen::VectorXd got = rhs(rs, X);
      const Eigen::Vector2d want = t.family == 'A'   ? oracle::printed_su3(X(0), X(1))
                                   : t.family == 'B' ? oracle::printed_so5(X(0), X(1))
                                                     : oracle::printed_g2(X(0), X(1));
      const double rel = (got - want).cwiseAbs().maxCoeff() / oracle::printed_scale(t.family, X(0), X(1));
      worst = std::max(worst, rel);
    }
  }
  r.passed = worst < kPrintedRelTol;
  r.detail = "SU(3), SO(5) long2 and G2 short2; max relative error " + fmt(worst);
  return r;
}

Result c5(std::mt19937_64& rng) {
  Result r{5, "", true, "", 0.0};
  const auto start = Clock::now();
  FlowConfig cfg;
  cfg.t_end = 200.0;
  double worst_dist = 0.0, worst_rise = 0.0;
  int runs = 0;
  for (const SimpleType& t : types({"A2", "B2", "G2", "A3"})) {
    const RootSystem rs = build_root_system(t, example_norm(t));
    for (int s = 0; s < 20; ++s, ++runs) {
      const Trajectory tr = integrate(rs, oracle::random_simple_values(rs, rng, 4.0), cfg);
      const double dist = (tr.final().x.array() - 1.0).abs().maxCoeff();
      worst_dist = std::max(worst_dist, dist);
      for (std::size_t i = 1; i < tr.samples.size(); ++i)
        worst_rise = std::max(worst_rise, tr.samples[i].F - tr.samples[i - 1].F);
      if (dist >= kConvergedDist) r.passed = false;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (worst_rise > kMonotoneSlack || secs >= kConvergenceBudget) r.passed = false;
  r.detail = std::to_string(runs) + " runs, max final distance " + fmt(worst_dist) + ", max F increase " +
             fmt(worst_rise) + ", " + fmt(secs) + " s";
  return r;
}

Result c6(std::mt19937_64& rng) {
  Result r{6, "", true, "", 0.0};
  FlowConfig cfg;
  cfg.t_end = 50.0;
  double worst = 0.0;
  for (const SimpleType& t : types({"A2", "B2", "G2"})) {
    const RootSystem rs = build_root_system(t, example_norm(t));
    for (int fixed = 0; fixed < 2; ++fixed)
      for (int s = 0; s < 5; ++s) {
        Eigen::VectorXd X0 = oracle::random_simple_values(rs, rng);
        X0(fixed) = 1.0;
        for (Integrator integ : {Integrator::rk4_fixed, Integrator::rkf45_adaptive}) {
          cfg.integrator = integ;
          for (const Sample& smp : integrate(rs, X0, cfg).samples) worst = std::max(worst, std::abs(smp.x(fixed) - 1.0));
        }
      }
  }
  r.passed = worst < kInvariantLineTol;
  r.detail = "A2, B2, G2 with both integrators; max |x_i - 1| " + fmt(worst);
  return r;
}

Result c7(std::mt19937_64& rng) {
  Result r{7, "", true, "", 0.0};
  double worst = 0.0, min_off = 1e300, max_at_one = 0.0;
  for (const SimpleType& t : types({"A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"})) {
    const auto gs = GroupSpec::simple(t);
    const RootSystem& rs = gs->roots(0);
    for (int s = 0; s < 50; ++s) {
      const NewtonResult nr = newton_critical_point(rs, oracle::random_simple_values(rs, rng, 6.0));
      const double dist = (nr.x.array() - 1.0).abs().maxCoeff();
      worst = std::max(worst, dist);
      if (!nr.converged || dist >= kNewtonDist) r.passed = false;

      const Eigen::VectorXd X = oracle::random_simple_values(rs, rng);
      const HermitianStructure h = pluriclosed_family(gs, {1.0}, {X});
      const CytReport cyt = is_cyt(h);
      if ((X.array() - 1.0).abs().maxCoeff() > 1e-6) {
        min_off = std::min(min_off, cyt.residual);
        if (cyt.cyt) r.passed = false;
      }
    }
    const CytReport at_one = is_cyt(pluriclosed_family(gs, {1.0}, {Eigen::VectorXd::Ones(rs.rank())}));
    max_at_one = std::max(max_at_one, at_one.residual);
    if (!at_one.cyt) r.passed = false;
  }
  r.detail = "Newton max distance " + fmt(worst) + "; Bismut residual at 1: " + fmt(max_at_one) +
             ", min elsewhere " + fmt(min_off);
  return r;
}

Result c8(std::mt19937_64& rng) {
  Result r{8, "", true, "", 0.0};
  double w1 = 0.0, w2 = 0.0, w3 = 0.0;
  for (const SimpleType& t : types({"A2", "B2", "G2"})) {
    const auto gs = GroupSpec::simple(t, example_norm(t));
    for (int s = 0; s < 10; ++s) {
      const HermitianStructure h = oracle::random_structure(gs, rng);
      const InvariantForm d = oracle::d_omega_oracle(h);
      const InvariantForm dc = oracle::dc_omega_oracle(h);
      const InvariantForm ddc = exterior_derivative(*gs, dc);
      for_each_increasing_tuple(gs->dim(), 3, [&](std::span<const int> x) {
        w1 = std::max(w1, std::abs(d(x) - d_omega(h, x[0], x[1], x[2])));
        w2 = std::max(w2, std::abs(dc(x) - dc_omega(h, x[0], x[1], x[2])));
      });
      for_each_increasing_tuple(gs->dim(), 4, [&](std::span<const int> x) {
        w3 = std::max(w3, std::abs(ddc(x) - ddc_omega(h, x[0], x[1], x[2], x[3])));
      });
    }
  }
  r.passed = w1 < kOracleTol && w2 < kOracleTol && w3 < kOracleTol;
  r.detail = "max |d omega| diff " + fmt(w1) + ", |d^c omega| " + fmt(w2) + ", |dd^c omega| " + fmt(w3);
  return r;
}

Result c9() {
  Result r{9, "", true, "", 0.0};
  std::vector<SimpleType> ts = range('A', 1, 8);
  for (auto v : {range('B', 2, 8), range('C', 2, 8), range('D', 3, 8), range('E', 6, 8), types({"F4", "G2"})})
    ts.insert(ts.end(), v.begin(), v.end());
  double worst = 0.0;
  std::string failed;
  for (const SimpleType& t : ts) {
    const double c = killing_normalization_constant(build_root_system(t));
    const double err = std::abs(c - 1.0 / (2.0 * oracle::dual_coxeter(t)));
    worst = std::max(worst, err);
    if (err >= kKillingConstTol) failed += " " + t.name();
  }
  r.passed = failed.empty();
  r.detail = std::to_string(ts.size()) + " types, max error " + fmt(worst) + (failed.empty() ? "" : ", failed:" + failed);
  return r;
}

Result c10(std::mt19937_64& rng) {
  Result r{10, "", true, "", 0.0};
  std::vector<SimpleType> ts = range('A', 1, 8);
  for (auto v : {range('B', 2, 4), range('C', 3, 4), range('D', 4, 5), range('E', 6, 8), types({"F4", "G2"})})
    ts.insert(ts.end(), v.begin(), v.end());
  double worst = 0.0;
  for (const SimpleType& t : ts) {
    const RootSystem rs = build_root_system(t);
    for (int s = 0; s < 100; ++s) {
      const Eigen::VectorXd X = oracle::random_simple_values(rs, rng);
      const Eigen::VectorXd g = grad_F(rs, X);
      const Eigen::VectorXd fd = oracle::grad_fd(rs, X, kFdStep);
      worst = std::max(worst, (g - fd).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff());
    }
  }
  r.passed = worst < kFdRelTol;
  r.detail = std::to_string(ts.size()) + " types, max relative error " + fmt(worst);
  return r;
}

}  // namespace

const std::vector<std::string>& titles() {
  static const std::vector<std::string> t{
      "structure-constant identities",
      "Killing metric pluriclosed (brute force)",
      "pluriclosed family sound and sharp",
      "printed flow systems reproduced",
      "flow converges, F monotone",
      "invariant lines x_i = 1",
      "pluriclosed and CYT only at 1",
      "closed forms match exterior-derivative oracle",
      "Killing constant equals 1/(2 h_dual)",
      "grad F matches finite differences",
  };
  return t;
}

std::vector<Result> run(const Options& opts, const std::function<void(const Result&)>& report) {
  std::vector<Result> out;
  for (int id = 1; id <= 10; ++id) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(id));
    const auto start = Clock::now();
    Result r;
    try {
      switch (id) {
        case 1: r = c1(); break;
        case 2: r = c2(); break;
        case 3: r = c3(rng); break;
        case 4: r = c4(rng); break;
        case 5: r = c5(rng); break;
        case 6: r = c6(rng); break;
        case 7: r = c7(rng); break;
        case 8: r = c8(rng); break;
        case 9: r = c9(); break;
        default: r = c10(rng); break;
      }
    } catch (const std::exception& e) {
      r = Result{id, "", false, std::string("exception: ") + e.what(), 0.0};
    }
    r.id = id;
    r.title = titles()[static_cast<std::size_t>(id - 1)];
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (report) report(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace skt::acceptance
