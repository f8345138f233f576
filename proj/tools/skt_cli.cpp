#include "acceptance/criteria.hpp"

#include "skt/curvature.hpp"
#include "skt/error.hpp"
#include "skt/flow.hpp"
#include "skt/hermitian.hpp"
#include "skt/io.hpp"
#include "skt/structure_constants.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kFalse = 1, kInput = 2, kRuntime = 3 };

std::string coeffs(const skt::Root& r) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) os << (i ? "," : "") << r.coeffs[i];
  return os.str() + ")";
}

std::string vec(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << std::setprecision(17) << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  return os.str() + ")";
}

std::string rational(const skt::Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// ---------------------------------------------------------------------------

struct RootsArgs {
  std::string family;
  int rank = 0;
  std::string norm = "long2";
};

int cmd_roots(const RootsArgs& a) {
  const skt::SimpleType t = skt::make_type(a.family.size() == 1 ? a.family[0] : '?', a.rank);
  const skt::RootSystem rs = skt::build_root_system(t, skt::parse_normalization(a.norm));
  const skt::StructureConstants sc = skt::structure_constants(rs);
  const int P = rs.num_positive();

  std::cout << "type " << t.name() << ", normalization " << skt::to_string(rs.normalization()) << ", " << P
            << " positive roots\n";
  std::cout << "killing constant c = " << rational(skt::killing_normalization_exact(rs)) << "\n";
  std::cout << "gram\n";
  for (int i = 0; i < rs.rank(); ++i) {
    std::cout << "  [";
    for (int j = 0; j < rs.rank(); ++j) std::cout << (j ? ", " : "") << rational(rs.inner_exact(i, j));
    std::cout << "]\n";
  }
  std::cout << "positive roots (index, coefficients, height)\n";
  for (int i = 0; i < P; ++i) std::cout << "  " << i << "  " << coeffs(rs.root(i)) << "  " << rs.height(i) << "\n";
  std::cout << "maximal root " << coeffs(rs.root(rs.maximal_root())) << "\n";

  std::cout << "inner products <a,b> on positive roots\n";
  for (int i = 0; i < P; ++i) {
    std::cout << "  ";
    for (int j = 0; j < P; ++j) std::cout << std::setw(6) << rational(rs.inner_exact(i, j));
    std::cout << "\n";
  }
  std::cout << "structure constants N_{a,b} (a, b positive, a + b a root)\n";
  for (int i = 0; i < P; ++i)
    for (int j = i + 1; j < P; ++j) {
      const int s = rs.sum(i, j);
      if (s < 0) continue;
      std::cout << "  " << coeffs(rs.root(i)) << " + " << coeffs(rs.root(j)) << " -> " << coeffs(rs.root(s))
                << "  N^2 = " << rational(sc.squared(i, j)) << "  sign " << (sc.sign(i, j) > 0 ? "+" : "-") << "\n";
    }

  const skt::IdentityReport rep = skt::verify_identities(rs, sc);
  std::cout << "identities\n";
  for (const auto& c : rep.checks)
    std::cout << "  " << std::left << std::setw(18) << c.name << std::right << (c.passed ? "PASS" : "FAIL") << "  "
              << c.cases << " cases, max residual " << c.max_residual << "\n";
  std::cout << "identities " << (rep.all_passed() ? "PASS" : "FAIL") << "\n";
  return rep.all_passed() ? kOk : kRuntime;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string file;
  double tol = 1e-10;
  std::string mode = "closed";
};

std::string describe(const skt::GroupSpec& gs, const skt::PluriclosedWitness& w, bool with_kind = true) {
  using Kind = skt::PluriclosedWitness::Kind;
  if (w.kind == Kind::none) return with_kind ? "none" : " none";
  std::ostringstream os;
  if (with_kind) os << (w.kind == Kind::skt1 ? "skt1" : w.kind == Kind::skt2 ? "skt2" : "other") << ":";
  if (w.kind == Kind::other) {
    os << " basis";
    for (int b : w.basis) os << " " << b;
  } else {
    for (int r : w.roots) {
      const skt::Root& root = gs.roots(gs.factor_of(r)).root(gs.local(r));
      os << " " << (root.sign > 0 ? "" : "-") << "(";
      for (std::size_t i = 0; i < root.coeffs.size(); ++i) os << (i ? "," : "") << std::abs(root.coeffs[i]);
      os << ")";
      if (gs.num_factors() > 1) os << "@" << gs.factor_of(r);
    }
  }
  os << " residual " << std::setprecision(17) << w.residual;
  return os.str();
}

int cmd_check(const CheckArgs& a) {
  const skt::HermitianStructure h = skt::read_structure_file(a.file);
  skt::CheckMode mode;
  if (a.mode == "closed" || a.mode == "closed_form")
    mode = skt::CheckMode::closed_form;
  else if (a.mode == "brute" || a.mode == "brute_force")
    mode = skt::CheckMode::brute_force;
  else
    throw skt::ParseError("unknown mode '" + a.mode + "' (expected closed or brute)");

  const skt::PluriclosedReport rep = skt::is_pluriclosed(h, a.tol, mode);
  const skt::CytReport cyt = skt::is_cyt(h, a.tol);
  std::cout << std::setprecision(17);
  std::cout << "pluriclosed " << (rep.pluriclosed ? "true" : "false") << "\n";
  std::cout << "max residual " << rep.max_residual << " over " << rep.cases << " cases\n";
  std::cout << "worst " << describe(h.group(), rep.worst) << "\n";
  std::cout << "skt1 max" << describe(h.group(), rep.worst_skt1, false) << "\n";
  std::cout << "skt2 max" << describe(h.group(), rep.worst_skt2, false) << "\n";
  std::cout << "cyt " << (cyt.cyt ? "true" : "false") << "\n";
  std::cout << "bismut residual " << vec(cyt.v) << "\n";
  std::cout << "kahler flag residual " << skt::kahler_flag_residual(h) << "\n";
  return rep.pluriclosed ? kOk : kFalse;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string family;
  int rank = 0;
  std::string x;
  std::string norm = "long2";
  double z = 1.0;
  std::string out;
};

int cmd_classify(const ClassifyArgs& a) {
  const skt::SimpleType t = skt::make_type(a.family.size() == 1 ? a.family[0] : '?', a.rank);
  auto gs = skt::GroupSpec::simple(t, skt::parse_normalization(a.norm));
  const Eigen::VectorXd X = a.x.empty() ? Eigen::VectorXd::Ones(t.rank) : to_vector(skt::parse_list(a.x));
  const skt::HermitianStructure h = skt::pluriclosed_family(gs, {a.z}, {X});
  if (a.out.empty()) {
    skt::write_structure(std::cout, h);
  } else {
    std::ofstream os(a.out);
    if (!os) throw skt::ParseError("cannot write '" + a.out + "'");
    skt::write_structure(os, h);
    std::cerr << "wrote " << a.out << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct FlowArgs {
  std::string family;
  int rank = 0;
  std::string x0;
  std::string norm = "long2";
  double t_end = 100.0;
  double h = 0.01;
  double tol = 1e-8;
  std::string integrator = "rk4";
  std::string out;
  std::string format = "csv";
};

int cmd_flow(const FlowArgs& a) {
  const skt::SimpleType t = skt::make_type(a.family.size() == 1 ? a.family[0] : '?', a.rank);
  const skt::RootSystem rs = skt::build_root_system(t, skt::parse_normalization(a.norm));
  skt::FlowConfig cfg;
  cfg.integrator = skt::parse_integrator(a.integrator);
  cfg.t_end = a.t_end;
  cfg.h = a.h;
  cfg.tol = a.tol;
  if (a.format != "csv" && a.format != "json") throw skt::ParseError("unknown format '" + a.format + "'");
  const Eigen::VectorXd X0 = to_vector(skt::parse_list(a.x0));
  if (X0.size() != rs.rank())
    throw skt::ParseError("--x0 needs " + std::to_string(rs.rank()) + " values for " + t.name());

  const skt::Trajectory tr = skt::integrate(rs, X0, cfg);
  if (!a.out.empty()) {
    std::ofstream os(a.out);
    if (!os) throw skt::ParseError("cannot write '" + a.out + "'");
    if (a.format == "csv")
      skt::write_csv(os, tr);
    else
      skt::write_json(os, tr);
  }
  const skt::Sample& last = tr.final();
  std::cout << std::setprecision(17);
  std::cout << "termination " << skt::to_string(tr.termination) << "\n";
  std::cout << "t " << last.t << "\n";
  std::cout << "x " << vec(last.x) << "\n";
  std::cout << "F " << last.F << "\n";
  std::cout << "grad_inf " << last.grad_inf << "\n";
  std::cout << "samples " << tr.samples.size() << "\n";
  return tr.termination == skt::Termination::positivity_violation ? kRuntime : kOk;
}

// ---------------------------------------------------------------------------

int cmd_verify(const skt::acceptance::Options& opts) {
  int failed = 0;
  skt::acceptance::run(opts, [&](const skt::acceptance::Result& r) {
    std::printf("[%s] %2d %s (%.2f s): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  return failed == 0 ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Root data, pluriclosed structures and the pluriclosed flow on compact Lie groups"};
  app.require_subcommand(1);

  RootsArgs roots;
  auto* r = app.add_subcommand("roots", "Root system, Gram matrix, structure constants and identity suite");
  r->add_option("family", roots.family, "A, B, C, D, E, F or G")->required();
  r->add_option("rank", roots.rank)->required();
  r->add_option("--norm", roots.norm, "long2, short2 or killing");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Pluriclosed, CYT and Kaehler-flag report for a structure file");
  c->add_option("file", check.file, "Structure JSON")->required();
  c->add_option("--tol", check.tol);
  c->add_option("--mode", check.mode, "closed or brute");

  ClassifyArgs cls;
  auto* k = app.add_subcommand("classify", "Write the pluriclosed structure with the given simple values");
  k->add_option("family", cls.family)->required();
  k->add_option("rank", cls.rank)->required();
  k->add_option("--x", cls.x, "Simple values, comma separated (default all 1)");
  k->add_option("--norm", cls.norm);
  k->add_option("--z", cls.z, "Scale of the factor");
  k->add_option("--out", cls.out, "Output file (default stdout)");

  FlowArgs flow;
  auto* f = app.add_subcommand("flow", "Integrate the pluriclosed flow on the pluriclosed family");
  f->add_option("family", flow.family)->required();
  f->add_option("rank", flow.rank)->required();
  f->add_option("--x0", flow.x0, "Initial simple values, comma separated")->required();
  f->add_option("--norm", flow.norm);
  f->add_option("--t-end", flow.t_end);
  f->add_option("--step", flow.h, "Step h (initial step for rkf45)");
  f->add_option("--tol", flow.tol, "Convergence tolerance");
  f->add_option("--integrator", flow.integrator, "rk4 or rkf45");
  f->add_option("--out", flow.out, "Trajectory file");
  f->add_option("--format", flow.format, "csv or json");

  skt::acceptance::Options verify;
  auto* v = app.add_subcommand("verify", "Run the acceptance suite");
  v->add_option("--seed", verify.seed);
  v->add_option("--only", verify.only, "Criteria to run (1-10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*r) return cmd_roots(roots);
    if (*c) return cmd_check(check);
    if (*k) return cmd_classify(cls);
    if (*f) return cmd_flow(flow);
    if (*v) return cmd_verify(verify);
  } catch (const skt::InvalidTypeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const skt::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const skt::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kRuntime;
}
