#include "skt/flow.hpp"

#include "skt/curvature.hpp"
#include "skt/error.hpp"
#include "skt/hermitian.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace skt {

std::string to_string(Integrator i) { return i == Integrator::rk4_fixed ? "rk4_fixed" : "rkf45_adaptive"; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::t_end_reached: return "t_end_reached";
    case Termination::positivity_violation: return "positivity_violation";
  }
  return "unknown";
}

Integrator parse_integrator(const std::string& s) {
  if (s == "rk4" || s == "rk4_fixed") return Integrator::rk4_fixed;
  if (s == "rkf45" || s == "rkf45_adaptive") return Integrator::rkf45_adaptive;
  throw ParseError("unknown integrator '" + s + "' (expected rk4 or rkf45)");
}

Termination parse_termination(const std::string& s) {
  if (s == "converged") return Termination::converged;
  if (s == "t_end_reached") return Termination::t_end_reached;
  if (s == "positivity_violation") return Termination::positivity_violation;
  throw ParseError("unknown termination reason '" + s + "'");
}

void FlowConfig::validate() const {
  if (!(h > 0.0)) throw std::invalid_argument("FlowConfig: step h must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("FlowConfig: t_end must be non-negative");
  if (!(tol > 0.0) || !(eps_pos > 0.0) || !(rtol > 0.0) || !(min_step > 0.0))
    throw std::invalid_argument("FlowConfig: tolerances must be positive");
}

Eigen::MatrixXd gram_matrix(const RootSystem& rs) { return rs.gram(); }

Eigen::VectorXd rhs(const RootSystem& rs, const Eigen::VectorXd& X) { return -(rs.gram() * grad_F(rs, X)); }

Eigen::VectorXd rhs_per_root(const RootSystem& rs, const Eigen::VectorXd& X) {
  const Eigen::VectorXd x = detail::root_values(rs, X);
  const int P = rs.num_positive();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(P);
  for (int b = 0; b < P; ++b)
    for (int a = 0; a < P; ++a) out(b) -= (1.0 - 1.0 / x(a)) * rs.inner(a, b);
  return out;
}

double rhs_consistency(const RootSystem& rs, const Eigen::VectorXd& X) {
  const Eigen::VectorXd pushed = coefficient_matrix(rs) * rhs(rs, X);
  const Eigen::VectorXd direct = rhs_per_root(rs, X);
  return (pushed - direct).cwiseAbs().maxCoeff() / std::max(1.0, direct.cwiseAbs().maxCoeff());
}

namespace {

using Vec = Eigen::VectorXd;

struct OdeSystem {
  std::function<Vec(const Vec&)> f;
  std::function<bool(const Vec&)> admissible;
  std::function<bool(const Vec&, const Vec&)> converged;
  std::function<Sample(double, const Vec&)> sample;
};

// One RK4 step; false if a stage or the result leaves the admissible set.
bool rk4_step(const OdeSystem& sys, const Vec& y, double h, Vec& out) {
  const Vec k1 = sys.f(y);
  Vec s = y + 0.5 * h * k1;
  if (!sys.admissible(s)) return false;
  const Vec k2 = sys.f(s);
  s = y + 0.5 * h * k2;
  if (!sys.admissible(s)) return false;
  const Vec k3 = sys.f(s);
  s = y + h * k3;
  if (!sys.admissible(s)) return false;
  const Vec k4 = sys.f(s);
  out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return sys.admissible(out);
}

// Fehlberg 4(5); returns the fifth-order solution and the error estimate.
bool rkf45_step(const OdeSystem& sys, const Vec& y, double h, Vec& out, double& err) {
  static constexpr double a[6][5] = {
      {0, 0, 0, 0, 0},
      {1.0 / 4, 0, 0, 0, 0},
      {3.0 / 32, 9.0 / 32, 0, 0, 0},
      {1932.0 / 2197, -7200.0 / 2197, 7296.0 / 2197, 0, 0},
      {439.0 / 216, -8.0, 3680.0 / 513, -845.0 / 4104, 0},
      {-8.0 / 27, 2.0, -3544.0 / 2565, 1859.0 / 4104, -11.0 / 40},
  };
  static constexpr double b4[6] = {25.0 / 216, 0, 1408.0 / 2565, 2197.0 / 4104, -1.0 / 5, 0};
  static constexpr double b5[6] = {16.0 / 135, 0, 6656.0 / 12825, 28561.0 / 56430, -9.0 / 50, 2.0 / 55};
  Vec k[6];
  for (int i = 0; i < 6; ++i) {
    Vec s = y;
    for (int j = 0; j < i; ++j) s += h * a[i][j] * k[j];
    if (!sys.admissible(s)) return false;
    k[i] = sys.f(s);
  }
  Vec y4 = y, y5 = y;
  for (int i = 0; i < 6; ++i) {
    y4 += h * b4[i] * k[i];
    y5 += h * b5[i] * k[i];
  }
  err = (y5 - y4).cwiseAbs().maxCoeff();
  out = std::move(y5);
  return sys.admissible(out);
}

Termination run(const OdeSystem& sys, const Vec& y0, const FlowConfig& cfg, std::vector<Sample>& samples) {
  Vec y = y0;
  double t = 0.0;
  samples.push_back(sys.sample(t, y));
  if (cfg.stop_on_convergence && sys.converged(y, sys.f(y))) return Termination::converged;

  const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);
  double h = cfg.h;
  while (t < cfg.t_end - t_eps) {
    double step = std::min(h, cfg.t_end - t);
    Vec next;
    bool accepted = false;
    while (!accepted) {
      if (step < cfg.min_step) return Termination::positivity_violation;
      if (cfg.integrator == Integrator::rk4_fixed) {
        accepted = rk4_step(sys, y, step, next);
        if (!accepted) step *= 0.5;
      } else {
        double err = 0.0;
        if (!rkf45_step(sys, y, step, next, err)) {
          step *= 0.5;
          continue;
        }
        const double scale = cfg.rtol * (1.0 + y.cwiseAbs().maxCoeff());
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(scale / err, 0.2), 0.2, 5.0);
        if (err <= scale) {
          accepted = true;
          h = step * factor;
        } else {
          step *= factor;
        }
      }
    }
    t += step;
    y = std::move(next);
    samples.push_back(sys.sample(t, y));
    if (cfg.stop_on_convergence && sys.converged(y, sys.f(y))) return Termination::converged;
  }
  return Termination::t_end_reached;
}

std::map<std::string, std::string> metadata(const RootSystem& rs, const FlowConfig& cfg) {
  auto num = [](double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
  };
  return {{"type", rs.type().name()},
          {"normalization", std::string(to_string(rs.normalization()))},
          {"integrator", to_string(cfg.integrator)},
          {"h", num(cfg.h)},
          {"t_end", num(cfg.t_end)},
          {"tol", num(cfg.tol)},
          {"eps_pos", num(cfg.eps_pos)},
          {"rtol", num(cfg.rtol)}};
}

std::function<bool(const Vec&)> positivity(const RootSystem& rs, double eps) {
  Eigen::MatrixXd k = coefficient_matrix(rs);
  return [k = std::move(k), eps](const Vec& X) {
    return X.allFinite() && ((k * (X.array() - 1.0).matrix()).array() + 1.0 > eps).all();
  };
}

Sample make_sample(const RootSystem& rs, double t, const Vec& X) {
  return {t, X, functional_F(rs, X), grad_F(rs, X).cwiseAbs().maxCoeff()};
}

}  // namespace

Trajectory integrate(const RootSystem& rs, const Eigen::VectorXd& x0, const FlowConfig& cfg) {
  cfg.validate();
  const auto admissible = positivity(rs, cfg.eps_pos);
  if (x0.size() != rs.rank())
    throw std::invalid_argument("integrate: expected " + std::to_string(rs.rank()) + " start values");
  if (!admissible(x0)) {
    const Eigen::VectorXd x = (coefficient_matrix(rs) * (x0.array() - 1.0).matrix()).array() + 1.0;
    Eigen::Index worst = 0;
    x.minCoeff(&worst);
    std::ostringstream os;
    os << "start point outside the positivity domain: x_alpha = " << x(worst) << " for alpha = (";
    for (int j = 0; j < rs.rank(); ++j) os << (j ? "," : "") << rs.root(static_cast<int>(worst)).coeffs[static_cast<std::size_t>(j)];
    os << ") of " << rs.type().name() << "; simple values above 1 - 1/h(alpha_max) = " << positivity_bound(rs)
       << " are always admissible";
    throw DomainError(os.str());
  }

  OdeSystem sys;
  sys.f = [&](const Vec& X) { return rhs(rs, X); };
  sys.admissible = admissible;
  sys.converged = [&](const Vec& X, const Vec& dX) {
    return (X.array() - 1.0).abs().maxCoeff() < cfg.tol && dX.cwiseAbs().maxCoeff() < cfg.tol;
  };
  sys.sample = [&](double t, const Vec& X) { return make_sample(rs, t, X); };

  Trajectory tr;
  tr.metadata = metadata(rs, cfg);
  tr.termination = run(sys, x0, cfg, tr.samples);
  return tr;
}

std::vector<Trajectory> integrate(const GroupSpec& gs, const std::vector<Eigen::VectorXd>& x0,
                                  const FlowConfig& cfg) {
  if (static_cast<int>(x0.size()) != gs.num_factors())
    throw std::invalid_argument("integrate: one start vector per factor expected");
  std::vector<Trajectory> out;
  for (int f = 0; f < gs.num_factors(); ++f) out.push_back(integrate(gs.roots(f), x0[static_cast<std::size_t>(f)], cfg));
  return out;
}

double gradient_flow_check(const RootSystem& rs, const Eigen::VectorXd& x0, FlowConfig cfg) {
  cfg.stop_on_convergence = false;
  const Trajectory xr = integrate(rs, x0, cfg);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rs.gram());
  const Eigen::MatrixXd root = es.operatorSqrt();
  const Eigen::MatrixXd inv_root = es.operatorInverseSqrt();
  const auto admissible = positivity(rs, cfg.eps_pos);

  OdeSystem sys;
  sys.f = [&](const Vec& Y) -> Vec { return -(root * grad_F(rs, Vec(root * Y))); };
  sys.admissible = [&](const Vec& Y) { return admissible(root * Y); };
  sys.converged = [](const Vec&, const Vec&) { return false; };
  sys.sample = [&](double t, const Vec& Y) { return make_sample(rs, t, root * Y); };
  std::vector<Sample> ys;
  run(sys, inv_root * x0, cfg, ys);

  double dev = 0.0;
  std::size_t i = 0;
  const auto& xs = xr.samples;
  for (const Sample& s : ys) {
    while (i + 1 < xs.size() && xs[i + 1].t <= s.t) ++i;
    Vec x;
    if (std::abs(xs[i].t - s.t) <= 1e-12 * std::max(1.0, s.t)) {
      x = xs[i].x;
    } else if (i + 1 < xs.size()) {
      // Cubic Hermite between neighbouring samples, derivatives from the vector field.
      const double h = xs[i + 1].t - xs[i].t;
      const double u = (s.t - xs[i].t) / h;
      const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
      const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
      x = h00 * xs[i].x + h10 * h * rhs(rs, xs[i].x) + h01 * xs[i + 1].x + h11 * h * rhs(rs, xs[i + 1].x);
    } else {
      continue;
    }
    dev = std::max(dev, (x - s.x).cwiseAbs().maxCoeff());
  }
  return dev;
}

// ---------------------------------------------------------------------------
// Export

void write_csv(std::ostream& os, const Trajectory& tr) {
  for (const auto& [k, v] : tr.metadata) os << "# " << k << "=" << v << "\n";
  os << "# termination=" << to_string(tr.termination) << "\n";
  const Eigen::Index n = tr.samples.empty() ? 0 : tr.samples.front().x.size();
  os << "t";
  for (Eigen::Index i = 0; i < n; ++i) os << ",x_" << (i + 1);
  os << ",F,grad_inf\n";
  os << std::setprecision(17);
  for (const Sample& s : tr.samples) {
    os << s.t;
    for (Eigen::Index i = 0; i < s.x.size(); ++i) os << "," << s.x(i);
    os << "," << s.F << "," << s.grad_inf << "\n";
  }
}

Trajectory read_csv(std::istream& is) {
  Trajectory tr;
  std::string line;
  int ncols = -1;
  bool have_termination = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::size_t start = 1;
      while (start < eq && line[start] == ' ') ++start;
      const std::string key = line.substr(start, eq - start);
      const std::string value = line.substr(eq + 1);
      if (key == "termination") {
        tr.termination = parse_termination(value);
        have_termination = true;
      } else {
        tr.metadata[key] = value;
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (ncols < 0) {
      if (cells.size() < 3 || cells.front() != "t" || cells[cells.size() - 2] != "F" || cells.back() != "grad_inf")
        throw ParseError("trajectory CSV: bad header '" + line + "'");
      ncols = static_cast<int>(cells.size());
      continue;
    }
    if (static_cast<int>(cells.size()) != ncols) throw ParseError("trajectory CSV: ragged row '" + line + "'");
    Sample s;
    try {
      s.t = std::stod(cells[0]);
      s.x.resize(ncols - 3);
      for (int i = 0; i < ncols - 3; ++i) s.x(i) = std::stod(cells[static_cast<std::size_t>(i + 1)]);
      s.F = std::stod(cells[static_cast<std::size_t>(ncols - 2)]);
      s.grad_inf = std::stod(cells[static_cast<std::size_t>(ncols - 1)]);
    } catch (const std::logic_error&) {
      throw ParseError("trajectory CSV: bad number in '" + line + "'");
    }
    tr.samples.push_back(std::move(s));
  }
  if (ncols < 0) throw ParseError("trajectory CSV: missing header");
  if (!have_termination) throw ParseError("trajectory CSV: missing termination line");
  return tr;
}

void write_json(std::ostream& os, const Trajectory& tr) {
  nlohmann::json j;
  j["metadata"] = tr.metadata;
  j["termination"] = to_string(tr.termination);
  j["samples"] = nlohmann::json::array();
  for (const Sample& s : tr.samples) {
    j["samples"].push_back({{"t", s.t},
                            {"x", std::vector<double>(s.x.data(), s.x.data() + s.x.size())},
                            {"F", s.F},
                            {"grad_inf", s.grad_inf}});
  }
  os << j.dump(1) << "\n";
}

Trajectory read_json(std::istream& is) {
  Trajectory tr;
  try {
    const nlohmann::json j = nlohmann::json::parse(is);
    tr.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    tr.termination = parse_termination(j.at("termination").get<std::string>());
    for (const auto& s : j.at("samples")) {
      const auto x = s.at("x").get<std::vector<double>>();
      tr.samples.push_back({s.at("t").get<double>(), Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())),
                            s.at("F").get<double>(), s.at("grad_inf").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("trajectory JSON: ") + e.what());
  }
  return tr;
}

}  // namespace skt
