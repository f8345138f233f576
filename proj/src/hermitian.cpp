#include "skt/hermitian.hpp"

#include "skt/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skt {

namespace {

using cplx = std::complex<double>;

std::string root_name(const GroupSpec& gs, int r) {
  std::ostringstream os;
  const int f = gs.factor_of(r);
  const auto& c = gs.roots(f).root(gs.local(r)).coeffs;
  os << (gs.sign(r) > 0 ? "" : "-") << "(";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << std::abs(c[i]);
  os << ")";
  if (gs.num_factors() > 1) os << "@" << f;
  return os.str();
}

// Right-hand side of (skt1) for positive a != b.
double skt1_rhs(const HermitianStructure& h, int a, int b) {
  const GroupSpec& gs = h.group();
  double v = 0.0;
  const int s = gs.sum(a, b);
  if (s >= 0) v += gs.n_squared(a, b) * (h.x(s) - h.x(a) - h.x(b));
  const int t = gs.sum(a, gs.negative(b));
  if (t >= 0) {
    const double eps = gs.sign(t);
    v += eps * gs.n_squared(a, gs.negative(b)) * (eps * h.x(t) - h.x(a) + h.x(b));
  }
  return v;
}

// Mixed component dd^c omega(E_a, E_b, E_c, E_d), a, b > 0 > c, d.
double mixed_component(const HermitianStructure& h, int a, int b, int c, int d) {
  const GroupSpec& gs = h.group();
  double v = 0.0;
  const int ab = gs.sum(a, b);
  if (ab >= 0) v += gs.n(a, b) * gs.n(c, d) * (h.x(a) + h.x(b) + h.x(c) + h.x(d) - 2.0 * h.x(ab));
  const int ac = gs.sum(a, c);
  if (ac >= 0) {
    const double eps = gs.sign(ac);
    v -= eps * gs.n(a, c) * gs.n(b, d) * (-h.x(a) + h.x(b) + h.x(c) - h.x(d) + 2.0 * eps * h.x(ac));
  }
  const int ad = gs.sum(a, d);
  if (ad >= 0) {
    const double eps = gs.sign(ad);
    v += eps * gs.n(a, d) * gs.n(b, c) * (-h.x(a) + h.x(b) - h.x(c) + h.x(d) + 2.0 * eps * h.x(ad));
  }
  return v;
}

// dd^c omega(E_a, E_-a, E_b, E_-b) for positive a != b.
double pair_component(const HermitianStructure& h, int a, int b) {
  return 2.0 * h.torus_inner(a, b) - 2.0 * skt1_rhs(h, a, b);
}

bool is_zero_sum(const GroupSpec& gs, std::initializer_list<int> roots) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(gs.torus_dim());
  for (int r : roots) s += gs.coroot(r);
  return s.isZero(0.0);
}

// Moves the single torus entry of a triple to the front; returns the sign.
int torus_first(std::array<int, 3>& t, const GroupSpec& gs) {
  if (gs.is_torus(t[0])) return 1;
  if (gs.is_torus(t[1])) {
    std::swap(t[0], t[1]);
    return -1;
  }
  std::rotate(t.begin(), t.begin() + 2, t.end());  // (a, b, A) -> (A, a, b)
  return 1;
}

void keep_worst(PluriclosedWitness& w, PluriclosedWitness::Kind kind, double r, std::vector<int> roots,
                std::vector<int> basis = {}) {
  // Ties go to the lexicographically smallest roots so both modes report the same witness.
  if (w.kind != PluriclosedWitness::Kind::none &&
      (r < w.residual || (r == w.residual && (roots.empty() || roots >= w.roots))))
    return;
  w.kind = kind;
  w.residual = r;
  w.roots = std::move(roots);
  w.basis = std::move(basis);
}

void finish(PluriclosedReport& rep, double tol) {
  rep.worst = rep.worst_skt1;
  if (rep.worst_skt2.kind != PluriclosedWitness::Kind::none &&
      (rep.worst.kind == PluriclosedWitness::Kind::none || rep.worst_skt2.residual > rep.worst.residual))
    rep.worst = rep.worst_skt2;
  rep.max_residual = rep.worst.residual;
  rep.pluriclosed = rep.max_residual < tol;
}

}  // namespace

// ---------------------------------------------------------------------------
// Data model

TorusMetric TorusMetric::killing(const GroupSpec& gs, const std::vector<double>& z) {
  if (!z.empty() && static_cast<int>(z.size()) != gs.num_factors())
    throw std::invalid_argument("TorusMetric::killing: one scale per factor expected");
  TorusMetric t{gs.killing_gram()};
  for (int f = 0; f < gs.num_factors(); ++f) {
    const auto [off, n] = gs.torus_block(f);
    if (!z.empty()) t.matrix.block(off, off, n, n) *= z[static_cast<std::size_t>(f)];
  }
  return t;
}

bool TorusMetric::is_positive_definite(double tol) const {
  if (matrix.rows() != matrix.cols()) return false;
  if (!matrix.isApprox(matrix.transpose(), 1e-12) && (matrix - matrix.transpose()).cwiseAbs().maxCoeff() > tol)
    return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (matrix + matrix.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > tol;
}

bool TorusComplexStructure::squares_to_minus_identity(double tol) const {
  if (matrix.rows() != matrix.cols()) return false;
  const Eigen::MatrixXd sq = matrix * matrix + Eigen::MatrixXd::Identity(matrix.rows(), matrix.cols());
  return sq.cwiseAbs().maxCoeff() <= tol * std::max(1.0, matrix.cwiseAbs().maxCoeff());
}

TorusComplexStructure TorusComplexStructure::compatible_with(const Eigen::MatrixXd& metric) {
  const Eigen::Index n = metric.rows();
  if (n % 2 != 0) throw DomainError("no complex structure on an odd-dimensional torus");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(metric);
  const Eigen::MatrixXd root = es.operatorSqrt();
  const Eigen::MatrixXd inv_root = es.operatorInverseSqrt();
  Eigen::MatrixXd rot = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; i += 2) {
    rot(i + 1, i) = 1.0;
    rot(i, i + 1) = -1.0;
  }
  return {inv_root * rot * root};
}

HermitianStructure::HermitianStructure(std::shared_ptr<const GroupSpec> group, std::vector<double> z,
                                       TorusMetric torus, FiberMetric fiber,
                                       std::optional<TorusComplexStructure> jt)
    : group_(std::move(group)), z_(std::move(z)), torus_(std::move(torus)), fiber_(std::move(fiber)),
      jt_(std::move(jt)) {
  if (!group_) throw std::invalid_argument("HermitianStructure: null group");
  const GroupSpec& gs = *group_;
  if (z_.empty()) z_.assign(static_cast<std::size_t>(gs.num_factors()), 1.0);
  if (static_cast<int>(z_.size()) != gs.num_factors())
    throw std::invalid_argument("HermitianStructure: one scale z per factor expected");
  for (double v : z_)
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("HermitianStructure: scale z must be positive");
  if (torus_.matrix.rows() != gs.torus_dim() || torus_.matrix.cols() != gs.torus_dim())
    throw std::invalid_argument("HermitianStructure: torus metric has wrong size");
  if ((torus_.matrix - torus_.matrix.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, torus_.matrix.cwiseAbs().maxCoeff()))
    throw DomainError("HermitianStructure: torus metric is not symmetric");
  if (!torus_.is_positive_definite(1e-10)) throw DomainError("HermitianStructure: torus metric is not positive definite");
  if (static_cast<int>(fiber_.x.size()) != gs.num_positive())
    throw std::invalid_argument("HermitianStructure: one fiber value per positive root expected");
  xeff_.resize(fiber_.x.size());
  for (int r = 0; r < gs.num_positive(); ++r) {
    const double v = fiber_.x[static_cast<std::size_t>(r)];
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("HermitianStructure: x <= 0 on root " + root_name(gs, r));
    xeff_[static_cast<std::size_t>(r)] = z_[static_cast<std::size_t>(gs.factor_of(r))] * v;
  }
  if (jt_) {
    const Eigen::MatrixXd& J = jt_->matrix;
    if (J.rows() != gs.torus_dim() || J.cols() != gs.torus_dim())
      throw std::invalid_argument("HermitianStructure: J_t has wrong size");
    if (!jt_->squares_to_minus_identity(1e-9)) throw DomainError("HermitianStructure: J_t^2 != -I");
    const Eigen::MatrixXd& M = torus_.matrix;
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff()) * std::max(1.0, J.cwiseAbs().maxCoeff());
    if ((J.transpose() * M * J - M).cwiseAbs().maxCoeff() > 1e-9 * scale * scale)
      throw DomainError("HermitianStructure: g_t is not J_t-compatible");
  }
}

HermitianStructure HermitianStructure::biinvariant(std::shared_ptr<const GroupSpec> group, std::vector<double> z,
                                                   std::optional<TorusComplexStructure> jt) {
  const GroupSpec& gs = *group;
  TorusMetric t = TorusMetric::killing(gs, z);
  FiberMetric fib{std::vector<double>(static_cast<std::size_t>(gs.num_positive()), 1.0)};
  return HermitianStructure(std::move(group), std::move(z), std::move(t), std::move(fib), std::move(jt));
}

double HermitianStructure::torus_inner(int a, int b) const {
  return group_->coroot(a).dot(torus_.matrix * group_->coroot(b));
}

Eigen::MatrixXd HermitianStructure::torus_operator() const {
  return group_->killing_gram().ldlt().solve(torus_.matrix);
}

HermitianStructure HermitianStructure::with_fiber(FiberMetric fiber) const {
  return HermitianStructure(group_, z_, torus_, std::move(fiber), jt_);
}

HermitianStructure HermitianStructure::with_torus(TorusMetric torus) const {
  return HermitianStructure(group_, z_, std::move(torus), fiber_, jt_);
}

HermitianStructure HermitianStructure::with_jt(std::optional<TorusComplexStructure> jt) const {
  return HermitianStructure(group_, z_, torus_, fiber_, std::move(jt));
}

// ---------------------------------------------------------------------------
// Forms

cplx metric(const HermitianStructure& h, int a, int b) {
  const GroupSpec& gs = h.group();
  if (gs.is_torus(a) && gs.is_torus(b)) return -h.torus().matrix(a, b);
  if (gs.is_torus(a) || gs.is_torus(b)) return 0.0;
  const int ra = gs.root_of(a);
  const int rb = gs.root_of(b);
  return rb == gs.negative(ra) ? cplx(-h.x(ra)) : cplx(0.0);
}

InvariantForm omega_form(const HermitianStructure& h) {
  if (!h.jt()) throw MissingDataError("omega_form: J_t is required");
  const GroupSpec& gs = h.group();
  InvariantForm w(2, gs.dim());
  const Eigen::MatrixXd jm = h.jt()->matrix.transpose() * h.torus().matrix;
  for (int i = 0; i < gs.torus_dim(); ++i)
    for (int j = i + 1; j < gs.torus_dim(); ++j) w.set({gs.h(i), gs.h(j)}, -jm(i, j));
  for (int r = 0; r < gs.num_positive(); ++r) w.set({gs.e(r), gs.e(gs.negative(r))}, h.y(r));
  return w;
}

cplx d_omega(const HermitianStructure& h, int a, int b, int c) {
  const GroupSpec& gs = h.group();
  std::array<int, 3> t{a, b, c};
  const int ntorus = static_cast<int>(std::count_if(t.begin(), t.end(), [&](int e) { return gs.is_torus(e); }));
  if (ntorus == 0) {
    const int ra = gs.root_of(a), rb = gs.root_of(b), rc = gs.root_of(c);
    if (gs.sum(ra, rb) != gs.negative(rc)) return 0.0;
    return gs.n(ra, rb) * (h.y(ra) + h.y(rb) + h.y(rc));
  }
  if (!h.jt()) throw MissingDataError("d_omega: torus-argument components need J_t");
  if (ntorus > 1) return 0.0;
  const int sign = torus_first(t, gs);
  const int r = gs.root_of(t[1]);
  if (gs.root_of(t[2]) != gs.negative(r)) return 0.0;
  // g_t(J_t H_i, H_r) = -(J^T M coroot(r))_i
  const Eigen::VectorXd v = h.jt()->matrix.transpose() * (h.torus().matrix * gs.coroot(r));
  return -sign * v(t[0]);
}

cplx dc_omega(const HermitianStructure& h, int a, int b, int c) {
  const GroupSpec& gs = h.group();
  std::array<int, 3> t{a, b, c};
  const int ntorus = static_cast<int>(std::count_if(t.begin(), t.end(), [&](int e) { return gs.is_torus(e); }));
  if (ntorus == 0) {
    const int ra = gs.root_of(a), rb = gs.root_of(b), rc = gs.root_of(c);
    if (gs.sum(ra, rb) != gs.negative(rc)) return 0.0;
    const double eps = gs.sign(ra) * gs.sign(rb) * gs.sign(rc);
    return cplx(0.0, eps) * gs.n(ra, rb) * (h.y(ra) + h.y(rb) + h.y(rc));
  }
  if (ntorus > 1) return 0.0;
  const int sign = torus_first(t, gs);
  const int r = gs.root_of(t[1]);
  if (gs.root_of(t[2]) != gs.negative(r)) return 0.0;
  // g_t(H_i, H_r) = -(M coroot(r))_i
  return -sign * h.torus().matrix.row(t[0]).dot(gs.coroot(r));
}

InvariantForm dc_omega_form(const HermitianStructure& h) {
  const GroupSpec& gs = h.group();
  InvariantForm f(3, gs.dim());
  for_each_increasing_tuple(gs.dim(), 3, [&](std::span<const int> t) {
    const cplx v = dc_omega(h, t[0], t[1], t[2]);
    if (v != cplx(0.0)) f.set(t, v);
  });
  return f;
}

Eigen::VectorXd d_star_omega(const HermitianStructure& h) {
  const GroupSpec& gs = h.group();
  Eigen::VectorXd z = Eigen::VectorXd::Zero(gs.torus_dim());
  for (int r = 0; r < gs.num_positive(); ++r) z += gs.coroot(r) / h.x(r);
  return -z;
}

cplx ddc_omega(const HermitianStructure& h, int a, int b, int c, int d) {
  const GroupSpec& gs = h.group();
  std::array<int, 4> t{a, b, c, d};
  for (int e : t)
    if (gs.is_torus(e)) return 0.0;
  std::array<int, 4> r{};
  for (std::size_t i = 0; i < 4; ++i) r[i] = gs.root_of(t[i]);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (r[i] == r[j]) return 0.0;
  if (!is_zero_sum(gs, {r[0], r[1], r[2], r[3]})) return 0.0;

  // Permutation sign of reordering positions into `order`.
  auto perm_sign = [](std::array<int, 4> order) {
    int s = 1;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        if (order[i] > order[j]) s = -s;
    return s;
  };

  for (int j = 1; j < 4; ++j) {
    if (r[static_cast<std::size_t>(j)] != gs.negative(r[0])) continue;
    // Pattern {a, -a, b, -b}.
    std::array<int, 2> rest{};
    std::size_t m = 0;
    for (int k = 1; k < 4; ++k)
      if (k != j) rest[m++] = k;
    const int p0 = gs.sign(r[0]) > 0 ? 0 : j;
    const int n0 = p0 == 0 ? j : 0;
    const int p1 = gs.sign(r[static_cast<std::size_t>(rest[0])]) > 0 ? rest[0] : rest[1];
    const int n1 = p1 == rest[0] ? rest[1] : rest[0];
    const int alpha = r[static_cast<std::size_t>(p0)];
    const int beta = r[static_cast<std::size_t>(p1)];
    return perm_sign({p0, n0, p1, n1}) * pair_component(h, alpha, beta);
  }
  for (int i = 1; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (r[static_cast<std::size_t>(i)] == gs.negative(r[static_cast<std::size_t>(j)])) return 0.0;

  std::array<int, 4> pos{}, neg{};
  int np = 0, nn = 0;
  for (int i = 0; i < 4; ++i) {
    if (gs.sign(r[static_cast<std::size_t>(i)]) > 0)
      pos[static_cast<std::size_t>(np++)] = i;
    else
      neg[static_cast<std::size_t>(nn++)] = i;
  }
  if (np != 2) return 0.0;
  const int s = perm_sign({pos[0], pos[1], neg[0], neg[1]});
  return s * mixed_component(h, r[static_cast<std::size_t>(pos[0])], r[static_cast<std::size_t>(pos[1])],
                             r[static_cast<std::size_t>(neg[0])], r[static_cast<std::size_t>(neg[1])]);
}

// ---------------------------------------------------------------------------
// Pluriclosed verification

PluriclosedReport is_pluriclosed(const HermitianStructure& h, double tol, CheckMode mode) {
  const GroupSpec& gs = h.group();
  PluriclosedReport rep;
  using Kind = PluriclosedWitness::Kind;

  if (mode == CheckMode::closed_form) {
    const int P = gs.num_positive();
    for (int a = 0; a < P; ++a)
      for (int b = a + 1; b < P; ++b) {
        const double rhs = skt1_rhs(h, a, b);
        const double rhs_swapped = skt1_rhs(h, b, a);
        if (std::abs(rhs - rhs_swapped) > 1e-9 * std::max(1.0, std::abs(rhs)))
          throw ConsistencyError("skt1 right-hand side is not symmetric for " + root_name(gs, a) + ", " +
                                 root_name(gs, b));
        ++rep.cases;
        keep_worst(rep.worst_skt1, Kind::skt1, std::abs(h.torus_inner(a, b) - rhs), {a, b});
      }
    for (int f = 0; f < gs.num_factors(); ++f) {
      const RootSystem& rs = gs.roots(f);
      const int Pf = rs.num_positive();
      std::vector<int> buf(static_cast<std::size_t>(rs.rank()));
      for (int a = 0; a < Pf; ++a)
        for (int b = a + 1; b < Pf; ++b)
          for (int c = Pf; c < 2 * Pf; ++c) {
            if (c == rs.negative(a) || c == rs.negative(b)) continue;
            for (std::size_t k = 0; k < buf.size(); ++k)
              buf[k] = -(rs.root(a).coeffs[k] + rs.root(b).coeffs[k] + rs.root(c).coeffs[k]);
            const auto d = rs.find(buf);
            if (!d || *d <= c || rs.sign(*d) > 0) continue;
            if (*d == rs.negative(a) || *d == rs.negative(b)) continue;
            const int ga = gs.global(f, a), gb = gs.global(f, b), gc = gs.global(f, c), gd = gs.global(f, *d);
            ++rep.cases;
            keep_worst(rep.worst_skt2, Kind::skt2, std::abs(mixed_component(h, ga, gb, gc, gd)), {ga, gb, gc, gd});
          }
    }
    finish(rep, tol);
    return rep;
  }

  const InvariantForm ddc = exterior_derivative(gs, dc_omega_form(h));
  PluriclosedWitness other;
  ddc.for_each([&](std::span<const int> idx, InvariantForm::Scalar v) {
    const double mag = std::abs(v);
    std::vector<int> basis(idx.begin(), idx.end());
    bool torus = false;
    for (int e : idx) torus = torus || gs.is_torus(e);
    if (torus) {
      keep_worst(other, Kind::other, mag, {}, basis);
      return;
    }
    std::array<int, 4> r{};
    for (std::size_t i = 0; i < 4; ++i) r[i] = gs.root_of(idx[i]);
    std::vector<int> pos, neg;
    for (int x : r) (gs.sign(x) > 0 ? pos : neg).push_back(x);
    bool paired = false;
    for (std::size_t j = 1; j < 4; ++j) paired = paired || r[j] == gs.negative(r[0]);
    if (paired && pos.size() == 2 && (neg[0] == gs.negative(pos[0]) || neg[0] == gs.negative(pos[1]))) {
      keep_worst(rep.worst_skt1, Kind::skt1, 0.5 * mag, {std::min(pos[0], pos[1]), std::max(pos[0], pos[1])});
    } else if (pos.size() == 2 && is_zero_sum(gs, {r[0], r[1], r[2], r[3]})) {
      keep_worst(rep.worst_skt2, Kind::skt2, mag, {pos[0], pos[1], neg[0], neg[1]});
    } else {
      keep_worst(other, Kind::other, mag, {}, basis);
    }
  });
  std::size_t total = 1;
  const std::size_t n = static_cast<std::size_t>(gs.dim());
  if (n >= 4) total = n * (n - 1) * (n - 2) * (n - 3) / 24;
  rep.cases = total;
  finish(rep, tol);
  if (other.kind != Kind::none && other.residual > rep.max_residual) {
    rep.worst = other;
    rep.max_residual = other.residual;
    rep.pluriclosed = rep.max_residual < tol;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pluriclosed family

Eigen::VectorXd family_values(const RootSystem& rs, const Eigen::VectorXd& simple_values) {
  if (simple_values.size() != rs.rank())
    throw std::invalid_argument("family_values: expected " + std::to_string(rs.rank()) + " simple values for " +
                                rs.type().name());
  Eigen::VectorXd x(rs.num_positive());
  for (int a = 0; a < rs.num_positive(); ++a) {
    double v = 1.0;
    const auto& k = rs.root(a).coeffs;
    for (int j = 0; j < rs.rank(); ++j) v += k[static_cast<std::size_t>(j)] * (simple_values(j) - 1.0);
    x(a) = v;
  }
  return x;
}

double positivity_bound(const RootSystem& rs) { return 1.0 - 1.0 / rs.height(rs.maximal_root()); }

HermitianStructure pluriclosed_family(std::shared_ptr<const GroupSpec> group, const std::vector<double>& z,
                                      const std::vector<Eigen::VectorXd>& simple_values,
                                      std::optional<TorusComplexStructure> jt) {
  const GroupSpec& gs = *group;
  if (static_cast<int>(simple_values.size()) != gs.num_factors())
    throw std::invalid_argument("pluriclosed_family: one simple-value vector per factor expected");
  FiberMetric fiber{std::vector<double>(static_cast<std::size_t>(gs.num_positive()))};
  for (int f = 0; f < gs.num_factors(); ++f) {
    const RootSystem& rs = gs.roots(f);
    const Eigen::VectorXd x = family_values(rs, simple_values[static_cast<std::size_t>(f)]);
    for (int a = 0; a < rs.num_positive(); ++a) {
      if (!(x(a) > 0.0)) {
        std::ostringstream os;
        os << "x_alpha = " << x(a) << " <= 0 on root " << root_name(gs, gs.global(f, a)) << " of "
           << rs.type().name() << "; x_i >= 1 - 1/h(alpha_max) = " << positivity_bound(rs)
           << " for all i is sufficient";
        throw DomainError(os.str());
      }
      fiber.x[static_cast<std::size_t>(gs.global(f, a))] = x(a);
    }
  }
  TorusMetric torus = TorusMetric::killing(gs, z);
  return HermitianStructure(std::move(group), z, std::move(torus), std::move(fiber), std::move(jt));
}

double kahler_flag_residual(const HermitianStructure& h) {
  const GroupSpec& gs = h.group();
  double m = 0.0;
  for (int a = 0; a < gs.num_positive(); ++a)
    for (int b = a + 1; b < gs.num_positive(); ++b) {
      const int s = gs.sum(a, b);
      if (s >= 0) m = std::max(m, std::abs(h.x(s) - h.x(a) - h.x(b)));
    }
  return m;
}

// ---------------------------------------------------------------------------
// Compatibility of bi-invariant metrics with J_t

bool CompatibleCone::contains(const Eigen::VectorXd& z, double tol) const {
  if (empty() || z.size() != basis.rows()) return false;
  if ((z.array() <= 0.0).any()) return false;
  const Eigen::VectorXd proj = basis * (basis.transpose() * z);
  return (z - proj).norm() <= tol * z.norm();
}

std::string CompatibleCone::describe() const {
  if (empty()) return "no compatible bi-invariant metric";
  std::ostringstream os;
  os << basis.cols() << "-dimensional cone of scales, e.g. z = (";
  for (Eigen::Index i = 0; i < interior->size(); ++i) os << (i ? ", " : "") << (*interior)(i);
  os << ")";
  return os.str();
}

CompatibleCone biinvariant_compatible(const GroupSpec& gs, const TorusComplexStructure& jt) {
  const int n = gs.torus_dim();
  const int s = gs.num_factors();
  if (jt.matrix.rows() != n || jt.matrix.cols() != n)
    throw std::invalid_argument("biinvariant_compatible: J_t has wrong size");
  if (!jt.squares_to_minus_identity(1e-9)) throw DomainError("biinvariant_compatible: J_t^2 != -I");

  const Eigen::MatrixXd& J = jt.matrix;
  Eigen::MatrixXd L(n * n, s);
  for (int f = 0; f < s; ++f) {
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
    const auto [off, r] = gs.torus_block(f);
    E.block(off, off, r, r) = gs.killing_gram().block(off, off, r, r);
    const Eigen::MatrixXd C = J.transpose() * E * J - E;
    L.col(f) = Eigen::Map<const Eigen::VectorXd>(C.data(), n * n);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;

  CompatibleCone cone;
  cone.basis = svd.matrixV().rightCols(s - rank);
  if (cone.basis.cols() == 0) return cone;

  // Alternating projections between the solution space and {z >= 1}.
  Eigen::VectorXd z = Eigen::VectorXd::Ones(s);
  for (int it = 0; it < 20000; ++it) {
    const Eigen::VectorXd p = cone.basis * (cone.basis.transpose() * z);
    if (p.minCoeff() > 1e-9 * p.cwiseAbs().maxCoeff() && p.minCoeff() > 0.0) {
      cone.interior = p / p.maxCoeff();
      break;
    }
    z = p.cwiseMax(1.0);
  }
  return cone;
}

bool is_irreducible(const GroupSpec& gs, const TorusComplexStructure& jt, double tol) {
  const int s = gs.num_factors();
  if (s > 20) throw std::invalid_argument("is_irreducible: refusing more than 20 factors");
  const int n = gs.torus_dim();
  if (jt.matrix.rows() != n || jt.matrix.cols() != n)
    throw std::invalid_argument("is_irreducible: J_t has wrong size");
  const double scale = std::max(1.0, jt.matrix.cwiseAbs().maxCoeff());
  std::vector<int> owner(static_cast<std::size_t>(n));
  for (int f = 0; f < s; ++f) {
    const auto [off, r] = gs.torus_block(f);
    for (int i = off; i < off + r; ++i) owner[static_cast<std::size_t>(i)] = f;
  }
  for (std::uint32_t mask = 1; mask + 1 < (1u << s); ++mask) {
    bool invariant = true;
    for (int col = 0; col < n && invariant; ++col) {
      if (!(mask >> owner[static_cast<std::size_t>(col)] & 1u)) continue;
      for (int row = 0; row < n; ++row) {
        if (mask >> owner[static_cast<std::size_t>(row)] & 1u) continue;
        if (std::abs(jt.matrix(row, col)) > tol * scale) {
          invariant = false;
          break;
        }
      }
    }
    if (invariant) return false;
  }
  return true;
}

}  // namespace skt
