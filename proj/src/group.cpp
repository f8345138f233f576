#include "skt/group.hpp"

#include <stdexcept>

namespace skt {

GroupSpec::GroupSpec(const std::vector<std::pair<SimpleType, Normalization>>& factors) {
  if (factors.empty()) throw std::invalid_argument("GroupSpec needs at least one simple factor");
  for (const auto& [type, norm] : factors) {
    RootSystem rs = build_root_system(type, norm);
    StructureConstants sc = structure_constants(rs);
    Factor f{std::move(rs), std::move(sc), torus_dim_, num_positive_};
    torus_dim_ += f.roots.rank();
    num_positive_ += f.roots.num_positive();
    factors_.push_back(std::move(f));
  }

  const int P = num_positive_;
  factor_of_.resize(static_cast<std::size_t>(2 * P));
  local_.resize(static_cast<std::size_t>(2 * P));
  coroot_.resize(static_cast<std::size_t>(2 * P));
  for (int fi = 0; fi < num_factors(); ++fi) {
    const Factor& f = factors_[static_cast<std::size_t>(fi)];
    const int Pf = f.roots.num_positive();
    for (int k = 0; k < Pf; ++k) {
      for (int s : {0, 1}) {
        const int r = f.positive_offset + k + s * P;
        const int loc = k + s * Pf;
        factor_of_[static_cast<std::size_t>(r)] = fi;
        local_[static_cast<std::size_t>(r)] = loc;
        Eigen::VectorXd c = Eigen::VectorXd::Zero(torus_dim_);
        const auto& coeffs = f.roots.root(loc).coeffs;
        for (int i = 0; i < f.roots.rank(); ++i) c(f.torus_offset + i) = coeffs[static_cast<std::size_t>(i)];
        coroot_[static_cast<std::size_t>(r)] = std::move(c);
      }
    }
  }

  gram_ = Eigen::MatrixXd::Zero(torus_dim_, torus_dim_);
  for (const Factor& f : factors_)
    gram_.block(f.torus_offset, f.torus_offset, f.roots.rank(), f.roots.rank()) = f.roots.gram();

  root_on_torus_.resize(2 * P, torus_dim_);
  for (int r = 0; r < 2 * P; ++r) root_on_torus_.row(r) = (gram_ * coroot(r)).transpose();
}

std::shared_ptr<const GroupSpec> GroupSpec::make(
    const std::vector<std::pair<SimpleType, Normalization>>& factors) {
  return std::make_shared<const GroupSpec>(factors);
}

std::shared_ptr<const GroupSpec> GroupSpec::simple(SimpleType type, Normalization norm) {
  return make({{type, norm}});
}

int GroupSpec::global(int f, int local_root) const {
  const Factor& fac = factor(f);
  const int Pf = fac.roots.num_positive();
  if (local_root < Pf) return fac.positive_offset + local_root;
  return fac.positive_offset + (local_root - Pf) + num_positive_;
}

int GroupSpec::sum(int a, int b) const {
  const int f = factor_of(a);
  if (factor_of(b) != f) return -1;
  const int s = roots(f).sum(local(a), local(b));
  return s < 0 ? -1 : global(f, s);
}

double GroupSpec::n(int a, int b) const {
  const int f = factor_of(a);
  if (factor_of(b) != f) return 0.0;
  return factor(f).constants(local(a), local(b));
}

double GroupSpec::n_squared(int a, int b) const {
  const int f = factor_of(a);
  if (factor_of(b) != f) return 0.0;
  return to_double(factor(f).constants.squared(local(a), local(b)));
}

double GroupSpec::inner(int a, int b) const {
  const int f = factor_of(a);
  if (factor_of(b) != f) return 0.0;
  return roots(f).inner(local(a), local(b));
}

std::vector<Term> GroupSpec::bracket(int a, int b) const {
  std::vector<Term> out;
  const bool ta = is_torus(a);
  const bool tb = is_torus(b);
  if (ta && tb) return out;
  if (ta) {
    const int r = root_of(b);
    const double v = root_on_torus(r, a);
    if (v != 0.0) out.push_back({b, v});
    return out;
  }
  if (tb) {
    const int r = root_of(a);
    const double v = root_on_torus(r, b);
    if (v != 0.0) out.push_back({a, -v});
    return out;
  }
  const int ra = root_of(a);
  const int rb = root_of(b);
  if (rb == negative(ra)) {
    const Eigen::VectorXd& c = coroot(ra);  // [E_a, E_-a] = H_a
    for (int i = 0; i < torus_dim_; ++i)
      if (c(i) != 0.0) out.push_back({h(i), c(i)});
    return out;
  }
  const int s = sum(ra, rb);
  if (s >= 0) out.push_back({e(s), n(ra, rb)});
  return out;
}

}  // namespace skt
