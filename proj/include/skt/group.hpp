#pragma once

#include "skt/root_system.hpp"
#include "skt/structure_constants.hpp"

#include <Eigen/Dense>

#include <memory>
#include <utility>
#include <vector>

namespace skt {

/// One simple factor of a semisimple group with its derived root data.
struct Factor {
  RootSystem roots;
  StructureConstants constants;
  int torus_offset = 0;     // first torus coordinate of this factor
  int positive_offset = 0;  // first global positive-root index of this factor
};

/// One term of a linear combination of Chevalley basis vectors.
struct Term {
  int index;
  double coeff;
};

/// A compact semisimple group G_1 x ... x G_s, flattened into one Chevalley basis.
///
/// Torus coordinates [0, torus_dim()) are the simple coroots H_{alpha_i} of all
/// factors in order. Global root indices [0, P) are the positive roots factor by
/// factor, and r + P is -r. The Chevalley basis index of H_{alpha_i} is i, that
/// of E_r is torus_dim() + r.
class GroupSpec {
 public:
  explicit GroupSpec(const std::vector<std::pair<SimpleType, Normalization>>& factors);

  static std::shared_ptr<const GroupSpec> make(const std::vector<std::pair<SimpleType, Normalization>>& factors);
  static std::shared_ptr<const GroupSpec> simple(SimpleType type, Normalization norm = Normalization::long2);

  int num_factors() const { return static_cast<int>(factors_.size()); }
  const Factor& factor(int f) const { return factors_[static_cast<std::size_t>(f)]; }
  const RootSystem& roots(int f) const { return factor(f).roots; }

  int torus_dim() const { return torus_dim_; }
  int num_positive() const { return num_positive_; }
  int num_roots() const { return 2 * num_positive_; }
  int dim() const { return torus_dim_ + num_roots(); }

  // Root bookkeeping.
  int factor_of(int r) const { return factor_of_[static_cast<std::size_t>(r)]; }
  int local(int r) const { return local_[static_cast<std::size_t>(r)]; }
  int global(int f, int local_root) const;
  int negative(int r) const { return r < num_positive_ ? r + num_positive_ : r - num_positive_; }
  int sign(int r) const { return r < num_positive_ ? 1 : -1; }
  int positive_of(int r) const { return r < num_positive_ ? r : r - num_positive_; }
  int height(int r) const { return roots(factor_of(r)).height(local(r)); }
  /// Coroot H_r in torus coordinates (integer entries).
  const Eigen::VectorXd& coroot(int r) const { return coroot_[static_cast<std::size_t>(r)]; }
  /// Global index of a + b, or -1 if zero / not a root.
  int sum(int a, int b) const;
  /// N_{a,b}; zero across factors.
  double n(int a, int b) const;
  double n_squared(int a, int b) const;
  /// <a, b> in each factor's normalization; zero across factors.
  double inner(int a, int b) const;
  /// alpha_r(H_{alpha_i}) = <alpha_r, alpha_i>.
  double root_on_torus(int r, int i) const { return root_on_torus_(r, i); }

  // Chevalley basis.
  bool is_torus(int e) const { return e < torus_dim_; }
  int h(int i) const { return i; }
  int e(int r) const { return torus_dim_ + r; }
  int root_of(int basis) const { return basis - torus_dim_; }
  /// [X_a, X_b] for basis indices a, b.
  std::vector<Term> bracket(int a, int b) const;

  /// Block-diagonal Gram matrix of the simple roots, i.e. the bi-invariant
  /// metric -B on the torus in the basis {i H_{alpha_i}}.
  const Eigen::MatrixXd& killing_gram() const { return gram_; }
  /// Per-factor torus block [offset, offset + rank).
  std::pair<int, int> torus_block(int f) const { return {factor(f).torus_offset, roots(f).rank()}; }

 private:
  std::vector<Factor> factors_;
  int torus_dim_ = 0;
  int num_positive_ = 0;
  std::vector<int> factor_of_;
  std::vector<int> local_;
  std::vector<Eigen::VectorXd> coroot_;
  Eigen::MatrixXd root_on_torus_;
  Eigen::MatrixXd gram_;
};

}  // namespace skt
