#pragma once

#include <boost/rational.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skt {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Dynkin type of a simple Lie algebra, Bourbaki labelling of the simple roots.
struct SimpleType {
  char family = 'A';
  int rank = 1;

  /// Throws InvalidTypeError unless (family, rank) names a simple type.
  void validate() const;
  std::string name() const;
  /// Parses "A2", "g2", "E8".
  static SimpleType parse(std::string_view text);

  friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

/// Validated constructor.
SimpleType make_type(char family, int rank);

/// Scale of the invariant inner product on roots.
///  - long2:   long roots have squared length 2 (the default)
///  - short2:  short roots have squared length 2
///  - killing: the dual of the Killing form, computed from the root data
enum class Normalization { long2, short2, killing };

std::string_view to_string(Normalization n);
Normalization parse_normalization(std::string_view text);

struct Root {
  std::vector<int> coeffs;  // over the simple roots
  int sign = 1;             // +1 in the positive system, -1 otherwise

  int height() const;
  bool is_positive() const { return sign > 0; }
  friend bool operator==(const Root&, const Root&) = default;
};

/// The beta + n*alpha string: beta + n*alpha is a root iff p <= n <= q.
struct RootString {
  int p = 0;
  int q = 0;
  friend bool operator==(const RootString&, const RootString&) = default;
};

/// Root system of one simple type.
///
/// Roots are addressed by index. Indices [0, P) are the positive roots ordered
/// by height and then by descending coefficient vector, so the first rank()
/// entries are the simple roots alpha_1..alpha_n. Index i + P is -root(i).
class RootSystem {
 public:
  const SimpleType& type() const { return type_; }
  Normalization normalization() const { return norm_; }
  int rank() const { return type_.rank; }
  int num_positive() const { return static_cast<int>(roots_.size() / 2); }
  int num_roots() const { return static_cast<int>(roots_.size()); }

  const std::vector<Root>& roots() const { return roots_; }
  const Root& root(int i) const { return roots_[static_cast<std::size_t>(i)]; }
  std::span<const Root> positives() const {
    return {roots_.data(), static_cast<std::size_t>(num_positive())};
  }
  std::span<const Root> simples() const {
    return {roots_.data(), static_cast<std::size_t>(rank())};
  }

  int negative(int i) const { return i < num_positive() ? i + num_positive() : i - num_positive(); }
  int sign(int i) const { return i < num_positive() ? 1 : -1; }
  int height(int i) const { return roots_[static_cast<std::size_t>(i)].height(); }

  std::optional<int> find(std::span<const int> coeffs) const;
  std::optional<int> index_of(const Root& r) const { return find(r.coeffs); }
  /// Index of root(a) + root(b), or -1 when the sum is zero or not a root.
  int sum(int a, int b) const { return sum_[flat(a, b)]; }
  bool is_root_sum(int a, int b) const { return sum(a, b) >= 0; }

  const Rational& inner_exact(int a, int b) const { return inner_exact_[flat(a, b)]; }
  double inner(int a, int b) const { return inner_[flat(a, b)]; }

  /// Gram matrix of the simple roots, Q_ij = <alpha_i, alpha_j>.
  const std::vector<Rational>& gram_exact() const { return gram_exact_; }
  Eigen::MatrixXd gram() const;
  /// Cartan integer 2<alpha_i, alpha_j>/<alpha_j, alpha_j>.
  int cartan(int i, int j) const;

  int maximal_root() const { return maximal_; }

 private:
  friend RootSystem build_root_system(SimpleType, Normalization);
  std::size_t flat(int a, int b) const {
    return static_cast<std::size_t>(a) * roots_.size() + static_cast<std::size_t>(b);
  }

  SimpleType type_;
  Normalization norm_ = Normalization::long2;
  std::vector<Root> roots_;
  std::map<std::vector<int>, int> lookup_;
  std::vector<int> sum_;
  std::vector<Rational> gram_exact_;
  std::vector<Rational> inner_exact_;
  std::vector<double> inner_;
  int maximal_ = 0;
};

/// Enumerates the positive roots by string closure from the Cartan matrix.
RootSystem build_root_system(SimpleType type, Normalization norm = Normalization::long2);

/// Throws std::invalid_argument when beta = +-alpha.
RootString root_string(const RootSystem& rs, int alpha, int beta);

/// c such that c * gram is the dual Killing form; 1 for killing mode.
Rational killing_normalization_exact(const RootSystem& rs);
double killing_normalization_constant(const RootSystem& rs);

/// Dimension counts of the left- and Ad(T)-invariant moduli for rank 2d.
struct ModuliDimensions {
  int metrics;                   // dim M^T
  int complex_structures;        // dim C^T
  int metrics_given_j;           // dim H^T_J
  int complex_given_metric;      // dim C^T_g
  int hermitian_structures;      // dim H^T
  friend bool operator==(const ModuliDimensions&, const ModuliDimensions&) = default;
};

ModuliDimensions moduli_dimensions(int d, int num_positive);

}  // namespace skt
