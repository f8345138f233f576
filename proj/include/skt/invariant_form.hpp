#pragma once

#include "skt/group.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

namespace skt {

/// Alternating k-form on the complexified Lie algebra, stored by its
/// components on strictly increasing tuples of Chevalley basis indices.
class InvariantForm {
 public:
  using Scalar = std::complex<double>;
  static constexpr int kMaxDegree = 5;
  static constexpr int kMaxDim = 4096;

  InvariantForm(int degree, int dim);

  int degree() const { return degree_; }
  int dim() const { return dim_; }

  /// Component on an arbitrary index tuple; repeated indices give 0.
  Scalar operator()(std::span<const int> idx) const;
  Scalar operator()(std::initializer_list<int> idx) const {
    return (*this)(std::span<const int>(idx.begin(), idx.size()));
  }
  /// Sets the component so that the form stays alternating.
  void set(std::span<const int> idx, Scalar v);
  void set(std::initializer_list<int> idx, Scalar v) { set(std::span<const int>(idx.begin(), idx.size()), v); }

  /// f(sum_t coeff_t X_t, rest...) with the first slot a linear combination.
  Scalar eval_first(const std::vector<Term>& first, std::span<const int> rest) const;

  /// Visits stored components in unspecified order.
  void for_each(const std::function<void(std::span<const int>, Scalar)>& fn) const;
  std::size_t size() const { return data_.size(); }
  double max_abs() const;

 private:
  std::uint64_t key(std::span<const int> sorted) const;

  int degree_;
  int dim_;
  std::unordered_map<std::uint64_t, Scalar> data_;
};

/// Chevalley-Eilenberg differential of a left-invariant form:
/// (df)(X_0..X_k) = sum_{i<j} (-1)^{i+j} f([X_i, X_j], X_0, .., ^X_i, .., ^X_j, .., X_k).
/// Every increasing (k+1)-tuple of the basis is evaluated.
InvariantForm exterior_derivative(const GroupSpec& gs, const InvariantForm& f);

/// Sorts in place and returns the permutation sign; 0 when an index repeats.
int sort_with_sign(std::span<int> idx);

/// Calls fn on every strictly increasing k-tuple drawn from [0, n).
void for_each_increasing_tuple(int n, int k, const std::function<void(std::span<const int>)>& fn);

}  // namespace skt
