#pragma once

#include "skt/root_system.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace skt {

/// Signed constants N_{a,b} of [E_a, E_b] = N_{a,b} E_{a+b} in a basis with
/// kappa(E_a, E_{-a}) = 1 and N_{-a,-b} = -N_{a,b}.
///
/// N^2 is kept exactly; N itself is sign * sqrt(N^2). Entries for pairs whose
/// sum is not a root are zero.
class StructureConstants {
 public:
  double operator()(int a, int b) const { return value_[flat(a, b)]; }
  const Rational& squared(int a, int b) const { return squared_[flat(a, b)]; }
  int sign(int a, int b) const { return sign_[flat(a, b)]; }
  int num_roots() const { return size_; }

 private:
  friend StructureConstants structure_constants(const RootSystem&);
  std::size_t flat(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(b);
  }

  int size_ = 0;
  std::vector<Rational> squared_;
  std::vector<std::int8_t> sign_;
  std::vector<double> value_;
};

/// Magnitudes from N^2 = q(1-p)<a,a>/2; signs from the extraspecial pairs of
/// the (height, coefficient) order, propagated through the Appendix identities.
/// Throws ConsistencyError if the propagation disagrees with the magnitudes.
StructureConstants structure_constants(const RootSystem& rs);

struct IdentityCheck {
  std::string name;
  bool passed = true;
  double max_residual = 0.0;
  std::size_t cases = 0;
  std::string witness;  // worst case, empty if none
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

/// Runs antisymmetry, negation, cyclic, quadratic (four-root), the N^2 string
/// formula and N_{a,-b}^2 = N_{a,b}^2 + <a,b>. The last two are exact.
IdentityReport verify_identities(const RootSystem& rs, const StructureConstants& sc, double tol = 1e-12);

}  // namespace skt
