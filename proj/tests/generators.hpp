#pragma once

// Small hand-rolled generators for the property tests.

#include "skt/root_system.hpp"

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace skt::gen {

inline constexpr std::uint64_t kSeed = 0x5eed2024;

/// Every simple type with rank <= max_rank, plus the exceptional ones that fit.
inline std::vector<SimpleType> types_up_to(int max_rank) {
  std::vector<SimpleType> out;
  for (int n = 1; n <= max_rank; ++n) out.push_back({'A', n});
  for (int n = 2; n <= max_rank; ++n) out.push_back({'B', n});
  for (int n = 3; n <= max_rank; ++n) out.push_back({'C', n});
  for (int n = 4; n <= max_rank; ++n) out.push_back({'D', n});
  if (max_rank >= 2) out.push_back({'G', 2});
  if (max_rank >= 4) out.push_back({'F', 4});
  for (int n = 6; n <= std::min(max_rank, 8); ++n) out.push_back({'E', n});
  return out;
}

inline std::vector<Normalization> normalizations() {
  return {Normalization::long2, Normalization::short2, Normalization::killing};
}

inline Eigen::VectorXd uniform_vector(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  return a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

/// Random integer combination of simple roots with small coefficients, possibly not a root.
inline std::vector<int> random_coeffs(std::mt19937_64& rng, int rank, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  std::vector<int> c(static_cast<std::size_t>(rank));
  for (int& v : c) v = u(rng);
  return c;
}

}  // namespace skt::gen
