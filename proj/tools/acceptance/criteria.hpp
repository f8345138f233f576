#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace skt::acceptance {

struct Result {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240613;
  std::vector<int> only;  // empty: every criterion
};

/// Titles of the criteria, index i holds criterion i + 1.
const std::vector<std::string>& titles();

/// Runs the selected criteria in order; `report` is called after each one.
std::vector<Result> run(const Options& opts, const std::function<void(const Result&)>& report = {});

}  // namespace skt::acceptance
