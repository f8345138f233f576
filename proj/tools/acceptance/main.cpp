#include "criteria.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  skt::acceptance::Options opts;
  app.add_option("--seed", opts.seed, "Random seed");
  app.add_option("--only", opts.only, "Run only these criteria (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  skt::acceptance::run(opts, [&](const skt::acceptance::Result& r) {
    std::printf("[%s] %2d %s (%.2f s): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  return failed == 0 ? 0 : 1;
}
