#pragma once

// Desk-scale verification battery shared by `ctv verify` and the acceptance
// test binary. Each check is named and independently runnable.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctv/serialize.hpp"

namespace ctv {

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;  // overrides every per-check trial count
  unsigned jobs = 1;
  std::vector<std::string> only;      // empty = all checks
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  json reproduction;  // manifest for failures that need one
};

// Names in execution order.
std::vector<std::string> check_names();

std::vector<CheckResult> run_suite(const SuiteOptions& options,
                                   const std::function<void(const CheckResult&)>& on_result = {});

// Calls fn(colors) for every set partition of {0..n-1} with blocks of size
// <= max_block, colors given as restricted growth strings.
void for_each_coloring(std::size_t n, std::size_t max_block, const std::function<void(const std::vector<int>&)>& fn);

}  // namespace ctv
