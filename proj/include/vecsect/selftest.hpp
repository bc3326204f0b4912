#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vecsect/dispatch.hpp"

namespace vecsect {

struct SelftestOptions {
  std::size_t random_pairs = 20000;  // per geometry and kernel
  std::size_t workloads = 24;        // driver workloads per geometry
  std::uint64_t seed = 1;
};

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Kernel-vs-oracle equivalence for every geometry and every kernel the
/// given capabilities allow, plus a driver differential against a plain
/// merge.
std::vector<SelftestCheck> run_selftest(const SelftestOptions& options, const CapabilitySet& caps);

}  // namespace vecsect
