#pragma once

#include <cstdint>
#include <optional>

#include "vecsect/driver.hpp"

namespace vecsect {

/// Recipe for a pair of sorted runs with a controlled number of shared values.
struct WorkloadSpec {
  std::uint64_t seed = 0;
  unsigned lane_bits = 32;
  std::size_t len_a = 0;
  std::size_t len_b = 0;
  /// Fraction of min(len_a, len_b) that both runs share, rounded to nearest.
  double overlap_fraction = 0.0;
  /// Largest value that may appear; defaults to the largest lane value.
  std::optional<std::uint64_t> universe_max;

  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

struct Workload {
  SortedRun a;
  SortedRun b;
  std::size_t expected_intersection_size = 0;
};

/// Number of values the two runs of `spec` will share.
std::size_t shared_count(const WorkloadSpec& spec);

/// Samples len_a + len_b - shared distinct values uniformly from
/// [0, universe_max], shuffles them, and splits them into a shared pool and
/// two private pools. Output depends only on the spec (mt19937_64 plus
/// explicitly defined bounded draws), so it is identical across platforms.
/// Throws InvalidArgument if the spec is infeasible.
Workload generate_runs(const WorkloadSpec& spec);

}  // namespace vecsect
