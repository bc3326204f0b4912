#include "vecsect/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

namespace vecsect {

namespace {

std::uint64_t lane_max(unsigned lane_bits) {
  return lane_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lane_bits) - 1;
}

// Uniform draw from [0, hi] by rejection; std::uniform_int_distribution is
// not specified bit-exactly, this is.
std::uint64_t draw_inclusive(std::mt19937_64& rng, std::uint64_t hi) {
  if (hi == ~std::uint64_t{0}) return rng();
  const std::uint64_t n = hi + 1;
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

// Floyd's sampling of `count` distinct values from [0, hi], returned sorted.
std::vector<std::uint64_t> sample_distinct(std::mt19937_64& rng, std::uint64_t hi, std::size_t count) {
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(count * 2);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t j = hi - (count - 1); out.size() < count; ++j) {
    const std::uint64_t t = draw_inclusive(rng, j);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::size_t shared_count(const WorkloadSpec& spec) {
  if (!(spec.overlap_fraction >= 0.0 && spec.overlap_fraction <= 1.0))
    throw InvalidArgument("overlap fraction must lie in [0, 1], got " + std::to_string(spec.overlap_fraction));
  const auto shorter = static_cast<double>(std::min(spec.len_a, spec.len_b));
  return static_cast<std::size_t>(std::llround(spec.overlap_fraction * shorter));
}

Workload generate_runs(const WorkloadSpec& spec) {
  return visit_lane_bits(spec.lane_bits, [&](auto bits) {
    using Lane = lane_t<decltype(bits)::value>;
    const std::uint64_t hi = spec.universe_max.value_or(lane_max(bits));
    if (hi > lane_max(bits))
      throw InvalidArgument("universe maximum " + std::to_string(hi) + " does not fit " + std::to_string(bits()) +
                            "-bit lanes");

    const std::size_t shared = shared_count(spec);
    const std::size_t total = spec.len_a + spec.len_b - shared;
    if (total > 0 && total - 1 > hi)
      throw InvalidArgument("workload needs " + std::to_string(total) + " distinct values but the universe [0, " +
                            std::to_string(hi) + "] is smaller");

    std::mt19937_64 rng(spec.seed);
    std::vector<std::uint64_t> pool = total == 0 ? std::vector<std::uint64_t>{} : sample_distinct(rng, hi, total);
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[draw_inclusive(rng, i - 1)]);

    const auto shared_end = pool.begin() + static_cast<std::ptrdiff_t>(shared);
    const auto only_a_end = shared_end + static_cast<std::ptrdiff_t>(spec.len_a - shared);
    std::vector<Lane> a(pool.begin(), only_a_end);
    std::vector<Lane> b(pool.begin(), shared_end);
    b.insert(b.end(), only_a_end, pool.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return Workload{SortedRun(std::move(a)), SortedRun(std::move(b)), shared};
  });
}

}  // namespace vecsect
