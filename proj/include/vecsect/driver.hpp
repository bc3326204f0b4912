#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vecsect/detail/block_loop.hpp"
#include "vecsect/dispatch.hpp"
#include "vecsect/geometry.hpp"
#include "vecsect/kernels.hpp"
#include "vecsect/lane_vector.hpp"

namespace vecsect {

template <class T>
concept LaneType = std::same_as<T, std::uint16_t> || std::same_as<T, std::uint32_t> || std::same_as<T, std::uint64_t>;

/// Strictly increasing run of lane-width integers: a canonical sorted set.
class SortedRun {
 public:
  /// Throws ValidationError (offset = element index) on the first value that
  /// does not exceed its predecessor.
  template <LaneType Lane>
  explicit SortedRun(std::vector<Lane> values) : values_(std::move(values)) {
    validate();
  }

  /// Widened-value constructor; also rejects values that overflow lane_bits.
  static SortedRun from_values(unsigned lane_bits, std::span<const std::uint64_t> values);

  /// Empty run of the given lane width.
  static SortedRun empty(unsigned lane_bits);

  unsigned lane_bits() const noexcept;
  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  /// Throws InvalidArgument when Lane is not this run's lane type.
  template <LaneType Lane>
  std::span<const Lane> values() const {
    if (const auto* v = std::get_if<std::vector<Lane>>(&values_)) return *v;
    throw InvalidArgument("run holds " + std::to_string(lane_bits()) + "-bit lanes, not " +
                          std::to_string(sizeof(Lane) * 8));
  }

  std::uint64_t at(std::size_t i) const;
  std::vector<std::uint64_t> widened() const;

  friend bool operator==(const SortedRun&, const SortedRun&) = default;

 private:
  struct Unchecked {};
  template <LaneType Lane>
  SortedRun(std::vector<Lane> values, Unchecked) : values_(std::move(values)) {}

  void validate() const;

  friend class IntersectionBuilder;

  std::variant<std::vector<std::uint16_t>, std::vector<std::uint32_t>, std::vector<std::uint64_t>> values_;
};

struct IntersectionResult {
  SortedRun values;
  std::size_t count = 0;
};

/// Statistics of the block loop of one driver call.
struct LoopStats {
  std::size_t block_iterations = 0;
  std::size_t progress_violations = 0;
};

/// Lanes of va that are <= vb's last lane, and vice versa. Both inputs must be
/// sorted blocks of the same geometry; the counts are popcounts of the two
/// <= masks, which are prefixes of ones for sorted blocks.
std::pair<std::size_t, std::size_t> advance_counts(const LaneVector& va, const LaneVector& vb);

/// Sorted intersection of two runs using the given kernel for whole blocks.
/// Throws InvalidArgument when the lane widths of a, b and geometry differ,
/// and UnsupportedGeometry / UnsupportedCapability when the implementation
/// cannot run for this geometry on this machine.
IntersectionResult intersect_runs(const SortedRun& a, const SortedRun& b, KernelGeometry geometry,
                                  Implementation impl, LoopStats* stats = nullptr);

/// Same loop without materializing the output.
std::size_t intersect_size(const SortedRun& a, const SortedRun& b, KernelGeometry geometry, Implementation impl,
                           LoopStats* stats = nullptr);

/// Plugs an arbitrary portable first-mask kernel into the block loop.
/// kernel(const Block<G>& a, const Block<G>& b, BlockSpan<G> b_in_memory) -> Mask.
/// `out` may be null to count only; otherwise it needs room for
/// min(a.size(), b.size()) lanes.
template <class G, class Kernel>
LoopOutcome intersect_blocks(std::span<const typename G::lane_type> a, std::span<const typename G::lane_type> b,
                             typename G::lane_type* out, Kernel kernel);

namespace detail {

template <class G, class Kernel>
struct PortableOps {
  using lane = typename G::lane_type;

  Kernel kernel;

  static Block<G> load(const lane* p) noexcept {
    Block<G> v;
    for (std::size_t i = 0; i < G::lanes; ++i) v[i] = p[i];
    return v;
  }

  Mask first_mask(const Block<G>& a, const Block<G>& b, const lane* b_mem) const {
    return kernel(a, b, BlockSpan<G>(b_mem, G::lanes));
  }

  static std::size_t count_le(const Block<G>& v, lane bound) noexcept {
    std::size_t n = 0;
    for (lane x : v) n += x <= bound;
    return n;
  }

  static std::size_t popcount(Mask m) noexcept { return static_cast<std::size_t>(__builtin_popcount(m)); }

  static void compress_store(lane* out, Mask m, const Block<G>& v) noexcept {
    for (std::size_t i = 0; i < G::lanes; ++i)
      if ((m >> i) & 1u) *out++ = v[i];
  }
};

}  // namespace detail

template <class G, class Kernel>
LoopOutcome intersect_blocks(std::span<const typename G::lane_type> a, std::span<const typename G::lane_type> b,
                             typename G::lane_type* out, Kernel kernel) {
  const detail::PortableOps<G, Kernel> ops{kernel};
  if (out == nullptr) return detail::block_loop<G, false>(a, b, nullptr, ops);
  return detail::block_loop<G, true>(a, b, out, ops);
}

}  // namespace vecsect
