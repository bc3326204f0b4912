#include "vecsect/driver.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <string>

#include "vecsect/backend.hpp"

namespace vecsect {

namespace {

template <class Lane>
std::size_t merge_tail(std::span<const Lane> a, std::span<const Lane> b, Lane* out) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    const Lane x = a[i], y = b[j];
    if (x == y && out != nullptr) out[n] = x;
    n += x == y;
    i += x <= y;
    j += x >= y;
  }
  return n;
}

std::uint64_t lane_max(unsigned lane_bits) {
  return lane_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lane_bits) - 1;
}

}  // namespace

std::size_t scalar_tail_intersect(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
                                  std::uint16_t* out) {
  return merge_tail(a, b, out);
}
std::size_t scalar_tail_intersect(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                  std::uint32_t* out) {
  return merge_tail(a, b, out);
}
std::size_t scalar_tail_intersect(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                  std::uint64_t* out) {
  return merge_tail(a, b, out);
}

// ---------------------------------------------------------------------------
// SortedRun

void SortedRun::validate() const {
  std::visit(
      [](const auto& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
          if (!(v[i - 1] < v[i]))
            throw ValidationError("run is not strictly increasing: " + std::to_string(v[i]) + " follows " +
                                      std::to_string(v[i - 1]),
                                  i);
      },
      values_);
}

SortedRun SortedRun::from_values(unsigned lane_bits, std::span<const std::uint64_t> values) {
  return visit_lane_bits(lane_bits, [&](auto bits) {
    using Lane = lane_t<decltype(bits)::value>;
    const auto limit = lane_max(bits);
    std::vector<Lane> typed(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] > limit)
        throw ValidationError("value " + std::to_string(values[i]) + " does not fit " + std::to_string(bits()) +
                                  "-bit lanes",
                              i);
      typed[i] = static_cast<Lane>(values[i]);
    }
    return SortedRun(std::move(typed));
  });
}

SortedRun SortedRun::empty(unsigned lane_bits) {
  return visit_lane_bits(lane_bits, [](auto bits) { return SortedRun(std::vector<lane_t<decltype(bits)::value>>{}); });
}

unsigned SortedRun::lane_bits() const noexcept {
  return std::visit([](const auto& v) { return static_cast<unsigned>(sizeof(v[0]) * 8); }, values_);
}

std::size_t SortedRun::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, values_);
}

std::uint64_t SortedRun::at(std::size_t i) const {
  return std::visit([&](const auto& v) { return static_cast<std::uint64_t>(v.at(i)); }, values_);
}

std::vector<std::uint64_t> SortedRun::widened() const {
  return std::visit([](const auto& v) { return std::vector<std::uint64_t>(v.begin(), v.end()); }, values_);
}

class IntersectionBuilder {
 public:
  template <LaneType Lane>
  static SortedRun adopt(std::vector<Lane> values) {
    return SortedRun(std::move(values), SortedRun::Unchecked{});
  }
};

// ---------------------------------------------------------------------------
// Block advance

std::pair<std::size_t, std::size_t> advance_counts(const LaneVector& va, const LaneVector& vb) {
  if (va.geometry() != vb.geometry())
    throw InvalidArgument("geometry mismatch: " + va.geometry().name() + " vs " + vb.geometry().name());
  const std::size_t L = va.size();
  const std::uint64_t a_last = va[L - 1];
  const std::uint64_t b_last = vb[L - 1];
  Mask le_a = 0, le_b = 0;
  for (std::size_t i = 0; i < L; ++i) {
    le_a |= Mask{va[i] <= b_last} << i;
    le_b |= Mask{vb[i] <= a_last} << i;
  }
  // Sorted blocks give prefixes of ones, so popcount == highest set bit + 1.
  assert((le_a & (le_a + 1)) == 0 && (le_b & (le_b + 1)) == 0);
  return {static_cast<std::size_t>(std::popcount(le_a)), static_cast<std::size_t>(std::popcount(le_b))};
}

// ---------------------------------------------------------------------------
// Runtime dispatch onto a block loop

namespace {

template <class G>
struct PortableFast {
  Mask operator()(const Block<G>& a, const Block<G>& b, BlockSpan<G>) const noexcept {
    return portable::fast_first_mask<G>(a, b);
  }
};

template <LaneType Lane>
backend::LoopEntry<Lane> portable_entry(KernelGeometry g) {
  return visit_geometry(g, [&]<class G>(G) -> backend::LoopEntry<Lane> {
    if constexpr (!std::is_same_v<typename G::lane_type, Lane>) {
      return {};
    } else {
      using Ops = detail::PortableOps<G, PortableFast<G>>;
      return {
          [](std::span<const Lane> a, std::span<const Lane> b) {
            return detail::block_loop<G, false>(a, b, nullptr, Ops{});
          },
          [](std::span<const Lane> a, std::span<const Lane> b, Lane* out) {
            return detail::block_loop<G, true>(a, b, out, Ops{});
          },
      };
    }
  });
}

template <LaneType Lane>
backend::LoopEntry<Lane> resolve(KernelGeometry g, Implementation impl) {
  require_selectable({g, impl}, detect_capabilities());
  backend::LoopEntry<Lane> entry;
  switch (impl) {
    case Implementation::scalar: entry = portable_entry<Lane>(g); break;
    case Implementation::native: entry = backend::native_loop<Lane>(g.vector_bits()); break;
    default: entry = backend::avx512_loop<Lane>(g.vector_bits(), impl); break;
  }
  if (!entry)
    throw UnsupportedCapability("this build has no " + std::string(to_string(impl)) + " kernel for " + g.name());
  return entry;
}

void check_lane_widths(const SortedRun& a, const SortedRun& b, KernelGeometry g) {
  if (a.lane_bits() != b.lane_bits() || a.lane_bits() != g.lane_bits())
    throw InvalidArgument("lane width mismatch: runs have " + std::to_string(a.lane_bits()) + " and " +
                          std::to_string(b.lane_bits()) + " bits, geometry " + g.name());
}

void record(LoopStats* stats, const LoopOutcome& outcome) {
  if (stats != nullptr) *stats = {outcome.block_iterations, outcome.progress_violations};
}

}  // namespace

IntersectionResult intersect_runs(const SortedRun& a, const SortedRun& b, KernelGeometry geometry,
                                  Implementation impl, LoopStats* stats) {
  check_lane_widths(a, b, geometry);
  return visit_lane_bits(geometry.lane_bits(), [&](auto bits) {
    using Lane = lane_t<decltype(bits)::value>;
    const auto entry = resolve<Lane>(geometry, impl);
    const auto xs = a.values<Lane>();
    const auto ys = b.values<Lane>();
    std::vector<Lane> out(std::min(xs.size(), ys.size()));
    const auto outcome = entry.materialize(xs, ys, out.data());
    out.resize(outcome.count);
    record(stats, outcome);
    return IntersectionResult{IntersectionBuilder::adopt(std::move(out)), outcome.count};
  });
}

std::size_t intersect_size(const SortedRun& a, const SortedRun& b, KernelGeometry geometry, Implementation impl,
                           LoopStats* stats) {
  check_lane_widths(a, b, geometry);
  return visit_lane_bits(geometry.lane_bits(), [&](auto bits) {
    using Lane = lane_t<decltype(bits)::value>;
    const auto entry = resolve<Lane>(geometry, impl);
    const auto outcome = entry.count(a.values<Lane>(), b.values<Lane>());
    record(stats, outcome);
    return outcome.count;
  });
}

}  // namespace vecsect
