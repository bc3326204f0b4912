#pragma once

// Portable scalar builds of the intersection-mask kernels.
//
// Every kernel computes the "first mask" of a two-way intersection: bit i is
// set iff lane i of `a` equals some lane of `b`. The templates operate on
// typed blocks and are what the driver instantiates; the LaneVector overloads
// at the bottom are the checked runtime entry points.

#include <array>
#include <cstddef>
#include <span>
#include <utility>

#include "vecsect/geometry.hpp"
#include "vecsect/lane_vector.hpp"

namespace vecsect {

template <class G>
using Block = std::array<typename G::lane_type, G::lanes>;

template <class G>
using BlockSpan = std::span<const typename G::lane_type, G::lanes>;

struct RawMaskPair {
  Mask first;
  Mask second;

  friend constexpr bool operator==(const RawMaskPair&, const RawMaskPair&) = default;
};

namespace portable {

/// Ground truth: the O(L^2) double loop, both masks.
template <class G>
constexpr RawMaskPair oracle_two_masks(const Block<G>& a, const Block<G>& b) noexcept {
  RawMaskPair out{0, 0};
  for (std::size_t i = 0; i < G::lanes; ++i) {
    for (std::size_t j = 0; j < G::lanes; ++j) {
      const Mask match = a[i] == b[j] ? 1u : 0u;
      out.first |= match << i;
      out.second |= match << j;
    }
  }
  return out;
}

/// Lane i of the result is lane (i + k_blocks * g) mod L of the input.
template <class G>
constexpr Block<G> rotate_blocks(const Block<G>& a, std::size_t k_blocks) noexcept {
  Block<G> out{};
  const std::size_t shift = k_blocks * G::block_lanes;
  for (std::size_t i = 0; i < G::lanes; ++i) out[i] = a[(i + shift) % G::lanes];
  return out;
}

/// Rotates each 128-bit block by j lanes toward lower indices; lanes never
/// cross a block boundary.
template <class G>
constexpr Block<G> rotate_within_blocks(const Block<G>& b, std::size_t j_lanes) noexcept {
  Block<G> out{};
  for (std::size_t blk = 0; blk < G::blocks; ++blk) {
    const std::size_t base = blk * G::block_lanes;
    for (std::size_t p = 0; p < G::block_lanes; ++p)
      out[base + p] = b[base + (p + j_lanes) % G::block_lanes];
  }
  return out;
}

/// L-bit left rotation. Callers guarantee k < L.
template <std::size_t L>
constexpr Mask mask_rotate_left(Mask m, std::size_t k) noexcept {
  constexpr Mask full = L >= 32 ? ~Mask{0} : (Mask{1} << L) - 1;
  if (k == 0) return m & full;
  return ((m << k) | (m >> (L - k))) & full;
}

template <class G>
constexpr Mask compare_eq(const Block<G>& a, const Block<G>& b) noexcept {
  Mask m = 0;
  for (std::size_t i = 0; i < G::lanes; ++i) m |= Mask{a[i] == b[i]} << i;
  return m;
}

/// Masked not-equal compare: the fresh not-equal mask ANDed with `incoming`.
template <class G>
constexpr Mask compare_neq(Mask incoming, const Block<G>& a, const Block<G>& b) noexcept {
  Mask m = 0;
  for (std::size_t i = 0; i < G::lanes; ++i) m |= Mask{a[i] != b[i]} << i;
  return m & incoming;
}

template <class G>
constexpr Mask compare_neq_broadcast(Mask incoming, const Block<G>& a, typename G::lane_type v) noexcept {
  Mask m = 0;
  for (std::size_t i = 0; i < G::lanes; ++i) m |= Mask{a[i] != v} << i;
  return m & incoming;
}

template <class G>
constexpr Block<G> broadcast_lane(const Block<G>& b, std::size_t j) noexcept {
  Block<G> out{};
  out.fill(b[j]);
  return out;
}

/// Broadcast every lane of b in turn, compare for equality against a, OR.
template <class G>
constexpr Mask naive_first_mask(const Block<G>& a, const Block<G>& b) noexcept {
  Mask m = 0;
  for (std::size_t j = 0; j < G::lanes; ++j) m |= compare_eq<G>(a, broadcast_lane<G>(b, j));
  return m;
}

template <class G>
struct Rotations {
  std::array<Block<G>, G::blocks> a;
  std::array<Block<G>, G::block_lanes> b;
};

/// The G block rotations of a (index 0 is a itself) and the g within-block
/// rotations of b.
template <class G>
constexpr Rotations<G> make_rotations(const Block<G>& a, const Block<G>& b) noexcept {
  Rotations<G> r{};
  for (std::size_t i = 0; i < G::blocks; ++i) r.a[i] = rotate_blocks<G>(a, i);
  for (std::size_t j = 0; j < G::block_lanes; ++j) r.b[j] = rotate_within_blocks<G>(b, j);
  return r;
}

/// OR-combining formulation: per a-rotation group, OR the g equality masks,
/// undo the rotation with a left bit-rotation by i*g, OR the groups.
template <class G>
constexpr Mask fast_first_mask_or_combined(const Block<G>& a, const Block<G>& b) noexcept {
  const auto rot = make_rotations<G>(a, b);
  Mask out = 0;
  for (std::size_t i = 0; i < G::blocks; ++i) {
    Mask group = 0;
    for (std::size_t j = 0; j < G::block_lanes; ++j) group |= compare_eq<G>(rot.a[i], rot.b[j]);
    out |= mask_rotate_left<G::lanes>(group, i * G::block_lanes);
  }
  return out;
}

/// Chained not-equal formulation before the final complement: each a-rotation
/// group threads one mask through its g masked not-equal compares, and the G
/// un-rotated group masks are ANDed. The complement of this value (within L
/// bits) is the first mask.
template <class G>
constexpr Mask fast_chained_conjunction(const Block<G>& a, const Block<G>& b) noexcept {
  const auto rot = make_rotations<G>(a, b);
  std::array<Mask, G::blocks> chain{};
  chain.fill(G::full_mask);
  // j-outer keeps the G chains independent of each other at every step.
  for (std::size_t j = 0; j < G::block_lanes; ++j)
    for (std::size_t i = 0; i < G::blocks; ++i) chain[i] = compare_neq<G>(chain[i], rot.a[i], rot.b[j]);
  Mask acc = G::full_mask;
  for (std::size_t i = 0; i < G::blocks; ++i) acc &= mask_rotate_left<G::lanes>(chain[i], i * G::block_lanes);
  return acc;
}

template <class G>
constexpr Mask fast_first_mask(const Block<G>& a, const Block<G>& b) noexcept {
  return ~fast_chained_conjunction<G>(a, b) & G::full_mask;
}

inline constexpr std::size_t kMemoryChainDepth = 3;

/// L broadcast-from-memory not-equal compares; compare t chains from compare
/// t-3, so three independent chains run side by side. The first mask is the
/// complement of the AND of the chain tails.
template <class G>
constexpr Mask memory_first_mask(const Block<G>& a, BlockSpan<G> b) noexcept {
  std::array<Mask, kMemoryChainDepth> chain{};
  chain.fill(G::full_mask);
  for (std::size_t t = 0; t < G::lanes; ++t)
    chain[t % kMemoryChainDepth] = compare_neq_broadcast<G>(chain[t % kMemoryChainDepth], a, b[t]);
  Mask acc = G::full_mask;
  for (Mask m : chain) acc &= m;
  return ~acc & G::full_mask;
}

/// Both masks for 512-bit vectors of 32-bit lanes. The second mask is rebuilt
/// from the per-b-rotation OR masks by shifting each block's bits back to the
/// b lanes they were compared against.
template <class G>
constexpr RawMaskPair strict_two_masks(const Block<G>& a, const Block<G>& b) noexcept {
  static_assert(G::vector_bits == 512 && G::lane_bits == 32, "strict emulation exists for 512x32 only");
  const auto rot = make_rotations<G>(a, b);
  std::array<std::array<Mask, 4>, 4> m{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = compare_eq<G>(rot.a[i], rot.b[j]);

  Mask ka = 0;
  for (std::size_t i = 0; i < 4; ++i)
    ka |= mask_rotate_left<16>(m[i][0] | m[i][1] | m[i][2] | m[i][3], 4 * i);

  std::array<Mask, 4> by_b{};
  for (std::size_t j = 0; j < 4; ++j) by_b[j] = m[0][j] | m[1][j] | m[2][j] | m[3][j];

  Mask kb = by_b[0] | ((0x7777 & by_b[1]) << 1) | ((by_b[1] >> 3) & 0x1111) | ((0x3333 & by_b[2]) << 2) |
            ((by_b[2] >> 2) & 0x3333) | ((by_b[3] >> 1) & 0x7777) | ((by_b[3] & 0x1111) << 3);
  return {ka & 0xFFFF, kb & 0xFFFF};
}

}  // namespace portable

// Checked runtime entry points. Geometry mismatches and out-of-range
// rotation amounts throw InvalidArgument.

MaskPair oracle_two_masks(const LaneVector& a, const LaneVector& b);
LaneVector rotate_blocks(const LaneVector& a, std::size_t k_blocks);
LaneVector rotate_within_blocks(const LaneVector& b, std::size_t j_lanes);
/// Rejects k >= L instead of reducing it.
IntersectMask mask_rotate_left(const IntersectMask& m, std::size_t k);
IntersectMask naive_first_mask(const LaneVector& a, const LaneVector& b);
IntersectMask fast_first_mask(const LaneVector& a, const LaneVector& b);
IntersectMask memory_first_mask(const LaneVector& a, MemoryOperand b);
/// Throws UnsupportedGeometry unless both vectors are 512x32.
MaskPair strict_two_masks(const LaneVector& a, const LaneVector& b);

}  // namespace vecsect
