#pragma once

// The block-at-a-time streaming loop shared by the portable and vector
// backends. Ops supplies load / first_mask / count_le / compress_store /
// popcount for one register type; the loop owns cursor movement and the
// hand-off to the scalar tail.

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>

#include "vecsect/geometry.hpp"

namespace vecsect {

struct LoopOutcome {
  std::size_t count = 0;
  std::size_t block_iterations = 0;
  // Iterations where neither cursor advanced a full block. Always zero for
  // strictly increasing inputs.
  std::size_t progress_violations = 0;
};

// Two-pointer merge over whatever is left once either input has fewer than L
// lanes. `out` may be null to only count.
std::size_t scalar_tail_intersect(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
                                  std::uint16_t* out);
std::size_t scalar_tail_intersect(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                  std::uint32_t* out);
std::size_t scalar_tail_intersect(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                  std::uint64_t* out);

namespace detail {

template <class G, bool Materialize, class Ops>
LoopOutcome block_loop(std::span<const typename G::lane_type> a, std::span<const typename G::lane_type> b,
                       typename G::lane_type* out, const Ops& ops) {
  constexpr std::size_t L = G::lanes;
  LoopOutcome r;
  const auto* pa = a.data();
  const auto* pb = b.data();
  const auto* const a_end = pa + a.size();
  const auto* const b_end = pb + b.size();

  // Only whole blocks are loaded; the remainder goes to the scalar tail.
  while (static_cast<std::size_t>(a_end - pa) >= L && static_cast<std::size_t>(b_end - pb) >= L) {
    const auto va = ops.load(pa);
    const auto vb = ops.load(pb);
    const Mask m = ops.first_mask(va, vb, pb);
    if constexpr (Materialize) ops.compress_store(out + r.count, m, va);
    r.count += ops.popcount(m);

    const std::size_t da = ops.count_le(va, pb[L - 1]);
    const std::size_t db = ops.count_le(vb, pa[L - 1]);
    assert(da == L || db == L);
    r.progress_violations += (da != L && db != L);
    pa += da;
    pb += db;
    ++r.block_iterations;
  }

  r.count += scalar_tail_intersect(std::span(pa, a_end), std::span(pb, b_end), Materialize ? out + r.count : nullptr);
  return r;
}

}  // namespace detail
}  // namespace vecsect
