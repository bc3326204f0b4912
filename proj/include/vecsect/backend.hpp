#pragma once

// Entry points into the vector backends. Each lookup returns an empty entry
// when the build has no such kernel; whether the CPU can run it is the
// dispatcher's business (see dispatch.hpp).

#include <cstdint>
#include <span>

#include "vecsect/detail/block_loop.hpp"
#include "vecsect/dispatch.hpp"
#include "vecsect/kernels.hpp"

namespace vecsect::backend {

template <class Lane>
struct LoopEntry {
  LoopOutcome (*count)(std::span<const Lane> a, std::span<const Lane> b) = nullptr;
  LoopOutcome (*materialize)(std::span<const Lane> a, std::span<const Lane> b, Lane* out) = nullptr;

  explicit operator bool() const noexcept { return count != nullptr; }
};

/// Loads one block from each pointer and returns the first mask.
template <class Lane>
using BlockKernel = Mask (*)(const Lane* a, const Lane* b);

/// True when the build contains the AVX-512 translation units.
bool built_with_avx512() noexcept;
bool built_with_vp2intersect() noexcept;

/// emulated_fast / emulated_naive / emulated_memory / strict on AVX-512.
template <class Lane>
LoopEntry<Lane> avx512_loop(unsigned vector_bits, Implementation impl) noexcept;
template <class Lane>
BlockKernel<Lane> avx512_block_kernel(unsigned vector_bits, Implementation impl) noexcept;

/// Both masks of the 512x32 strict vector kernel; null when not built.
using StrictKernel = RawMaskPair (*)(const std::uint32_t* a, const std::uint32_t* b);
StrictKernel avx512_strict_kernel() noexcept;

/// The VP2INTERSECT instruction itself (32- and 64-bit lanes only).
template <class Lane>
LoopEntry<Lane> native_loop(unsigned vector_bits) noexcept;
template <class Lane>
BlockKernel<Lane> native_block_kernel(unsigned vector_bits) noexcept;

}  // namespace vecsect::backend
