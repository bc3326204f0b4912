// Linked in place of the vector translation units when the compiler cannot
// target AVX-512. Every lookup comes back empty, leaving the portable kernels.

#include "vecsect/backend.hpp"

namespace vecsect::backend {

#ifndef VECSECT_HAVE_AVX512
bool built_with_avx512() noexcept { return false; }

template <class Lane>
LoopEntry<Lane> avx512_loop(unsigned, Implementation) noexcept {
  return {};
}

template <class Lane>
BlockKernel<Lane> avx512_block_kernel(unsigned, Implementation) noexcept {
  return nullptr;
}

StrictKernel avx512_strict_kernel() noexcept { return nullptr; }

template LoopEntry<std::uint16_t> avx512_loop<std::uint16_t>(unsigned, Implementation) noexcept;
template LoopEntry<std::uint32_t> avx512_loop<std::uint32_t>(unsigned, Implementation) noexcept;
template LoopEntry<std::uint64_t> avx512_loop<std::uint64_t>(unsigned, Implementation) noexcept;
template BlockKernel<std::uint16_t> avx512_block_kernel<std::uint16_t>(unsigned, Implementation) noexcept;
template BlockKernel<std::uint32_t> avx512_block_kernel<std::uint32_t>(unsigned, Implementation) noexcept;
template BlockKernel<std::uint64_t> avx512_block_kernel<std::uint64_t>(unsigned, Implementation) noexcept;
#endif

#ifndef VECSECT_HAVE_VP2INTERSECT
bool built_with_vp2intersect() noexcept { return false; }

template <class Lane>
LoopEntry<Lane> native_loop(unsigned) noexcept {
  return {};
}

template <class Lane>
BlockKernel<Lane> native_block_kernel(unsigned) noexcept {
  return nullptr;
}

template LoopEntry<std::uint16_t> native_loop<std::uint16_t>(unsigned) noexcept;
template LoopEntry<std::uint32_t> native_loop<std::uint32_t>(unsigned) noexcept;
template LoopEntry<std::uint64_t> native_loop<std::uint64_t>(unsigned) noexcept;
template BlockKernel<std::uint16_t> native_block_kernel<std::uint16_t>(unsigned) noexcept;
template BlockKernel<std::uint32_t> native_block_kernel<std::uint32_t>(unsigned) noexcept;
template BlockKernel<std::uint64_t> native_block_kernel<std::uint64_t>(unsigned) noexcept;
#endif

}  // namespace vecsect::backend
