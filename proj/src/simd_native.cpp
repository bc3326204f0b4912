// The hardware VP2INTERSECT instruction behind the same block loop.
// Built with the AVX-512 flags plus -mavx512vp2intersect.

#include "avx512_isa.hpp"

namespace vecsect::backend {
namespace {

struct NativeKernel {
  template <class G, class Reg, class Lane>
  static Mask apply(Reg a, Reg b, const Lane*) {
    if constexpr (G::vector_bits == 512 && G::lane_bits == 32) {
      __mmask16 ka, kb;
      _mm512_2intersect_epi32(a, b, &ka, &kb);
      return ka;
    } else if constexpr (G::vector_bits == 512) {
      __mmask8 ka, kb;
      _mm512_2intersect_epi64(a, b, &ka, &kb);
      return ka;
    } else if constexpr (G::vector_bits == 256 && G::lane_bits == 32) {
      __mmask8 ka, kb;
      _mm256_2intersect_epi32(a, b, &ka, &kb);
      return ka;
    } else if constexpr (G::vector_bits == 256) {
      __mmask8 ka, kb;
      _mm256_2intersect_epi64(a, b, &ka, &kb);
      return ka;
    } else if constexpr (G::lane_bits == 32) {
      __mmask8 ka, kb;
      _mm_2intersect_epi32(a, b, &ka, &kb);
      return ka;
    } else {
      __mmask8 ka, kb;
      _mm_2intersect_epi64(a, b, &ka, &kb);
      return ka & 0x3;
    }
  }
};

template <class Lane, class Result, class Make>
Result by_width(unsigned vector_bits, Make make) {
  constexpr unsigned kLaneBits = sizeof(Lane) * 8;
  if constexpr (kLaneBits == 16) {
    return Result{};
  } else {
    switch (vector_bits) {
      case 512: return make.template operator()<Geometry<512, kLaneBits>>();
      case 256: return make.template operator()<Geometry<256, kLaneBits>>();
      case 128: return make.template operator()<Geometry<128, kLaneBits>>();
      default: return Result{};
    }
  }
}

}  // namespace

bool built_with_vp2intersect() noexcept { return true; }

template <class Lane>
LoopEntry<Lane> native_loop(unsigned vector_bits) noexcept {
  return by_width<Lane, LoopEntry<Lane>>(vector_bits, []<class G>() { return make_entry<G, NativeKernel>(); });
}

template <class Lane>
BlockKernel<Lane> native_block_kernel(unsigned vector_bits) noexcept {
  return by_width<Lane, BlockKernel<Lane>>(vector_bits,
                                           []<class G>() { return &block_kernel<G, NativeKernel>; });
}

template LoopEntry<std::uint16_t> native_loop<std::uint16_t>(unsigned) noexcept;
template LoopEntry<std::uint32_t> native_loop<std::uint32_t>(unsigned) noexcept;
template LoopEntry<std::uint64_t> native_loop<std::uint64_t>(unsigned) noexcept;
template BlockKernel<std::uint16_t> native_block_kernel<std::uint16_t>(unsigned) noexcept;
template BlockKernel<std::uint32_t> native_block_kernel<std::uint32_t>(unsigned) noexcept;
template BlockKernel<std::uint64_t> native_block_kernel<std::uint64_t>(unsigned) noexcept;

}  // namespace vecsect::backend
