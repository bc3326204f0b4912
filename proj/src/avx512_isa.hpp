#pragma once

// Register-level helpers for the AVX-512 translation units. Only include this
// from files compiled with the AVX-512 flags; everything lives in an unnamed
// namespace so no instantiation can leak into the portable build.

#include <immintrin.h>

#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "vecsect/backend.hpp"
#include "vecsect/detail/block_loop.hpp"
#include "vecsect/geometry.hpp"

namespace vecsect::backend {
namespace {

template <std::size_t N, class F>
inline void unroll(F&& f) {
  [&]<std::size_t... I>(std::index_sequence<I...>) {
    (f(std::integral_constant<std::size_t, I>{}), ...);
  }(std::make_index_sequence<N>{});
}

template <std::size_t L>
inline Mask rotl(Mask m, std::size_t k) {
  constexpr Mask full = L >= 32 ? ~Mask{0} : (Mask{1} << L) - 1;
  if (k == 0) return m;
  return ((m << k) | (m >> (L - k))) & full;
}

inline std::size_t popcnt(Mask m) { return static_cast<std::size_t>(_mm_popcnt_u32(m)); }

// 64-bit pattern of 16-bit permute indices that selects lane j of width LB
// into every lane.
template <unsigned LB>
inline long long broadcast_index_pattern(std::size_t j) {
  constexpr std::size_t words = LB / 16;
  std::uint64_t pattern = 0;
  for (std::size_t t = 0; t < 4; ++t) pattern |= std::uint64_t(j * words + t % words) << (16 * t);
  return static_cast<long long>(pattern);
}

template <unsigned V, unsigned LB>
struct Vec;

template <unsigned LB>
struct Vec<512, LB> {
  using reg = __m512i;
  using lane = lane_t<LB>;

  static reg load(const lane* p) { return _mm512_loadu_si512(p); }
  static void store(lane* p, reg v) { _mm512_storeu_si512(p, v); }

  static reg set1(lane v) {
    if constexpr (LB == 16) return _mm512_set1_epi16(static_cast<short>(v));
    else if constexpr (LB == 32) return _mm512_set1_epi32(static_cast<int>(v));
    else return _mm512_set1_epi64(static_cast<long long>(v));
  }

  static Mask cmpeq(reg a, reg b) {
    if constexpr (LB == 16) return _mm512_cmpeq_epi16_mask(a, b);
    else if constexpr (LB == 32) return _mm512_cmpeq_epi32_mask(a, b);
    else return _mm512_cmpeq_epi64_mask(a, b);
  }

  static Mask cmpneq(Mask k, reg a, reg b) {
    if constexpr (LB == 16) return _mm512_mask_cmpneq_epi16_mask(static_cast<__mmask32>(k), a, b);
    else if constexpr (LB == 32) return _mm512_mask_cmpneq_epi32_mask(static_cast<__mmask16>(k), a, b);
    else return _mm512_mask_cmpneq_epi64_mask(static_cast<__mmask8>(k), a, b);
  }

  static Mask cmple(reg a, reg b) {
    if constexpr (LB == 16) return _mm512_cmple_epu16_mask(a, b);
    else if constexpr (LB == 32) return _mm512_cmple_epu32_mask(a, b);
    else return _mm512_cmple_epu64_mask(a, b);
  }

  template <std::size_t K>
  static reg rotate_blocks(reg a) {
    return _mm512_alignr_epi32(a, a, 4 * K);
  }

  template <std::size_t Bytes>
  static reg rotate_within(reg b) {
    return _mm512_alignr_epi8(b, b, Bytes);
  }

  static reg broadcast_lane(reg b, std::size_t j) {
    return _mm512_permutexvar_epi16(_mm512_set1_epi64(broadcast_index_pattern<LB>(j)), b);
  }

  static void compress_store(lane* out, Mask m, reg v) {
    if constexpr (LB == 32) _mm512_mask_compressstoreu_epi32(out, static_cast<__mmask16>(m), v);
    else if constexpr (LB == 64) _mm512_mask_compressstoreu_epi64(out, static_cast<__mmask8>(m), v);
    else compress_store_scalar(out, m, v);
  }

  static void compress_store_scalar(lane* out, Mask m, reg v) {
    alignas(64) std::array<lane, 512 / LB> tmp;
    store(tmp.data(), v);
    for (; m != 0; m &= m - 1) *out++ = tmp[__builtin_ctz(m)];
  }
};

template <unsigned LB>
struct Vec<256, LB> {
  using reg = __m256i;
  using lane = lane_t<LB>;

  static reg load(const lane* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
  static void store(lane* p, reg v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

  static reg set1(lane v) {
    if constexpr (LB == 16) return _mm256_set1_epi16(static_cast<short>(v));
    else if constexpr (LB == 32) return _mm256_set1_epi32(static_cast<int>(v));
    else return _mm256_set1_epi64x(static_cast<long long>(v));
  }

  static Mask cmpeq(reg a, reg b) {
    if constexpr (LB == 16) return _mm256_cmpeq_epi16_mask(a, b);
    else if constexpr (LB == 32) return _mm256_cmpeq_epi32_mask(a, b);
    else return _mm256_cmpeq_epi64_mask(a, b);
  }

  static Mask cmpneq(Mask k, reg a, reg b) {
    if constexpr (LB == 16) return _mm256_mask_cmpneq_epi16_mask(static_cast<__mmask16>(k), a, b);
    else if constexpr (LB == 32) return _mm256_mask_cmpneq_epi32_mask(static_cast<__mmask8>(k), a, b);
    else return _mm256_mask_cmpneq_epi64_mask(static_cast<__mmask8>(k), a, b);
  }

  static Mask cmple(reg a, reg b) {
    if constexpr (LB == 16) return _mm256_cmple_epu16_mask(a, b);
    else if constexpr (LB == 32) return _mm256_cmple_epu32_mask(a, b);
    else return _mm256_cmple_epu64_mask(a, b);
  }

  template <std::size_t K>
  static reg rotate_blocks(reg a) {
    static_assert(K == 1);
    return _mm256_permute2x128_si256(a, a, 0x01);
  }

  template <std::size_t Bytes>
  static reg rotate_within(reg b) {
    return _mm256_alignr_epi8(b, b, Bytes);
  }

  static reg broadcast_lane(reg b, std::size_t j) {
    return _mm256_permutexvar_epi16(_mm256_set1_epi64x(broadcast_index_pattern<LB>(j)), b);
  }

  static void compress_store(lane* out, Mask m, reg v) {
    if constexpr (LB == 32) _mm256_mask_compressstoreu_epi32(out, static_cast<__mmask8>(m), v);
    else if constexpr (LB == 64) _mm256_mask_compressstoreu_epi64(out, static_cast<__mmask8>(m), v);
    else {
      alignas(32) std::array<lane, 256 / LB> tmp;
      store(tmp.data(), v);
      for (; m != 0; m &= m - 1) *out++ = tmp[__builtin_ctz(m)];
    }
  }
};

template <unsigned LB>
struct Vec<128, LB> {
  using reg = __m128i;
  using lane = lane_t<LB>;

  static reg load(const lane* p) { return _mm_loadu_si128(reinterpret_cast<const __m128i*>(p)); }
  static void store(lane* p, reg v) { _mm_storeu_si128(reinterpret_cast<__m128i*>(p), v); }

  static reg set1(lane v) {
    if constexpr (LB == 16) return _mm_set1_epi16(static_cast<short>(v));
    else if constexpr (LB == 32) return _mm_set1_epi32(static_cast<int>(v));
    else return _mm_set1_epi64x(static_cast<long long>(v));
  }

  static Mask cmpeq(reg a, reg b) {
    if constexpr (LB == 16) return _mm_cmpeq_epi16_mask(a, b);
    else if constexpr (LB == 32) return _mm_cmpeq_epi32_mask(a, b);
    else return _mm_cmpeq_epi64_mask(a, b);
  }

  static Mask cmpneq(Mask k, reg a, reg b) {
    if constexpr (LB == 16) return _mm_mask_cmpneq_epi16_mask(static_cast<__mmask8>(k), a, b);
    else if constexpr (LB == 32) return _mm_mask_cmpneq_epi32_mask(static_cast<__mmask8>(k), a, b);
    else return _mm_mask_cmpneq_epi64_mask(static_cast<__mmask8>(k), a, b);
  }

  static Mask cmple(reg a, reg b) {
    if constexpr (LB == 16) return _mm_cmple_epu16_mask(a, b);
    else if constexpr (LB == 32) return _mm_cmple_epu32_mask(a, b);
    else return _mm_cmple_epu64_mask(a, b);
  }

  template <std::size_t K>
  static reg rotate_blocks(reg a) {
    static_assert(K == 0, "a 128-bit vector is a single block");
    return a;
  }

  template <std::size_t Bytes>
  static reg rotate_within(reg b) {
    return _mm_alignr_epi8(b, b, Bytes);
  }

  static reg broadcast_lane(reg b, std::size_t j) {
    return _mm_permutexvar_epi16(_mm_set1_epi64x(broadcast_index_pattern<LB>(j)), b);
  }

  static void compress_store(lane* out, Mask m, reg v) {
    if constexpr (LB == 32) _mm_mask_compressstoreu_epi32(out, static_cast<__mmask8>(m), v);
    else if constexpr (LB == 64) _mm_mask_compressstoreu_epi64(out, static_cast<__mmask8>(m), v);
    else {
      alignas(16) std::array<lane, 128 / LB> tmp;
      store(tmp.data(), v);
      for (; m != 0; m &= m - 1) *out++ = tmp[__builtin_ctz(m)];
    }
  }
};

template <class G>
using VecFor = Vec<G::vector_bits, G::lane_bits>;

// Block-loop operations around a first-mask kernel K.
template <class G, class K>
struct VectorOps {
  using W = VecFor<G>;
  using lane = typename G::lane_type;
  using reg = typename W::reg;

  static reg load(const lane* p) { return W::load(p); }
  static Mask first_mask(reg a, reg b, const lane* b_mem) { return K::template apply<G>(a, b, b_mem); }

  static std::size_t count_le(reg v, lane bound) {
    const Mask le = W::cmple(v, W::set1(bound));
    assert((le & (le + 1)) == 0 && "<= mask of a sorted block must be a prefix of ones");
    return popcnt(le);
  }

  static std::size_t popcount(Mask m) { return popcnt(m); }
  static void compress_store(lane* out, Mask m, reg v) { W::compress_store(out, m, v); }
};

template <class G, class K>
LoopOutcome count_loop(std::span<const typename G::lane_type> a, std::span<const typename G::lane_type> b) {
  return detail::block_loop<G, false>(a, b, nullptr, VectorOps<G, K>{});
}

template <class G, class K>
LoopOutcome materialize_loop(std::span<const typename G::lane_type> a, std::span<const typename G::lane_type> b,
                             typename G::lane_type* out) {
  return detail::block_loop<G, true>(a, b, out, VectorOps<G, K>{});
}

template <class G, class K>
Mask block_kernel(const typename G::lane_type* a, const typename G::lane_type* b) {
  using W = VecFor<G>;
  return K::template apply<G>(W::load(a), W::load(b), b);
}

template <class G, class K>
LoopEntry<typename G::lane_type> make_entry() {
  return {&count_loop<G, K>, &materialize_loop<G, K>};
}

}  // namespace
}  // namespace vecsect::backend
