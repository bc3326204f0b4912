// Emulated intersection-mask kernels on AVX-512 mask registers.
// Built with -mavx512f -mavx512bw -mavx512dq -mavx512vl -mpopcnt.

#include "avx512_isa.hpp"

namespace vecsect::backend {
namespace {

struct FastKernel {
  template <class G, class Reg, class Lane>
  static Mask apply(Reg a, Reg b, const Lane*) {
    using W = VecFor<G>;
    constexpr std::size_t kBlocks = G::blocks;
    constexpr std::size_t kBlockLanes = G::block_lanes;
    constexpr std::size_t kLaneBytes = G::lane_bits / 8;

    std::array<Reg, kBlocks> ar;
    unroll<kBlocks>([&](auto i) {
      if constexpr (i == 0) ar[0] = a;
      else ar[i] = W::template rotate_blocks<i>(a);
    });
    std::array<Reg, kBlockLanes> br;
    unroll<kBlockLanes>([&](auto j) {
      if constexpr (j == 0) br[0] = b;
      else br[j] = W::template rotate_within<j * kLaneBytes>(b);
    });

    // One not-equal chain per rotation of a; chains are independent.
    std::array<Mask, kBlocks> chain;
    chain.fill(G::full_mask);
    unroll<kBlockLanes>([&](auto j) {
      unroll<kBlocks>([&](auto i) { chain[i] = W::cmpneq(chain[i], ar[i], br[j]); });
    });

    Mask acc = G::full_mask;
    unroll<kBlocks>([&](auto i) { acc &= rotl<G::lanes>(chain[i], i * kBlockLanes); });
    return ~acc & G::full_mask;
  }
};

struct NaiveKernel {
  template <class G, class Reg, class Lane>
  static Mask apply(Reg a, Reg b, const Lane*) {
    using W = VecFor<G>;
    Mask m = 0;
    unroll<G::lanes>([&](auto j) { m |= W::cmpeq(a, W::broadcast_lane(b, j)); });
    return m;
  }
};

struct MemoryKernel {
  template <class G, class Reg, class Lane>
  static Mask apply(Reg a, Reg, const Lane* b_mem) {
    using W = VecFor<G>;
    std::array<Mask, 3> chain;
    chain.fill(G::full_mask);
    unroll<G::lanes>([&](auto t) { chain[t % 3] = W::cmpneq(chain[t % 3], a, W::set1(b_mem[t])); });
    return ~(chain[0] & chain[1] & chain[2]) & G::full_mask;
  }
};

using Strict = Geometry<512, 32>;

RawMaskPair strict_both(__m512i a, __m512i b) {
  using W = VecFor<Strict>;
  const std::array<__m512i, 4> ar = {a, W::rotate_blocks<1>(a), W::rotate_blocks<2>(a), W::rotate_blocks<3>(a)};
  const std::array<__m512i, 4> br = {b, W::rotate_within<4>(b), W::rotate_within<8>(b), W::rotate_within<12>(b)};
  std::array<std::array<Mask, 4>, 4> m;
  unroll<4>([&](auto i) { unroll<4>([&](auto j) { m[i][j] = W::cmpeq(ar[i], br[j]); }); });

  const Mask ka = (m[0][0] | m[0][1] | m[0][2] | m[0][3]) | rotl<16>(m[1][0] | m[1][1] | m[1][2] | m[1][3], 4) |
                  rotl<16>(m[2][0] | m[2][1] | m[2][2] | m[2][3], 8) |
                  rotl<16>(m[3][0] | m[3][1] | m[3][2] | m[3][3], 12);

  const Mask m0 = m[0][0] | m[1][0] | m[2][0] | m[3][0];
  const Mask m1 = m[0][1] | m[1][1] | m[2][1] | m[3][1];
  const Mask m2 = m[0][2] | m[1][2] | m[2][2] | m[3][2];
  const Mask m3 = m[0][3] | m[1][3] | m[2][3] | m[3][3];
  const Mask kb = m0 | ((0x7777 & m1) << 1) | ((m1 >> 3) & 0x1111) | ((0x3333 & m2) << 2) | ((m2 >> 2) & 0x3333) |
                  ((m3 >> 1) & 0x7777) | ((m3 & 0x1111) << 3);
  return {ka, kb & 0xFFFF};
}

struct StrictFirstMask {
  template <class G, class Reg, class Lane>
  static Mask apply(Reg a, Reg b, const Lane*) {
    static_assert(std::is_same_v<G, Strict>);
    return strict_both(a, b).first;
  }
};

RawMaskPair strict_block(const std::uint32_t* a, const std::uint32_t* b) {
  return strict_both(_mm512_loadu_si512(a), _mm512_loadu_si512(b));
}

template <class G, class Result, class Make>
Result by_implementation(Implementation impl, Make make) {
  switch (impl) {
    case Implementation::emulated_fast: return make.template operator()<FastKernel>();
    case Implementation::emulated_naive: return make.template operator()<NaiveKernel>();
    case Implementation::emulated_memory: return make.template operator()<MemoryKernel>();
    case Implementation::strict:
      if constexpr (std::is_same_v<G, Strict>) return make.template operator()<StrictFirstMask>();
      else return Result{};
    default: return Result{};
  }
}

template <class Lane, class Result, class Make>
Result by_width(unsigned vector_bits, Make make) {
  constexpr unsigned kLaneBits = sizeof(Lane) * 8;
  switch (vector_bits) {
    case 512: return make.template operator()<Geometry<512, kLaneBits>>();
    case 256: return make.template operator()<Geometry<256, kLaneBits>>();
    case 128: return make.template operator()<Geometry<128, kLaneBits>>();
    default: return Result{};
  }
}

}  // namespace

bool built_with_avx512() noexcept { return true; }

template <class Lane>
LoopEntry<Lane> avx512_loop(unsigned vector_bits, Implementation impl) noexcept {
  return by_width<Lane, LoopEntry<Lane>>(vector_bits, [&]<class G>() {
    return by_implementation<G, LoopEntry<Lane>>(impl, []<class K>() { return make_entry<G, K>(); });
  });
}

template <class Lane>
BlockKernel<Lane> avx512_block_kernel(unsigned vector_bits, Implementation impl) noexcept {
  return by_width<Lane, BlockKernel<Lane>>(vector_bits, [&]<class G>() {
    return by_implementation<G, BlockKernel<Lane>>(impl, []<class K>() { return &block_kernel<G, K>; });
  });
}

StrictKernel avx512_strict_kernel() noexcept { return &strict_block; }

template LoopEntry<std::uint16_t> avx512_loop<std::uint16_t>(unsigned, Implementation) noexcept;
template LoopEntry<std::uint32_t> avx512_loop<std::uint32_t>(unsigned, Implementation) noexcept;
template LoopEntry<std::uint64_t> avx512_loop<std::uint64_t>(unsigned, Implementation) noexcept;
template BlockKernel<std::uint16_t> avx512_block_kernel<std::uint16_t>(unsigned, Implementation) noexcept;
template BlockKernel<std::uint32_t> avx512_block_kernel<std::uint32_t>(unsigned, Implementation) noexcept;
template BlockKernel<std::uint64_t> avx512_block_kernel<std::uint64_t>(unsigned, Implementation) noexcept;

}  // namespace vecsect::backend
