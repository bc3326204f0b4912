#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include "vecsect/error.hpp"

namespace vecsect {

/// Intersection masks are at most 32 lanes wide (512-bit vectors of 16-bit lanes).
using Mask = std::uint32_t;

template <unsigned LaneBits>
struct lane_for;
template <>
struct lane_for<16> {
  using type = std::uint16_t;
};
template <>
struct lane_for<32> {
  using type = std::uint32_t;
};
template <>
struct lane_for<64> {
  using type = std::uint64_t;
};

template <unsigned LaneBits>
using lane_t = typename lane_for<LaneBits>::type;

/// Runtime description of a (vector width, lane width) pair. Only the nine
/// combinations of {128, 256, 512} x {16, 32, 64} can be constructed.
class KernelGeometry {
 public:
  /// Throws UnsupportedGeometry for anything outside the nine valid pairs.
  static KernelGeometry make(unsigned vector_bits, unsigned lane_bits);

  /// Parses "512x32" style names.
  static KernelGeometry parse(std::string_view text);

  constexpr unsigned vector_bits() const noexcept { return vector_bits_; }
  constexpr unsigned lane_bits() const noexcept { return lane_bits_; }
  constexpr std::size_t lane_count() const noexcept { return vector_bits_ / lane_bits_; }
  constexpr std::size_t block_lane_count() const noexcept { return 128 / lane_bits_; }
  constexpr std::size_t block_count() const noexcept { return vector_bits_ / 128; }

  constexpr Mask full_mask() const noexcept {
    return lane_count() >= 32 ? ~Mask{0} : (Mask{1} << lane_count()) - 1;
  }

  std::string name() const;

  friend constexpr bool operator==(KernelGeometry, KernelGeometry) = default;

 private:
  template <unsigned, unsigned>
  friend struct Geometry;

  constexpr KernelGeometry(unsigned vector_bits, unsigned lane_bits) noexcept
      : vector_bits_(vector_bits), lane_bits_(lane_bits) {}

  unsigned vector_bits_;
  unsigned lane_bits_;
};

/// Compile-time twin of KernelGeometry; the kernels are templates over this.
template <unsigned VectorBits, unsigned LaneBits>
struct Geometry {
  static_assert(VectorBits == 128 || VectorBits == 256 || VectorBits == 512);
  static_assert(LaneBits == 16 || LaneBits == 32 || LaneBits == 64);

  using lane_type = lane_t<LaneBits>;

  static constexpr unsigned vector_bits = VectorBits;
  static constexpr unsigned lane_bits = LaneBits;
  static constexpr std::size_t lanes = VectorBits / LaneBits;
  static constexpr std::size_t block_lanes = 128 / LaneBits;
  static constexpr std::size_t blocks = VectorBits / 128;
  static constexpr Mask full_mask = lanes >= 32 ? ~Mask{0} : (Mask{1} << lanes) - 1;

  static_assert(lanes == blocks * block_lanes);

  static constexpr KernelGeometry runtime() noexcept { return KernelGeometry{VectorBits, LaneBits}; }
};

/// The nine geometries in report order: vector width descending, lane width ascending.
inline constexpr std::array<KernelGeometry, 9> kAllGeometries = {
    Geometry<512, 16>::runtime(), Geometry<512, 32>::runtime(), Geometry<512, 64>::runtime(),
    Geometry<256, 16>::runtime(), Geometry<256, 32>::runtime(), Geometry<256, 64>::runtime(),
    Geometry<128, 16>::runtime(), Geometry<128, 32>::runtime(), Geometry<128, 64>::runtime(),
};

/// Calls fn(Geometry<V, L>{}) for the compile-time geometry matching g.
template <class Fn>
decltype(auto) visit_geometry(KernelGeometry g, Fn&& fn) {
  switch (g.vector_bits() * 100 + g.lane_bits()) {
    case 51216: return std::forward<Fn>(fn)(Geometry<512, 16>{});
    case 51232: return std::forward<Fn>(fn)(Geometry<512, 32>{});
    case 51264: return std::forward<Fn>(fn)(Geometry<512, 64>{});
    case 25616: return std::forward<Fn>(fn)(Geometry<256, 16>{});
    case 25632: return std::forward<Fn>(fn)(Geometry<256, 32>{});
    case 25664: return std::forward<Fn>(fn)(Geometry<256, 64>{});
    case 12816: return std::forward<Fn>(fn)(Geometry<128, 16>{});
    case 12832: return std::forward<Fn>(fn)(Geometry<128, 32>{});
    default: return std::forward<Fn>(fn)(Geometry<128, 64>{});
  }
}

/// Calls fn(std::integral_constant<unsigned, LaneBits>{}) for a lane width.
template <class Fn>
decltype(auto) visit_lane_bits(unsigned lane_bits, Fn&& fn) {
  switch (lane_bits) {
    case 16: return std::forward<Fn>(fn)(std::integral_constant<unsigned, 16>{});
    case 32: return std::forward<Fn>(fn)(std::integral_constant<unsigned, 32>{});
    case 64: return std::forward<Fn>(fn)(std::integral_constant<unsigned, 64>{});
    default: throw UnsupportedGeometry("lane width must be 16, 32 or 64, got " + std::to_string(lane_bits));
  }
}

}  // namespace vecsect
