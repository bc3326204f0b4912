#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

#include "vecsect/geometry.hpp"

namespace vecsect {

/// Register-sized vector of unsigned lanes, index 0 being the lowest lane.
/// Lane values are stored widened to 64 bits; construction rejects values
/// that do not fit the geometry's lane width.
class LaneVector {
 public:
  LaneVector(KernelGeometry geometry, std::span<const std::uint64_t> lanes);
  LaneVector(KernelGeometry geometry, std::initializer_list<std::uint64_t> lanes)
      : LaneVector(geometry, std::span<const std::uint64_t>(lanes.begin(), lanes.size())) {}

  /// Lanes 0, 1, ..., L-1 shifted by first.
  static LaneVector iota(KernelGeometry geometry, std::uint64_t first = 0, std::uint64_t step = 1);

  KernelGeometry geometry() const noexcept { return geometry_; }
  std::size_t size() const noexcept { return geometry_.lane_count(); }
  std::span<const std::uint64_t> lanes() const noexcept { return {lanes_.data(), size()}; }
  std::uint64_t operator[](std::size_t i) const noexcept { return lanes_[i]; }

  /// Copies the lanes into a typed block for the compile-time kernels.
  template <class G>
  std::array<typename G::lane_type, G::lanes> to_block() const noexcept {
    std::array<typename G::lane_type, G::lanes> out{};
    for (std::size_t i = 0; i < G::lanes; ++i) out[i] = static_cast<typename G::lane_type>(lanes_[i]);
    return out;
  }

  template <class G>
  static LaneVector from_block(const std::array<typename G::lane_type, G::lanes>& block) noexcept {
    LaneVector v(G::runtime());
    for (std::size_t i = 0; i < G::lanes; ++i) v.lanes_[i] = block[i];
    return v;
  }

  friend bool operator==(const LaneVector& x, const LaneVector& y) noexcept {
    if (x.geometry_ != y.geometry_) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x.lanes_[i] != y.lanes_[i]) return false;
    return true;
  }

 private:
  explicit LaneVector(KernelGeometry geometry) noexcept : geometry_(geometry) {}

  KernelGeometry geometry_;
  std::array<std::uint64_t, 32> lanes_{};
};

/// L-bit mask; bit i refers to lane i of the vector it was computed for.
class IntersectMask {
 public:
  /// Throws InvalidArgument when bits has anything set at or above bit L.
  IntersectMask(KernelGeometry geometry, Mask bits);

  KernelGeometry geometry() const noexcept { return geometry_; }
  Mask bits() const noexcept { return bits_; }
  bool test(std::size_t lane) const noexcept { return (bits_ >> lane) & 1u; }

  friend bool operator==(const IntersectMask&, const IntersectMask&) = default;

 private:
  KernelGeometry geometry_;
  Mask bits_;
};

struct MaskPair {
  IntersectMask first;
  IntersectMask second;

  friend bool operator==(const MaskPair&, const MaskPair&) = default;
};

/// Read-only window of lanes that the in-memory kernel broadcasts from
/// directly instead of loading a register first. The kernel checks that the
/// window holds exactly L lanes.
struct MemoryOperand {
  std::span<const std::uint64_t> lanes;
};

}  // namespace vecsect
