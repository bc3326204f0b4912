#include "vecsect/lane_vector.hpp"

#include <string>

namespace vecsect {

namespace {

std::uint64_t lane_limit(KernelGeometry g) {
  return g.lane_bits() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.lane_bits()) - 1;
}

}  // namespace

LaneVector::LaneVector(KernelGeometry geometry, std::span<const std::uint64_t> lanes) : geometry_(geometry) {
  if (lanes.size() != geometry.lane_count())
    throw InvalidArgument(geometry.name() + " vector needs " + std::to_string(geometry.lane_count()) +
                          " lanes, got " + std::to_string(lanes.size()));
  const auto limit = lane_limit(geometry);
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    if (lanes[i] > limit)
      throw InvalidArgument("lane " + std::to_string(i) + " value " + std::to_string(lanes[i]) + " exceeds " +
                            std::to_string(geometry.lane_bits()) + " bits");
    lanes_[i] = lanes[i];
  }
}

LaneVector LaneVector::iota(KernelGeometry geometry, std::uint64_t first, std::uint64_t step) {
  std::array<std::uint64_t, 32> values{};
  for (std::size_t i = 0; i < geometry.lane_count(); ++i) values[i] = first + i * step;
  return LaneVector(geometry, std::span<const std::uint64_t>(values.data(), geometry.lane_count()));
}

IntersectMask::IntersectMask(KernelGeometry geometry, Mask bits) : geometry_(geometry), bits_(bits) {
  if ((bits & ~geometry.full_mask()) != 0)
    throw InvalidArgument("mask has bits set beyond lane " + std::to_string(geometry.lane_count() - 1));
}

}  // namespace vecsect
