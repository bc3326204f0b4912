#include "vecsect/kernels.hpp"

#include <string>

namespace vecsect {

namespace {

void require_same_geometry(const LaneVector& a, const LaneVector& b) {
  if (a.geometry() != b.geometry())
    throw InvalidArgument("geometry mismatch: " + a.geometry().name() + " vs " + b.geometry().name());
}

template <class Kernel>
IntersectMask first_mask(const LaneVector& a, const LaneVector& b, Kernel kernel) {
  require_same_geometry(a, b);
  return visit_geometry(a.geometry(), [&]<class G>(G) {
    return IntersectMask(a.geometry(), kernel.template operator()<G>(a.to_block<G>(), b.to_block<G>()));
  });
}

}  // namespace

MaskPair oracle_two_masks(const LaneVector& a, const LaneVector& b) {
  require_same_geometry(a, b);
  return visit_geometry(a.geometry(), [&]<class G>(G) {
    const auto raw = portable::oracle_two_masks<G>(a.to_block<G>(), b.to_block<G>());
    return MaskPair{IntersectMask(a.geometry(), raw.first), IntersectMask(a.geometry(), raw.second)};
  });
}

LaneVector rotate_blocks(const LaneVector& a, std::size_t k_blocks) {
  if (k_blocks >= a.geometry().block_count())
    throw InvalidArgument("block rotation " + std::to_string(k_blocks) + " out of range for " + a.geometry().name());
  return visit_geometry(a.geometry(), [&]<class G>(G) {
    return LaneVector::from_block<G>(portable::rotate_blocks<G>(a.to_block<G>(), k_blocks));
  });
}

LaneVector rotate_within_blocks(const LaneVector& b, std::size_t j_lanes) {
  if (j_lanes >= b.geometry().block_lane_count())
    throw InvalidArgument("within-block rotation " + std::to_string(j_lanes) + " out of range for " +
                          b.geometry().name());
  return visit_geometry(b.geometry(), [&]<class G>(G) {
    return LaneVector::from_block<G>(portable::rotate_within_blocks<G>(b.to_block<G>(), j_lanes));
  });
}

IntersectMask mask_rotate_left(const IntersectMask& m, std::size_t k) {
  if (k >= m.geometry().lane_count())
    throw InvalidArgument("mask rotation " + std::to_string(k) + " out of range for " + m.geometry().name());
  return visit_geometry(m.geometry(), [&]<class G>(G) {
    return IntersectMask(m.geometry(), portable::mask_rotate_left<G::lanes>(m.bits(), k));
  });
}

IntersectMask naive_first_mask(const LaneVector& a, const LaneVector& b) {
  return first_mask(a, b, []<class G>(const Block<G>& x, const Block<G>& y) {
    return portable::naive_first_mask<G>(x, y);
  });
}

IntersectMask fast_first_mask(const LaneVector& a, const LaneVector& b) {
  return first_mask(a, b, []<class G>(const Block<G>& x, const Block<G>& y) {
    return portable::fast_first_mask<G>(x, y);
  });
}

IntersectMask memory_first_mask(const LaneVector& a, MemoryOperand b) {
  const auto g = a.geometry();
  if (b.lanes.size() != g.lane_count())
    throw InvalidArgument("memory operand holds " + std::to_string(b.lanes.size()) + " lanes, " + g.name() +
                          " needs " + std::to_string(g.lane_count()));
  // Routes the range check on the window's values through LaneVector.
  const LaneVector window(g, b.lanes);
  return visit_geometry(g, [&]<class G>(G) {
    const auto block = window.to_block<G>();
    return IntersectMask(g, portable::memory_first_mask<G>(a.to_block<G>(), BlockSpan<G>(block)));
  });
}

MaskPair strict_two_masks(const LaneVector& a, const LaneVector& b) {
  require_same_geometry(a, b);
  using G = Geometry<512, 32>;
  if (a.geometry() != G::runtime())
    throw UnsupportedGeometry("strict emulation is only defined for 512x32, not " + a.geometry().name());
  const auto raw = portable::strict_two_masks<G>(a.to_block<G>(), b.to_block<G>());
  return MaskPair{IntersectMask(G::runtime(), raw.first), IntersectMask(G::runtime(), raw.second)};
}

}  // namespace vecsect
