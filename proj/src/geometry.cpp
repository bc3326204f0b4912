#include "vecsect/geometry.hpp"

#include <charconv>

namespace vecsect {

KernelGeometry KernelGeometry::make(unsigned vector_bits, unsigned lane_bits) {
  const bool vector_ok = vector_bits == 128 || vector_bits == 256 || vector_bits == 512;
  const bool lane_ok = lane_bits == 16 || lane_bits == 32 || lane_bits == 64;
  if (!vector_ok || !lane_ok)
    throw UnsupportedGeometry("no kernel geometry " + std::to_string(vector_bits) + "x" + std::to_string(lane_bits));
  return KernelGeometry{vector_bits, lane_bits};
}

KernelGeometry KernelGeometry::parse(std::string_view text) {
  const auto x = text.find('x');
  if (x == std::string_view::npos)
    throw InvalidArgument("geometry must look like <vector_bits>x<lane_bits>, got '" + std::string(text) + "'");
  auto to_uint = [&](std::string_view part) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty())
      throw InvalidArgument("bad number '" + std::string(part) + "' in geometry '" + std::string(text) + "'");
    return v;
  };
  return make(to_uint(text.substr(0, x)), to_uint(text.substr(x + 1)));
}

std::string KernelGeometry::name() const {
  return std::to_string(vector_bits_) + "x" + std::to_string(lane_bits_);
}

}  // namespace vecsect
