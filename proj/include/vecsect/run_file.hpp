#pragma once

// Binary run files, little-endian throughout:
//   offset 0   char[4]  magic "VSEC"
//   offset 4   u16      version (1)
//   offset 6   u16      lane_bits (16, 32 or 64)
//   offset 8   u64      count
//   offset 16  count lanes of lane_bits each

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "vecsect/driver.hpp"

namespace vecsect {

inline constexpr char kRunMagic[4] = {'V', 'S', 'E', 'C'};
inline constexpr std::uint16_t kRunVersion = 1;
inline constexpr std::size_t kRunHeaderBytes = 16;

void write_run(std::ostream& out, const SortedRun& run);

/// Streams the payload and validates as it goes. Any defect (bad magic,
/// version or lane width, truncated payload, trailing bytes, a value not
/// above its predecessor) throws ValidationError carrying the byte offset.
SortedRun read_run(std::istream& in);

void write_run_file(const std::filesystem::path& path, const SortedRun& run);
SortedRun read_run_file(const std::filesystem::path& path);

}  // namespace vecsect
