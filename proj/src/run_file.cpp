#include "vecsect/run_file.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace vecsect {

namespace {

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(const unsigned char* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(T{p[i]} << (8 * i));
  return value;
}

// Payload is read in chunks so a bogus count cannot trigger a huge allocation
// before the data is seen.
constexpr std::size_t kChunkLanes = 1 << 14;

template <class Lane>
SortedRun read_payload(std::istream& in, std::uint64_t count) {
  std::vector<Lane> values;
  std::vector<unsigned char> chunk(kChunkLanes * sizeof(Lane));
  std::uint64_t offset = kRunHeaderBytes;
  std::uint64_t remaining = count;
  while (remaining > 0) {
    const std::size_t lanes = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kChunkLanes));
    in.read(reinterpret_cast<char*>(chunk.data()), static_cast<std::streamsize>(lanes * sizeof(Lane)));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got != lanes * sizeof(Lane))
      throw ValidationError("run file truncated: header promises " + std::to_string(count) + " lanes",
                            offset + got);
    for (std::size_t i = 0; i < lanes; ++i) {
      const Lane v = get_le<Lane>(chunk.data() + i * sizeof(Lane));
      if (!values.empty() && !(values.back() < v))
        throw ValidationError("run file is not strictly increasing: " + std::to_string(v) + " follows " +
                                  std::to_string(values.back()),
                              offset + i * sizeof(Lane));
      values.push_back(v);
    }
    offset += lanes * sizeof(Lane);
    remaining -= lanes;
  }
  if (in.peek() != std::char_traits<char>::eof())
    throw ValidationError("run file has bytes past its last lane", offset);
  return SortedRun(std::move(values));
}

}  // namespace

void write_run(std::ostream& out, const SortedRun& run) {
  out.write(kRunMagic, sizeof kRunMagic);
  put_le<std::uint16_t>(out, kRunVersion);
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(run.lane_bits()));
  put_le<std::uint64_t>(out, run.size());
  visit_lane_bits(run.lane_bits(), [&](auto bits) {
    using Lane = lane_t<decltype(bits)::value>;
    for (Lane v : run.values<Lane>()) put_le<Lane>(out, v);
  });
  if (!out) throw Error(Errc::invalid_argument, "failed to write run");
}

SortedRun read_run(std::istream& in) {
  std::array<unsigned char, kRunHeaderBytes> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got != header.size()) throw ValidationError("run file shorter than its 16-byte header", got);
  for (std::size_t i = 0; i < sizeof kRunMagic; ++i)
    if (header[i] != static_cast<unsigned char>(kRunMagic[i]))
      throw ValidationError("bad magic, expected \"VSEC\"", i);
  const auto version = get_le<std::uint16_t>(header.data() + 4);
  if (version != kRunVersion) throw ValidationError("unsupported run file version " + std::to_string(version), 4);
  const auto lane_bits = get_le<std::uint16_t>(header.data() + 6);
  const auto count = get_le<std::uint64_t>(header.data() + 8);
  switch (lane_bits) {
    case 16: return read_payload<std::uint16_t>(in, count);
    case 32: return read_payload<std::uint32_t>(in, count);
    case 64: return read_payload<std::uint64_t>(in, count);
    default: throw ValidationError("unsupported lane width " + std::to_string(lane_bits), 6);
  }
}

void write_run_file(const std::filesystem::path& path, const SortedRun& run) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  write_run(out, run);
}

SortedRun read_run_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  try {
    return read_run(in);
  } catch (const ValidationError& e) {
    // Keep the offset, name the file.
    const std::string what = e.what();
    throw ValidationError(path.string() + ": " + what.substr(0, what.rfind(" (at offset")), e.offset());
  }
}

}  // namespace vecsect
