#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "vecsect/driver.hpp"
#include "vecsect/run_file.hpp"

using namespace vecsect;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "vecsect");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("vecsect_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("size of two generated disjoint runs is 0") {
    TempDir dir;
    const auto gen = run({"gen", "--len-a", "3000", "--len-b", "2000", "--overlap", "0", "--out", dir / "w"});
    REQUIRE(gen.code == 0);
    CHECK(gen.out == "0\n");
    const auto size = run({"size", dir / "w.a", dir / "w.b"});
    CHECK(size.code == 0);
    CHECK(size.out == "0\n");
  }

  TEST_CASE("intersect of a file with itself reproduces its payload") {
    TempDir dir;
    REQUIRE(run({"gen", "--geometry", "256x64", "--len-a", "5000", "--len-b", "10", "--out", dir / "w"}).code == 0);
    const auto r = run({"intersect", dir / "w.a", dir / "w.a", "--out", dir / "self"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "5000\n");
    CHECK(slurp(dir / "self") == slurp(dir / "w.a"));
  }

  TEST_CASE("intersect matches the library for every implementation name") {
    TempDir dir;
    REQUIRE(run({"gen", "--seed", "11", "--len-a", "4000", "--len-b", "6000", "--overlap", "0.3", "--out",
                 dir / "w"})
                .code == 0);
    const auto a = read_run_file(dir / "w.a"), b = read_run_file(dir / "w.b");
    const auto g = KernelGeometry::make(512, 32);
    const auto want = intersect_runs(a, b, g, Implementation::scalar).values;
    for (std::string impl : {"auto", "fast", "naive", "memory", "strict", "scalar", "native"}) {
      INFO(impl);
      const auto r = run({"intersect", dir / "w.a", dir / "w.b", "--impl", impl, "--out", dir / "x"});
      const bool runnable = impl == "auto" || is_selectable({g, parse_implementation(impl)}, detect_capabilities());
      if (runnable) {
        REQUIRE(r.code == 0);
        CHECK(read_run_file(dir / "x") == want);
        CHECK(r.out == std::to_string(want.size()) + "\n");
      } else {
        CHECK(r.code == 1);
        CHECK(r.err.find("cannot run") != std::string::npos);
      }
    }
  }

  TEST_CASE("malformed run file is a validation error with its offset") {
    TempDir dir;
    REQUIRE(run({"gen", "--len-a", "100", "--len-b", "100", "--out", dir / "w"}).code == 0);
    auto bytes = slurp(dir / "w.a");
    bytes[16 + 4 * 10] = bytes[16 + 4 * 9];
    bytes[16 + 4 * 10 + 1] = bytes[16 + 4 * 9 + 1];
    bytes[16 + 4 * 10 + 2] = bytes[16 + 4 * 9 + 2];
    bytes[16 + 4 * 10 + 3] = bytes[16 + 4 * 9 + 3];
    std::ofstream(dir / "bad", std::ios::binary) << bytes;
    const auto r = run({"size", dir / "bad", dir / "w.b"});
    CHECK(r.code == 1);
    CHECK(r.err.find("offset 56") != std::string::npos);
  }

  TEST_CASE("usage errors exit 1 before any work") {
    TempDir dir;
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"gen", "--overlap", "1.5", "--out", dir / "w"}).code == 1);
    CHECK_FALSE(fs::exists(dir / "w.a"));
    CHECK(run({"gen", "--geometry", "512x8", "--out", dir / "w"}).code == 1);
    CHECK(run({"size", dir / "missing.a", dir / "missing.b"}).code == 1);
    CHECK(run({"bench", "--format", "xml"}).code == 1);
    CHECK(run({"bench", "--impl", "turbo"}).code == 1);
    CHECK(run({"gen", "--geometry", "128x16", "--len-a", "60000", "--len-b", "60000", "--overlap", "0", "--out",
               dir / "w"})
              .code == 1);
  }

  TEST_CASE("mismatched geometry and file lane width") {
    TempDir dir;
    REQUIRE(run({"gen", "--geometry", "512x64", "--len-a", "50", "--len-b", "50", "--out", dir / "w"}).code == 0);
    CHECK(run({"size", dir / "w.a", dir / "w.b"}).code == 0);
    CHECK(run({"size", dir / "w.a", dir / "w.b", "--geometry", "512x32"}).code == 1);
    CHECK(run({"size", dir / "w.a", dir / "w.b", "--geometry", "128x64"}).code == 0);
  }

  TEST_CASE("bench emits a nine-row table") {
    const auto r = run({"bench", "--len-a", "8000", "--len-b", "8000", "--reps", "2"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::vector<std::string> rows;
    for (std::string line; std::getline(in, line);) rows.push_back(line);
    REQUIRE(rows.size() >= 10);
    for (std::size_t i = 0; i < 9; ++i) CHECK(rows[1 + i].rfind(kAllGeometries[i].name(), 0) == 0);

    const auto csv = run({"bench", "--geometry", "128x64", "--len-a", "8000", "--len-b", "8000", "--reps", "2",
                          "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("vector_bits,lane_bits,", 0) == 0);
    CHECK(csv.out.find("\r\n128,64,") != std::string::npos);
  }

  TEST_CASE("selftest passes") {
    const auto r = run({"selftest", "--pairs", "2000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("selftest: PASS") != std::string::npos);
  }
}
