#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "vecsect/backend.hpp"
#include "vecsect/dispatch.hpp"
#include "vecsect/error.hpp"

using namespace vecsect;

namespace {

const auto k512x32 = KernelGeometry::make(512, 32);
const auto k512x16 = KernelGeometry::make(512, 16);

// Sets VECSECT_FORCE for one scope.
class ScopedForce {
 public:
  explicit ScopedForce(const char* value) {
    if (const char* old = std::getenv("VECSECT_FORCE")) saved_ = old;
    if (value) setenv("VECSECT_FORCE", value, 1);
    else unsetenv("VECSECT_FORCE");
  }
  ~ScopedForce() {
    if (saved_) setenv("VECSECT_FORCE", saved_->c_str(), 1);
    else unsetenv("VECSECT_FORCE");
  }

 private:
  std::optional<std::string> saved_;
};

std::optional<std::string> cpuinfo_flags() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("flags", 0) == 0) return " " + line.substr(line.find(':') + 1) + " ";
  return std::nullopt;
}

}  // namespace

TEST_SUITE("dispatch") {
  TEST_CASE("select_kernel examples") {
    CHECK(select_kernel(k512x32, Policy::automatic, CapabilitySet::all()).implementation ==
          Implementation::emulated_fast);
    CHECK(select_kernel(k512x32, Policy::automatic, CapabilitySet::none()).implementation == Implementation::scalar);
    for (auto caps : {CapabilitySet::none(), CapabilitySet::all()}) {
      CHECK_THROWS_AS(select_kernel(k512x16, Policy::force_native, caps), UnsupportedGeometry);
      for (auto g : kAllGeometries)
        CHECK(select_kernel(g, Policy::force_scalar, caps) == KernelChoice{g, Implementation::scalar});
    }
    CHECK_THROWS_AS(select_kernel(k512x32, Policy::force_native, CapabilitySet::none()), UnsupportedCapability);
    CHECK(select_kernel(k512x32, Policy::force_native, CapabilitySet::all()).implementation == Implementation::native);
    CHECK_THROWS_AS(select_kernel(k512x32, Policy::force_emulated, CapabilitySet::none()), UnsupportedCapability);

    // Only 512-bit vectors: narrower geometries fall back to scalar.
    const CapabilitySet wide{true, false, false, false};
    CHECK(select_kernel(k512x32, Policy::automatic, wide).implementation == Implementation::emulated_fast);
    CHECK(select_kernel(KernelGeometry::make(256, 32), Policy::automatic, wide).implementation ==
          Implementation::scalar);
  }

  TEST_CASE("native needs the instruction and a 32- or 64-bit lane") {
    const CapabilitySet no_native{true, true, true, false};
    for (auto g : kAllGeometries) {
      CHECK(is_selectable({g, Implementation::native}, CapabilitySet::all()) == (g.lane_bits() != 16));
      CHECK_FALSE(is_selectable({g, Implementation::native}, no_native));
      CHECK(is_selectable({g, Implementation::scalar}, CapabilitySet::none()));
      CHECK(is_selectable({g, Implementation::strict}, CapabilitySet::all()) == (g == k512x32));
    }
  }

  TEST_CASE("select_kernel is a pure function of its arguments") {
    const CapabilitySet mixed{true, true, false, false};
    for (auto g : kAllGeometries)
      for (auto p : {Policy::automatic, Policy::force_scalar})
        CHECK(select_kernel(g, p, mixed) == select_kernel(g, p, mixed));
  }

  TEST_CASE("force values") {
    CHECK(parse_force_value("native") == Policy::force_native);
    CHECK(parse_force_value("emulated") == Policy::force_emulated);
    CHECK(parse_force_value("scalar") == Policy::force_scalar);
    CHECK(parse_force_value("") == std::nullopt);
    CHECK_THROWS_AS(parse_force_value("fast"), InvalidArgument);

    CHECK(apply_override(CapabilitySet::all(), Policy::force_scalar) == CapabilitySet::none());
    CHECK(apply_override(CapabilitySet::all(), Policy::force_emulated) == CapabilitySet::all());
    CHECK(apply_override(CapabilitySet::all(), std::nullopt) == CapabilitySet::all());
  }

  TEST_CASE("the environment overrides the requested policy") {
    {
      ScopedForce f(nullptr);
      CHECK(policy_from_environment() == std::nullopt);
      CHECK(effective_policy(Policy::automatic) == Policy::automatic);
    }
    {
      ScopedForce f("scalar");
      CHECK(effective_policy(Policy::automatic) == Policy::force_scalar);
      CHECK(apply_override(detect_hardware_capabilities(), policy_from_environment()) == CapabilitySet::none());
    }
    {
      ScopedForce f("bogus");
      CHECK_THROWS_AS(policy_from_environment(), InvalidArgument);
    }
  }

  TEST_CASE("capability detection is stable and consistent") {
    const auto caps = detect_capabilities();
    CHECK(caps == detect_capabilities());
    if (caps.has_native_2intersect) CHECK(caps.has_512bit_vectors);
    if (caps.has_128bit_vectors) CHECK(caps.has_256bit_vectors);
  }

  TEST_CASE("hardware detection agrees with the operating system") {
    const auto flags = cpuinfo_flags();
    if (!flags) {
      MESSAGE("/proc/cpuinfo not available; skipped");
      return;
    }
    auto has = [&](const char* f) { return flags->find(std::string(" ") + f + " ") != std::string::npos; };
    const bool wide = has("avx512f") && has("avx512bw") && has("avx512dq");
    const auto hw = detect_hardware_capabilities();
    CHECK(hw.has_512bit_vectors == (wide && backend::built_with_avx512()));
    CHECK(hw.has_256bit_vectors == (wide && has("avx512vl") && backend::built_with_avx512()));
    CHECK(hw.has_native_2intersect ==
          (hw.has_512bit_vectors && has("avx512_vp2intersect") && backend::built_with_vp2intersect()));
  }
}
