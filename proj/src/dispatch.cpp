#include "vecsect/dispatch.hpp"

#include <cstdlib>
#include <string>

#include "vecsect/backend.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <cpuid.h>
#define VECSECT_X86 1
#endif

namespace vecsect {

std::string_view to_string(Implementation impl) noexcept {
  switch (impl) {
    case Implementation::native: return "native";
    case Implementation::emulated_fast: return "emulated_fast";
    case Implementation::emulated_naive: return "emulated_naive";
    case Implementation::emulated_memory: return "emulated_memory";
    case Implementation::strict: return "strict";
    case Implementation::scalar: return "scalar";
  }
  return "unknown";
}

Implementation parse_implementation(std::string_view text) {
  for (auto impl : kAllImplementations)
    if (text == to_string(impl)) return impl;
  if (text == "fast") return Implementation::emulated_fast;
  if (text == "naive") return Implementation::emulated_naive;
  if (text == "memory") return Implementation::emulated_memory;
  throw InvalidArgument("unknown implementation '" + std::string(text) + "'");
}

namespace {

#ifdef VECSECT_X86
std::uint64_t read_xcr0() {
  std::uint32_t eax = 0, edx = 0;
  __asm__ volatile("xgetbv" : "=a"(eax), "=d"(edx) : "c"(0));
  return (std::uint64_t{edx} << 32) | eax;
}
#endif

CapabilitySet probe_cpu() {
  CapabilitySet caps;
#ifdef VECSECT_X86
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return caps;
  const bool osxsave = ecx & (1u << 27);
  const bool popcnt = ecx & (1u << 23);
  if (!osxsave || !popcnt) return caps;
  // SSE, AVX, opmask, ZMM0-15 upper halves and ZMM16-31 all enabled by the OS.
  if ((read_xcr0() & 0xE6) != 0xE6) return caps;
  if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return caps;

  const bool f = ebx & (1u << 16);
  const bool dq = ebx & (1u << 17);
  const bool bw = ebx & (1u << 30);
  const bool vl = ebx & (1u << 31);
  const bool vp2intersect = edx & (1u << 8);

  if (backend::built_with_avx512()) {
    caps.has_512bit_vectors = f && bw && dq;
    caps.has_256bit_vectors = caps.has_512bit_vectors && vl;
    caps.has_128bit_vectors = caps.has_256bit_vectors;
  }
  caps.has_native_2intersect = caps.has_512bit_vectors && vp2intersect && backend::built_with_vp2intersect();
#endif
  return caps;
}

}  // namespace

CapabilitySet detect_hardware_capabilities() {
  static const CapabilitySet caps = probe_cpu();
  return caps;
}

std::optional<Policy> parse_force_value(std::string_view value) {
  if (value.empty()) return std::nullopt;
  if (value == "native") return Policy::force_native;
  if (value == "emulated") return Policy::force_emulated;
  if (value == "scalar") return Policy::force_scalar;
  throw InvalidArgument(std::string(kForceEnvVar) + " must be native, emulated or scalar, got '" +
                        std::string(value) + "'");
}

std::optional<Policy> policy_from_environment() {
  const char* value = std::getenv(std::string(kForceEnvVar).c_str());
  if (value == nullptr) return std::nullopt;
  return parse_force_value(value);
}

CapabilitySet apply_override(const CapabilitySet& hardware, std::optional<Policy> forced) noexcept {
  if (forced == Policy::force_scalar) return CapabilitySet::none();
  return hardware;
}

CapabilitySet detect_capabilities() {
  static const CapabilitySet caps = apply_override(detect_hardware_capabilities(), policy_from_environment());
  return caps;
}

Policy effective_policy(Policy requested) {
  if (auto forced = policy_from_environment()) return *forced;
  return requested;
}

bool is_selectable(KernelChoice choice, const CapabilitySet& caps) noexcept {
  const auto g = choice.geometry;
  const bool vectors = caps.has_vectors(g.vector_bits());
  switch (choice.implementation) {
    case Implementation::scalar: return true;
    case Implementation::native: return g.lane_bits() != 16 && vectors && caps.has_native_2intersect;
    case Implementation::strict: return g == Geometry<512, 32>::runtime() && vectors;
    case Implementation::emulated_fast:
    case Implementation::emulated_naive:
    case Implementation::emulated_memory: return vectors;
  }
  return false;
}

void require_selectable(KernelChoice choice, const CapabilitySet& caps) {
  const auto g = choice.geometry;
  const std::string what = std::string(to_string(choice.implementation)) + " kernel for " + g.name();
  if (choice.implementation == Implementation::native && g.lane_bits() == 16)
    throw UnsupportedGeometry("there is no native " + what);
  if (choice.implementation == Implementation::strict && g != Geometry<512, 32>::runtime())
    throw UnsupportedGeometry("there is no " + what);
  if (!is_selectable(choice, caps)) throw UnsupportedCapability("this CPU cannot run the " + what);
}

KernelChoice select_kernel(KernelGeometry geometry, Policy policy, const CapabilitySet& caps) {
  switch (policy) {
    case Policy::force_scalar: return {geometry, Implementation::scalar};
    case Policy::force_native: {
      const KernelChoice choice{geometry, Implementation::native};
      require_selectable(choice, caps);
      return choice;
    }
    case Policy::force_emulated: {
      const KernelChoice choice{geometry, Implementation::emulated_fast};
      require_selectable(choice, caps);
      return choice;
    }
    case Policy::automatic: break;
  }
  if (caps.has_vectors(geometry.vector_bits())) return {geometry, Implementation::emulated_fast};
  return {geometry, Implementation::scalar};
}

bool has_invariant_tsc() noexcept {
#ifdef VECSECT_X86
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (!__get_cpuid(0x80000007, &eax, &ebx, &ecx, &edx)) return false;
  return edx & (1u << 8);
#else
  return false;
#endif
}

}  // namespace vecsect
