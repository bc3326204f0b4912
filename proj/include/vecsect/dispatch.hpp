#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "vecsect/geometry.hpp"

namespace vecsect {

enum class Implementation : std::uint8_t {
  native,           // the hardware two-way intersect instruction
  emulated_fast,    // rotation + chained not-equal kernel on vector registers
  emulated_naive,   // broadcast every lane of b, compare, OR
  emulated_memory,  // broadcast from memory, three interleaved chains
  strict,           // both masks on vector registers (512x32 only)
  scalar,           // portable build of the fast kernel
};

inline constexpr Implementation kAllImplementations[] = {
    Implementation::native,   Implementation::emulated_fast, Implementation::emulated_naive,
    Implementation::emulated_memory, Implementation::strict, Implementation::scalar,
};

std::string_view to_string(Implementation impl) noexcept;
/// Accepts the enum spellings and the CLI short forms (fast, naive, memory).
Implementation parse_implementation(std::string_view text);

/// Vector widths here mean the mask-register compare ISA at that width
/// (AVX-512 F/BW/DQ, plus VL below 512 bits), not plain SSE/AVX2.
struct CapabilitySet {
  bool has_512bit_vectors = false;
  bool has_256bit_vectors = false;
  bool has_128bit_vectors = false;
  bool has_native_2intersect = false;

  bool has_vectors(unsigned vector_bits) const noexcept {
    switch (vector_bits) {
      case 512: return has_512bit_vectors;
      case 256: return has_256bit_vectors;
      case 128: return has_128bit_vectors;
      default: return false;
    }
  }

  static constexpr CapabilitySet none() noexcept { return {}; }
  static constexpr CapabilitySet all() noexcept { return {true, true, true, true}; }

  friend constexpr bool operator==(const CapabilitySet&, const CapabilitySet&) = default;
};

enum class Policy : std::uint8_t { automatic, force_native, force_emulated, force_scalar };

struct KernelChoice {
  KernelGeometry geometry;
  Implementation implementation;

  friend constexpr bool operator==(const KernelChoice&, const KernelChoice&) = default;
};

inline constexpr std::string_view kForceEnvVar = "VECSECT_FORCE";

/// What the CPU and OS support. Queried once per process.
CapabilitySet detect_hardware_capabilities();

/// Hardware capabilities, or the empty set when VECSECT_FORCE=scalar.
/// Resolved once per process.
CapabilitySet detect_capabilities();

/// Pure form of detect_capabilities for a given hardware set and override.
CapabilitySet apply_override(const CapabilitySet& hardware, std::optional<Policy> forced) noexcept;

/// Parses VECSECT_FORCE; nullopt when unset or empty. Unknown values throw
/// InvalidArgument.
std::optional<Policy> policy_from_environment();
std::optional<Policy> parse_force_value(std::string_view value);

/// The environment override wins over `requested`.
Policy effective_policy(Policy requested);

KernelChoice select_kernel(KernelGeometry geometry, Policy policy, const CapabilitySet& caps);

bool is_selectable(KernelChoice choice, const CapabilitySet& caps) noexcept;

/// Throws UnsupportedGeometry (no such kernel for the geometry) or
/// UnsupportedCapability (kernel exists, CPU lacks it).
void require_selectable(KernelChoice choice, const CapabilitySet& caps);

/// True when the time-stamp counter runs at a constant rate across P-states.
bool has_invariant_tsc() noexcept;

}  // namespace vecsect
