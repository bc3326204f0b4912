// Runs the driver differential workloads in an AddressSanitizer build, so any
// load past the end of an input run aborts the process. With --probe it
// deliberately over-reads instead, to show the instrumentation would notice.

#include <cstdio>
#include <cstring>
#include <memory>

#include "support/oracles.hpp"
#include "vecsect/backend.hpp"
#include "vecsect/driver.hpp"

using namespace vecsect;

namespace {

int probe(const char* kind) {
  using G = Geometry<512, 32>;
  // Half a block on the heap; a full-block load must overflow it.
  auto half = std::make_unique<std::uint32_t[]>(G::lanes / 2);
  for (std::size_t i = 0; i < G::lanes / 2; ++i) half[i] = static_cast<std::uint32_t>(i);
  const std::uint32_t* p = half.get();
  Mask m = 0;
  if (std::strcmp(kind, "vector") == 0) {
    const auto k = backend::avx512_block_kernel<std::uint32_t>(512, Implementation::emulated_fast);
    if (k == nullptr || !detect_capabilities().has_512bit_vectors) {
      std::puts("no 512-bit vector kernel here");
      return 3;
    }
    m = k(p, p);
  } else {
    auto kernel = [](const Block<G>& a, const Block<G>& b, BlockSpan<G>) { return portable::fast_first_mask<G>(a, b); };
    // Claims a full block where only half exists.
    m = static_cast<Mask>(intersect_blocks<G>(std::span(p, G::lanes), std::span(p, G::lanes), nullptr, kernel).count);
  }
  std::printf("over-read went unnoticed (%u)\n", m);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::strcmp(argv[1], "--probe") == 0) return probe(argv[2]);

  const std::size_t workloads = argc == 2 ? std::strtoul(argv[1], nullptr, 10) : testing::kDriverWorkloads;
  const auto caps = detect_capabilities();
  std::size_t runs = 0, failures = 0;
  for (std::size_t i = 0; i < workloads; ++i) {
    const auto spec = testing::driver_workload(i);
    const auto w = generate_runs(spec);
    const auto want = testing::merge_intersection(w.a.widened(), w.b.widened());
    for (auto g : kAllGeometries) {
      if (g.lane_bits() != spec.lane_bits) continue;
      for (auto impl : kAllImplementations) {
        if (!is_selectable({g, impl}, caps)) continue;
        const auto r = intersect_runs(w.a, w.b, g, impl);
        const bool ok = r.values.widened() == want && intersect_size(w.a, w.b, g, impl) == want.size();
        failures += !ok;
        ++runs;
        if (!ok) std::printf("mismatch: workload %zu %s %s\n", i, g.name().c_str(), to_string(impl).data());
      }
    }
  }
  std::printf("%zu driver runs over %zu workloads, %zu mismatches\n", runs, workloads, failures);
  return failures == 0 ? 0 : 1;
}
