#include "vecsect/selftest.hpp"

#include <algorithm>
#include <iterator>
#include <random>

#include "vecsect/backend.hpp"
#include "vecsect/datagen.hpp"
#include "vecsect/driver.hpp"
#include "vecsect/kernels.hpp"

namespace vecsect {

namespace {

template <class G>
Block<G> random_block(std::mt19937_64& rng, std::uint64_t base) {
  Block<G> v;
  for (auto& lane : v) lane = static_cast<typename G::lane_type>(base + (rng() & 7));
  return v;
}

template <class G>
std::size_t portable_mismatches(std::mt19937_64& rng, std::size_t pairs) {
  std::size_t bad = 0;
  for (std::size_t n = 0; n < pairs; ++n) {
    const std::uint64_t base = rng();
    const auto a = random_block<G>(rng, base);
    const auto b = random_block<G>(rng, base);
    const Mask want = portable::oracle_two_masks<G>(a, b).first;
    const Mask or_form = portable::fast_first_mask_or_combined<G>(a, b);
    const Mask and_form = ~portable::fast_chained_conjunction<G>(a, b) & G::full_mask;
    bad += portable::naive_first_mask<G>(a, b) != want || portable::fast_first_mask<G>(a, b) != want ||
           portable::memory_first_mask<G>(a, BlockSpan<G>(b)) != want || or_form != want || and_form != want;
  }
  return bad;
}

template <class G>
std::size_t vector_mismatches(std::mt19937_64& rng, std::size_t pairs, backend::BlockKernel<typename G::lane_type> k) {
  std::size_t bad = 0;
  for (std::size_t n = 0; n < pairs; ++n) {
    const std::uint64_t base = rng();
    const auto a = random_block<G>(rng, base);
    const auto b = random_block<G>(rng, base);
    bad += k(a.data(), b.data()) != portable::oracle_two_masks<G>(a, b).first;
  }
  return bad;
}

std::size_t exhaustive_128x32() {
  using G = Geometry<128, 32>;
  std::size_t bad = 0;
  for (std::uint32_t x = 0; x < 256; ++x) {
    const Block<G> a = {x & 3, (x >> 2) & 3, (x >> 4) & 3, (x >> 6) & 3};
    for (std::uint32_t y = 0; y < 256; ++y) {
      const Block<G> b = {y & 3, (y >> 2) & 3, (y >> 4) & 3, (y >> 6) & 3};
      const Mask want = portable::oracle_two_masks<G>(a, b).first;
      bad += portable::fast_first_mask<G>(a, b) != want || portable::naive_first_mask<G>(a, b) != want ||
             portable::memory_first_mask<G>(a, BlockSpan<G>(b)) != want;
    }
  }
  return bad;
}

SelftestCheck check(std::string name, std::size_t mismatches, std::size_t total) {
  return {std::move(name), mismatches == 0,
          std::to_string(mismatches) + " mismatches in " + std::to_string(total) + " cases"};
}

std::size_t driver_mismatches(KernelGeometry g, Implementation impl, const SelftestOptions& options) {
  std::size_t bad = 0;
  for (std::size_t w = 0; w < options.workloads; ++w) {
    static constexpr double kOverlaps[] = {0.0, 0.01, 0.5, 1.0};
    WorkloadSpec spec;
    spec.seed = options.seed * 1000003 + w;
    spec.lane_bits = g.lane_bits();
    spec.len_a = (w * 7919) % 3000;
    spec.len_b = (w * 104729) % 3000;
    spec.overlap_fraction = kOverlaps[w % 4];
    spec.universe_max = 4 * (spec.len_a + spec.len_b) + 64;
    const auto work = generate_runs(spec);

    const auto xs = work.a.widened(), ys = work.b.widened();
    std::vector<std::uint64_t> want;
    std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(want));

    const auto got = intersect_runs(work.a, work.b, g, impl);
    bad += got.values.widened() != want || got.count != want.size() ||
           intersect_size(work.a, work.b, g, impl) != want.size() || want.size() != work.expected_intersection_size;
  }
  return bad;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options, const CapabilitySet& caps) {
  std::vector<SelftestCheck> out;
  std::mt19937_64 rng(options.seed);

  for (const auto g : kAllGeometries) {
    visit_geometry(g, [&]<class G>(G) {
      out.push_back(check("portable kernels vs oracle " + g.name(), portable_mismatches<G>(rng, options.random_pairs),
                          options.random_pairs));
    });
  }
  out.push_back(check("exhaustive 128x32, 4 symbols", exhaustive_128x32(), 65536));

  {
    using G = Geometry<512, 32>;
    std::size_t bad = 0;
    const auto vector_strict = caps.has_512bit_vectors ? backend::avx512_strict_kernel() : nullptr;
    for (std::size_t n = 0; n < options.random_pairs; ++n) {
      const std::uint64_t base = rng() & 0xFFFF0000u;
      const auto a = random_block<G>(rng, base);
      const auto b = random_block<G>(rng, base);
      const auto want = portable::oracle_two_masks<G>(a, b);
      bad += portable::strict_two_masks<G>(a, b) != want;
      if (vector_strict) bad += vector_strict(a.data(), b.data()) != want;
    }
    out.push_back(check("strict two masks 512x32", bad, options.random_pairs));
  }

  for (const auto g : kAllGeometries) {
    for (const auto impl : kAllImplementations) {
      if (impl == Implementation::scalar || !is_selectable({g, impl}, caps)) continue;
      visit_geometry(g, [&]<class G>(G) {
        using Lane = typename G::lane_type;
        const auto k = impl == Implementation::native ? backend::native_block_kernel<Lane>(g.vector_bits())
                                                      : backend::avx512_block_kernel<Lane>(g.vector_bits(), impl);
        if (k == nullptr) return;
        out.push_back(check(std::string(to_string(impl)) + " vector kernel vs oracle " + g.name(),
                            vector_mismatches<G>(rng, options.random_pairs, k), options.random_pairs));
      });
    }
  }

  for (const auto g : kAllGeometries) {
    for (const auto impl : kAllImplementations) {
      if (!is_selectable({g, impl}, caps)) continue;
      out.push_back(check("driver " + std::string(to_string(impl)) + " vs merge " + g.name(),
                          driver_mismatches(g, impl, options), options.workloads));
    }
  }
  return out;
}

}  // namespace vecsect
