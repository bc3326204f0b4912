#include <doctest.h>

#include <numeric>

#include "support/oracles.hpp"
#include "vecsect/datagen.hpp"
#include "vecsect/driver.hpp"
#include "vecsect/error.hpp"

using namespace vecsect;

namespace {

std::vector<std::uint32_t> range32(std::uint32_t first, std::uint32_t last) {
  std::vector<std::uint32_t> v(last - first + 1);
  std::iota(v.begin(), v.end(), first);
  return v;
}

std::vector<Implementation> selectable(KernelGeometry g) {
  std::vector<Implementation> out;
  for (auto impl : kAllImplementations)
    if (is_selectable({g, impl}, detect_capabilities())) out.push_back(impl);
  return out;
}

const auto k512x32 = KernelGeometry::make(512, 32);

}  // namespace

TEST_SUITE("driver") {
  TEST_CASE("sorted runs reject anything but strict increase") {
    CHECK_NOTHROW(SortedRun(std::vector<std::uint32_t>{1, 2, 9}));
    try {
      SortedRun(std::vector<std::uint32_t>{1, 2, 2, 3});
      FAIL("accepted a duplicate");
    } catch (const ValidationError& e) {
      CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS(SortedRun(std::vector<std::uint16_t>{5, 4}), ValidationError);
    const std::vector<std::uint64_t> too_big = {1, 70000};
    CHECK_THROWS_AS(SortedRun::from_values(16, too_big), ValidationError);
    CHECK(SortedRun::from_values(64, too_big).lane_bits() == 64);
    CHECK_THROWS_AS(SortedRun::empty(8), UnsupportedGeometry);
    CHECK_THROWS_AS(SortedRun(range32(0, 3)).values<std::uint16_t>(), InvalidArgument);
  }

  TEST_CASE("advance counts") {
    const auto id = LaneVector::iota(k512x32);
    CHECK(advance_counts(id, id) == std::pair<std::size_t, std::size_t>{16, 16});
    CHECK(advance_counts(id, LaneVector::iota(k512x32, 100)) == std::pair<std::size_t, std::size_t>{16, 0});

    const auto evens = LaneVector::iota(k512x32, 0, 2);
    const auto mid = LaneVector::iota(k512x32, 5);
    // Scalar count of lanes <= the other block's last lane.
    std::size_t da = 0, db = 0;
    for (std::size_t i = 0; i < 16; ++i) {
      da += evens[i] <= mid[15];
      db += mid[i] <= evens[15];
    }
    CHECK(advance_counts(evens, mid) == std::pair{da, db});
    CHECK(advance_counts(evens, mid) == std::pair<std::size_t, std::size_t>{11, 16});
    CHECK_THROWS_AS(advance_counts(id, LaneVector::iota(KernelGeometry::make(128, 32))), InvalidArgument);
  }

  TEST_CASE("scalar tail") {
    std::vector<std::uint32_t> out(3);
    const std::vector<std::uint32_t> x = {1, 2, 3}, y = {2, 3, 4};
    CHECK(scalar_tail_intersect(std::span<const std::uint32_t>(x), std::span<const std::uint32_t>(y), out.data()) == 2);
    CHECK(out[0] == 2);
    CHECK(out[1] == 3);
    CHECK(scalar_tail_intersect(std::span<const std::uint32_t>{}, std::span<const std::uint32_t>(y), nullptr) == 0);
  }

  TEST_CASE("examples through every selectable implementation") {
    const SortedRun a(range32(1, 100)), b(range32(50, 150));
    const auto want = SortedRun(range32(50, 100));
    for (auto impl : selectable(k512x32)) {
      INFO(to_string(impl));
      const auto r = intersect_runs(a, b, k512x32, impl);
      CHECK(r.values == want);
      CHECK(r.count == 51);
      CHECK(intersect_runs(a, a, k512x32, impl).values == a);
      CHECK(intersect_size(a, a, k512x32, impl) == 100);
      CHECK(intersect_size(SortedRun(range32(0, 40)), SortedRun(range32(41, 90)), k512x32, impl) == 0);
    }
  }

  TEST_CASE("lane width must match the geometry") {
    const SortedRun a(range32(1, 10));
    CHECK_THROWS_AS(intersect_size(a, a, KernelGeometry::make(512, 64), Implementation::scalar), InvalidArgument);
    CHECK_THROWS_AS(intersect_size(a, SortedRun::empty(64), k512x32, Implementation::scalar), InvalidArgument);
    const auto e16 = SortedRun::empty(16);
    CHECK_THROWS_AS(intersect_size(e16, e16, KernelGeometry::make(512, 16), Implementation::native), UnsupportedGeometry);
    CHECK_THROWS_AS(intersect_size(e16, e16, KernelGeometry::make(512, 16), Implementation::strict), UnsupportedGeometry);
  }

  TEST_CASE("differential against the merge oracle, all geometries and implementations") {
    for (auto g : kAllGeometries) {
      for (std::size_t w = 0; w < 40; ++w) {
        WorkloadSpec spec;
        spec.seed = 900 + w;
        spec.lane_bits = g.lane_bits();
        spec.len_a = w % 7 == 0 ? w : 10000;
        spec.len_b = w % 5 == 0 ? 3 * w : 7000;
        spec.overlap_fraction = (w % 4) / 3.0;
        if (w % 2) spec.universe_max = 3 * (spec.len_a + spec.len_b);
        const auto work = generate_runs(spec);
        const auto want = testing::merge_intersection(work.a.widened(), work.b.widened());
        for (auto impl : selectable(g)) {
          INFO(g.name(), " ", to_string(impl), " workload ", w);
          LoopStats stats;
          const auto r = intersect_runs(work.a, work.b, g, impl, &stats);
          REQUIRE(r.values.widened() == want);
          REQUIRE(r.count == want.size());
          REQUIRE(stats.progress_violations == 0);
          REQUIRE(intersect_size(work.a, work.b, g, impl) == want.size());
          REQUIRE(intersect_size(work.b, work.a, g, impl) == want.size());
        }
      }
    }
  }

  TEST_CASE("block iterations are bounded by the progress rule") {
    // Every iteration moves one cursor a whole block, so there are at most
    // |a|/L + |b|/L of them.
    WorkloadSpec spec{.seed = 3, .lane_bits = 32, .len_a = 5000, .len_b = 5000, .overlap_fraction = 0.5};
    const auto work = generate_runs(spec);
    for (auto g : {k512x32, KernelGeometry::make(256, 32), KernelGeometry::make(128, 32)}) {
      LoopStats stats;
      intersect_size(work.a, work.b, g, Implementation::scalar, &stats);
      CHECK(stats.block_iterations > 0);
      CHECK(stats.block_iterations <= 2 * 5000 / g.lane_count());
      CHECK(stats.progress_violations == 0);
    }
  }

  TEST_CASE("kernels plug into the block loop") {
    using G = Geometry<256, 64>;
    const auto work = generate_runs({.seed = 8, .lane_bits = 64, .len_a = 3000, .len_b = 2000, .overlap_fraction = 0.3});
    const auto xs = work.a.values<std::uint64_t>(), ys = work.b.values<std::uint64_t>();
    std::vector<std::uint64_t> out(2000);
    auto naive = [](const Block<G>& a, const Block<G>& b, BlockSpan<G>) { return portable::naive_first_mask<G>(a, b); };
    auto memory = [](const Block<G>& a, const Block<G>&, BlockSpan<G> b) { return portable::memory_first_mask<G>(a, b); };
    const auto r1 = intersect_blocks<G>(xs, ys, out.data(), naive);
    out.resize(r1.count);
    CHECK(out == testing::merge_intersection(work.a.widened(), work.b.widened()));
    CHECK(intersect_blocks<G>(xs, ys, nullptr, memory).count == r1.count);
  }
}
