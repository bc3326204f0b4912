#include "vecsect/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#if defined(__x86_64__) || defined(__i386__)
#include <x86intrin.h>
#define VECSECT_HAVE_RDTSC 1
#endif

namespace vecsect {

namespace {

std::uint64_t read_tsc() {
#ifdef VECSECT_HAVE_RDTSC
  return __rdtsc();
#else
  return 0;
#endif
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::size_t geometry_rank(KernelGeometry g) {
  for (std::size_t i = 0; i < kAllGeometries.size(); ++i)
    if (kAllGeometries[i] == g) return i;
  return kAllGeometries.size();
}

std::string format_number(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// Checksum of every timed result, read once all timing is done.
volatile std::size_t g_sink = 0;

}  // namespace

BenchRecord measure_cell(KernelGeometry geometry, Implementation impl, const WorkloadSpec& spec,
                         const BenchOptions& options) {
  require_selectable({geometry, impl}, detect_capabilities());
  if (options.reps == 0) throw InvalidArgument("need at least one timed repetition");

  WorkloadSpec workload = spec;
  workload.lane_bits = geometry.lane_bits();
  const Workload w = generate_runs(workload);

  // Warm-up pass, which also yields the per-pass iteration count.
  LoopStats stats;
  std::size_t checksum = intersect_size(w.a, w.b, geometry, impl, &stats);
  const std::size_t iterations = stats.block_iterations;
  if (iterations == 0 || iterations < options.min_iterations)
    throw InvalidArgument("workload gives " + std::to_string(iterations) + " block iterations for " +
                          geometry.name() + ", need at least " + std::to_string(std::max<std::size_t>(1, options.min_iterations)));

  // Size a rep to at least min_rep_seconds.
  using clock = std::chrono::steady_clock;
  std::size_t passes = 1;
  for (;;) {
    const auto t0 = clock::now();
    for (std::size_t p = 0; p < passes; ++p) checksum += intersect_size(w.a, w.b, geometry, impl);
    const std::chrono::duration<double> elapsed = clock::now() - t0;
    if (elapsed.count() >= options.min_rep_seconds || passes >= (std::size_t{1} << 20)) break;
    passes *= 2;
  }

  const bool tsc = has_invariant_tsc();
  std::vector<double> ns, ticks;
  ns.reserve(options.reps);
  ticks.reserve(options.reps);
  const double per_rep_iterations = static_cast<double>(passes * iterations);
  for (std::size_t r = 0; r < options.reps; ++r) {
    const std::uint64_t c0 = read_tsc();
    const auto t0 = clock::now();
    for (std::size_t p = 0; p < passes; ++p) checksum += intersect_size(w.a, w.b, geometry, impl);
    const auto t1 = clock::now();
    const std::uint64_t c1 = read_tsc();
    ns.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / per_rep_iterations);
    ticks.push_back(static_cast<double>(c1 - c0) / per_rep_iterations);
  }
  g_sink = g_sink + checksum;

  BenchRecord rec{geometry, impl, median(ns), std::nullopt, iterations, workload};
  if (tsc) rec.cycles_per_iter = median(ticks);
  return rec;
}

std::vector<Implementation> default_implementations(KernelGeometry geometry, const CapabilitySet& caps) {
  std::vector<Implementation> out;
  if (is_selectable({geometry, Implementation::native}, caps)) out.push_back(Implementation::native);
  if (is_selectable({geometry, Implementation::emulated_fast}, caps)) out.push_back(Implementation::emulated_fast);
  else out.push_back(Implementation::scalar);
  if (is_selectable({geometry, Implementation::emulated_memory}, caps)) out.push_back(Implementation::emulated_memory);
  return out;
}

std::vector<BenchRecord> run_grid(std::span<const KernelGeometry> geometries,
                                  std::span<const Implementation> implementations, const WorkloadSpec& spec,
                                  const CapabilitySet& caps, const BenchOptions& options) {
  std::vector<BenchRecord> out;
  for (const auto g : geometries) {
    const auto impls = implementations.empty()
                           ? default_implementations(g, caps)
                           : std::vector<Implementation>(implementations.begin(), implementations.end());
    for (const auto impl : impls)
      if (is_selectable({g, impl}, caps)) out.push_back(measure_cell(g, impl, spec, options));
  }
  return out;
}

std::string emit_table(std::span<const BenchRecord> records, TableFormat format) {
  std::vector<const BenchRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const BenchRecord* x, const BenchRecord* y) {
    const auto gx = geometry_rank(x->geometry), gy = geometry_rank(y->geometry);
    if (gx != gy) return gx < gy;
    return x->implementation < y->implementation;
  });

  std::string out;
  if (format == TableFormat::csv) {
    out += "vector_bits,lane_bits,implementation,ns_per_iter,cycles_per_iter,iterations,seed\r\n";
    for (const auto* r : sorted) {
      out += std::to_string(r->geometry.vector_bits()) + ',' + std::to_string(r->geometry.lane_bits()) + ',';
      out += std::string(to_string(r->implementation)) + ',';
      out += format_number(r->ns_per_iter, "%.4f") + ',';
      if (r->cycles_per_iter) out += format_number(*r->cycles_per_iter, "%.4f");
      out += ',' + std::to_string(r->iterations) + ',' + std::to_string(r->workload.seed) + "\r\n";
    }
    return out;
  }

  auto cell = [](const BenchRecord* r, bool portable) {
    if (r == nullptr) return std::string("-");
    std::string s = format_number(r->ns_per_iter, "%.3f");
    if (r->cycles_per_iter) s += " (" + format_number(*r->cycles_per_iter, "%.2f") + ")";
    if (portable) s += " *";
    return s;
  };
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };

  constexpr std::size_t kLabel = 10, kCell = 24;
  out += pad("geometry", kLabel) + pad("native", kCell) + pad("emulation", kCell) + "emulation, in-memory operand\n";
  bool used_portable = false;
  std::size_t rows = 0;
  for (const auto g : kAllGeometries) {
    const BenchRecord *native = nullptr, *fast = nullptr, *memory = nullptr, *scalar = nullptr;
    for (const auto* r : sorted) {
      if (r->geometry != g) continue;
      switch (r->implementation) {
        case Implementation::native: native = r; break;
        case Implementation::emulated_fast: fast = r; break;
        case Implementation::emulated_memory: memory = r; break;
        case Implementation::scalar: scalar = r; break;
        default: break;
      }
    }
    if (!native && !fast && !memory && !scalar) {
      bool any = false;
      for (const auto* r : sorted) any = any || r->geometry == g;
      if (!any) continue;
    }
    const bool portable = fast == nullptr && scalar != nullptr;
    used_portable = used_portable || portable;
    out += pad(g.name(), kLabel) + pad(cell(native, false), kCell) + pad(cell(portable ? scalar : fast, portable), kCell) +
           cell(memory, false) + "\n";
    ++rows;
  }
  if (rows > 0) out += "ns per block-loop iteration; TSC ticks in parentheses\n";
  if (used_portable) out += "* portable scalar build of the emulation\n";
  return out;
}

}  // namespace vecsect
