#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vecsect/datagen.hpp"
#include "vecsect/dispatch.hpp"
#include "vecsect/geometry.hpp"

namespace vecsect {

/// One measured cell: cost of one block-loop iteration of intersect_size.
struct BenchRecord {
  KernelGeometry geometry;
  Implementation implementation;
  double ns_per_iter = 0.0;
  /// Time-stamp-counter ticks per iteration; only with an invariant TSC.
  std::optional<double> cycles_per_iter;
  /// Block-loop iterations of one pass over the workload, as counted by the driver.
  std::size_t iterations = 0;
  WorkloadSpec workload;
};

struct BenchOptions {
  std::size_t reps = 20;
  /// Smallest per-pass block iteration count accepted as a measurement.
  std::size_t min_iterations = 1;
  /// Each rep repeats the pass until at least this much time has elapsed.
  double min_rep_seconds = 1e-3;
};

/// Times intersect_size over the workload (lane width taken from `geometry`)
/// after one untimed pass; reports the median over reps.
/// Throws UnsupportedCapability / UnsupportedGeometry when the implementation
/// cannot run here, InvalidArgument when the workload is too small.
BenchRecord measure_cell(KernelGeometry geometry, Implementation impl, const WorkloadSpec& spec,
                         const BenchOptions& options = {});

/// The implementations measured for one geometry when none is requested:
/// the three report columns, with the portable kernel standing in for the
/// emulation when the CPU has no vectors of that width.
std::vector<Implementation> default_implementations(KernelGeometry geometry, const CapabilitySet& caps);

/// Measures every selectable (geometry, implementation) cell. An empty
/// `implementations` means default_implementations per geometry.
std::vector<BenchRecord> run_grid(std::span<const KernelGeometry> geometries,
                                  std::span<const Implementation> implementations, const WorkloadSpec& spec,
                                  const CapabilitySet& caps, const BenchOptions& options = {});

enum class TableFormat { text, csv };

/// Rows ordered by vector width descending then lane width ascending.
/// Text: one row per geometry present, columns native / emulation /
/// emulation with in-memory operand, "-" for missing cells.
/// CSV: one line per record, CRLF line endings, header always present.
std::string emit_table(std::span<const BenchRecord> records, TableFormat format);

}  // namespace vecsect
