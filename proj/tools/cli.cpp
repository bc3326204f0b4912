#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "vecsect/bench.hpp"
#include "vecsect/datagen.hpp"
#include "vecsect/dispatch.hpp"
#include "vecsect/driver.hpp"
#include "vecsect/run_file.hpp"
#include "vecsect/selftest.hpp"

namespace vecsect {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitInternal = 2;

struct Flags {
  std::string geometry = "512x32";
  std::string impl = "auto";
  std::uint64_t seed = 1;
  std::size_t len_a = 100000;
  std::size_t len_b = 100000;
  double overlap = 0.5;
  std::optional<std::uint64_t> universe_max;
  std::string format = "text";
  std::string out;
  std::size_t reps = 20;
  std::size_t pairs = 20000;
  std::vector<std::string> inputs;
};

// An explicit --geometry must match the files; otherwise the lane width comes
// from the files and the default vector width is kept.
KernelGeometry geometry_for(const Flags& f, bool explicit_geometry, const SortedRun& a, const SortedRun& b) {
  const auto g = KernelGeometry::parse(f.geometry);
  if (a.lane_bits() != b.lane_bits())
    throw InvalidArgument("input runs have different lane widths (" + std::to_string(a.lane_bits()) + " and " +
                          std::to_string(b.lane_bits()) + " bits)");
  if (explicit_geometry) return g;
  return KernelGeometry::make(g.vector_bits(), a.lane_bits());
}

Implementation choose(const Flags& f, KernelGeometry g) {
  if (f.impl == "auto") return select_kernel(g, effective_policy(Policy::automatic), detect_capabilities()).implementation;
  return parse_implementation(f.impl);
}

WorkloadSpec workload(const Flags& f, unsigned lane_bits) {
  WorkloadSpec spec;
  spec.seed = f.seed;
  spec.lane_bits = lane_bits;
  spec.len_a = f.len_a;
  spec.len_b = f.len_b;
  spec.overlap_fraction = f.overlap;
  spec.universe_max = f.universe_max;
  return spec;
}

void add_workload_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--seed", f.seed, "Workload seed")->capture_default_str();
  cmd->add_option("--len-a", f.len_a, "Length of the first run")->capture_default_str();
  cmd->add_option("--len-b", f.len_b, "Length of the second run")->capture_default_str();
  cmd->add_option("--overlap", f.overlap, "Shared fraction of the shorter run")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--universe-max", f.universe_max, "Largest value that may appear");
}

int cmd_intersect(const Flags& f, bool explicit_geometry, bool count_only, std::ostream& out) {
  const auto a = read_run_file(f.inputs.at(0));
  const auto b = read_run_file(f.inputs.at(1));
  const auto g = geometry_for(f, explicit_geometry, a, b);
  const auto impl = choose(f, g);
  if (count_only) {
    out << intersect_size(a, b, g, impl) << '\n';
    return kExitOk;
  }
  const auto result = intersect_runs(a, b, g, impl);
  write_run_file(f.out, result.values);
  out << result.count << '\n';
  return kExitOk;
}

int cmd_gen(const Flags& f, std::ostream& out) {
  const auto g = KernelGeometry::parse(f.geometry);
  const auto w = generate_runs(workload(f, g.lane_bits()));
  write_run_file(f.out + ".a", w.a);
  write_run_file(f.out + ".b", w.b);
  out << w.expected_intersection_size << '\n';
  return kExitOk;
}

int cmd_bench(const Flags& f, bool explicit_geometry, std::ostream& out) {
  std::vector<KernelGeometry> geometries;
  if (explicit_geometry) geometries.push_back(KernelGeometry::parse(f.geometry));
  else geometries.assign(kAllGeometries.begin(), kAllGeometries.end());

  std::vector<Implementation> impls;
  if (f.impl != "auto") impls.push_back(parse_implementation(f.impl));
  const TableFormat format = f.format == "csv" ? TableFormat::csv : TableFormat::text;

  BenchOptions options;
  options.reps = f.reps;
  const auto records = run_grid(geometries, impls, workload(f, 32), detect_capabilities(), options);
  const auto table = emit_table(records, format);
  if (f.out.empty()) {
    out << table;
  } else {
    std::ofstream file(f.out, std::ios::binary);
    file << table;
    if (!file) throw InvalidArgument("cannot write " + f.out);
  }
  return kExitOk;
}

int cmd_selftest(const Flags& f, std::ostream& out) {
  SelftestOptions options;
  options.seed = f.seed;
  options.random_pairs = f.pairs;
  const auto checks = run_selftest(options, detect_capabilities());
  bool ok = true;
  for (const auto& c : checks) {
    out << (c.passed ? "ok   " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    ok = ok && c.passed;
  }
  out << "selftest: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitInternal;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sorted-set intersection with vector intersection-mask kernels"};
  app.require_subcommand(1);
  Flags f;

  auto add_geometry = [&](CLI::App* cmd) {
    return cmd->add_option("--geometry", f.geometry, "Kernel geometry <vector_bits>x<lane_bits>")->capture_default_str();
  };
  auto add_impl = [&](CLI::App* cmd) {
    cmd->add_option("--impl", f.impl, "Kernel implementation")
        ->check(CLI::IsMember({"auto", "native", "fast", "naive", "memory", "strict", "scalar"}))
        ->capture_default_str();
  };

  auto* intersect = app.add_subcommand("intersect", "Intersect two run files into a new run file");
  intersect->add_option("inputs", f.inputs, "Two run files")->required()->expected(2)->check(CLI::ExistingFile);
  intersect->add_option("--out", f.out, "Output run file")->required();
  auto* intersect_geometry = add_geometry(intersect);
  add_impl(intersect);

  auto* size = app.add_subcommand("size", "Print the intersection size of two run files");
  size->add_option("inputs", f.inputs, "Two run files")->required()->expected(2)->check(CLI::ExistingFile);
  auto* size_geometry = add_geometry(size);
  add_impl(size);

  auto* gen = app.add_subcommand("gen", "Write a generated workload to <out>.a and <out>.b");
  add_geometry(gen);
  add_workload_flags(gen, f);
  gen->add_option("--out", f.out, "Output path prefix")->required();

  auto* bench = app.add_subcommand("bench", "Measure the geometry x implementation grid");
  auto* bench_geometry = add_geometry(bench);
  add_impl(bench);
  add_workload_flags(bench, f);
  bench->add_option("--format", f.format, "Table format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
  bench->add_option("--reps", f.reps, "Timed repetitions per cell")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--out", f.out, "Write the table here instead of stdout");

  auto* selftest = app.add_subcommand("selftest", "Check every reachable kernel against the oracle");
  selftest->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  selftest->add_option("--pairs", f.pairs, "Random pairs per geometry and kernel")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUser;
  }

  try {
    // A bad VECSECT_FORCE value is a usage error, reported before any work.
    (void)policy_from_environment();
    if (*intersect) return cmd_intersect(f, intersect_geometry->count() > 0, false, out);
    if (*size) return cmd_intersect(f, size_geometry->count() > 0, true, out);
    if (*gen) return cmd_gen(f, out);
    if (*bench) return cmd_bench(f, bench_geometry->count() > 0, out);
    if (*selftest) return cmd_selftest(f, out);
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace vecsect
