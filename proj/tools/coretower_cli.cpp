// coretower: strong-collapse accelerated persistence for Rips snapshot
// sequences.
//
//   coretower core --input K.txt [--out core.txt] [--retraction r.txt] [--trace t.txt]
//   coretower pipeline --input pts.txt --format points --start 0.1 --step 0.005 --end 0.5
//   coretower compare  --input pts.txt --format points --start 0.1 --step 0.01 --end 0.5
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 cap exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include "coretower/io.hpp"
#include "coretower/pipeline.hpp"
#include "coretower/strong_collapse.hpp"

namespace ct = coretower;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCap = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string input;
  std::string format = "points";
  std::optional<double> start;
  std::optional<double> step;
  std::optional<double> end;
  std::string grades_file;
  std::size_t workers = 1;
  std::size_t cap = ct::kDefaultExpansionCap;

  void add_to(CLI::App* app) {
    app->add_option("--input", input, "Point cloud or distance matrix file")->required();
    app->add_option("--format", format, "Input format")
        ->check(CLI::IsMember({"points", "distmat", "complex"}));
    app->add_option("--start", start, "First snapshot scale");
    app->add_option("--step", step, "Scale step between snapshots");
    app->add_option("--end", end, "Last snapshot scale (inclusive)");
    app->add_option("--grades", grades_file, "File with an explicit increasing grade list");
    app->add_option("--workers", workers, "Worker threads for Rips construction and collapse")
        ->check(CLI::PositiveNumber);
    app->add_option("--cap", cap, "Maximum number of simplices in any full expansion")
        ->check(CLI::PositiveNumber);
  }

  std::vector<double> grades() const {
    const bool uniform = start || step || end;
    if (uniform && !grades_file.empty()) throw UsageError("use either --start/--step/--end or --grades");
    if (!grades_file.empty()) return ct::parse_grades(ct::read_file(grades_file));
    if (!(start && step && end)) throw UsageError("a schedule needs --start, --step and --end");
    return ct::SnapshotSchedule{*start, *step, *end}.grades();
  }

  ct::DistanceMatrix distances() const {
    const auto kind = ct::parse_input_kind(format);
    if (kind == ct::InputKind::Complex) {
      throw UsageError("the snapshot pipeline needs --format points or distmat");
    }
    const std::string text = ct::read_file(input);
    if (kind == ct::InputKind::Points) return ct::pairwise_distances(ct::parse_points(text));
    return ct::parse_distance_matrix(text);
  }
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    ct::write_file(path, content);
  }
}

int run_core(const std::string& input, const std::string& out, const std::string& retraction,
             const std::string& trace) {
  const ct::ComplexMatrix m = ct::parse_complex(ct::read_file(input));
  const ct::CollapseResult result = ct::core(m);
  emit(out, ct::write_complex(result.matrix));
  if (!retraction.empty()) ct::write_file(retraction, ct::write_retraction(result.retraction));
  if (!trace.empty()) ct::write_file(trace, ct::write_trace(result.trace));
  const auto before = m.stats();
  const auto after = result.matrix.stats();
  std::cerr << "core: v " << before.v << " -> " << after.v << ", m " << before.m << " -> " << after.m
            << ", d " << before.d << " -> " << after.d << ", rounds " << result.trace.rounds << '\n';
  return 0;
}

int run_pipeline(const InputOptions& in, bool no_collapse, bool clearing, const std::string& out_pd,
                 const std::string& out_tower, const std::string& out_stats) {
  const auto grades = in.grades();
  const auto d = in.distances();
  ct::PipelineOptions opts;
  opts.workers = in.workers;
  opts.collapse = !no_collapse;
  opts.cap = in.cap;
  opts.persistence.clearing = clearing;
  const ct::PipelineResult r = ct::run_pipeline(d, grades, opts);

  emit(out_pd, ct::write_diagram(r.diagram));
  if (!out_tower.empty()) ct::write_file(out_tower, ct::write_tower(r.tower));
  if (!out_stats.empty()) ct::write_file(out_stats, ct::write_stats_csv(r.stats));

  const auto& t = r.timings;
  std::fprintf(stderr,
               "snapshots %zu, tower ops %zu, filtration cells %zu\n"
               "timings (s): rips %.6f, MCT %.6f, AT %.6f, PDT %.6f, total %.6f\n",
               grades.size(), r.tower.ops.size(), r.filtration_size, t.rips, t.max_collapse,
               t.assembly, t.persistence, t.max_collapse + t.assembly + t.persistence);
  return 0;
}

int run_compare(const InputOptions& in) {
  const auto grades = in.grades();
  const auto d = in.distances();
  ct::PipelineOptions opts;
  opts.workers = in.workers;
  opts.cap = in.cap;
  const ct::PipelineResult collapsed = ct::run_pipeline(d, grades, opts);
  ct::PersistenceDiagram oracle;
  try {
    oracle = ct::oracle_pipeline(d, grades, in.cap, in.workers);
  } catch (const ct::CapExceeded& e) {
    std::cout << "skipped: uncollapsed pipeline exceeds the expansion cap (" << e.what() << ")\n";
    return kExitCap;
  }

  std::set<int> dims;
  for (const auto& p : collapsed.diagram.pairs) dims.insert(p.dim);
  for (const auto& p : oracle.pairs) dims.insert(p.dim);
  bool all_equal = true;
  std::string equal_dims;
  std::string differing_dims;
  double worst = 0.0;
  for (int k : dims) {
    const bool equal = collapsed.diagram.in_dimension(k) == oracle.in_dimension(k);
    const double b = ct::bottleneck_distance(collapsed.diagram, oracle, k);
    worst = std::max(worst, b);
    std::cout << "dim " << k << ": " << (equal ? "equal" : "different") << " (bottleneck "
              << ct::format_real(b) << ")\n";
    std::string& list = equal ? equal_dims : differing_dims;
    if (!list.empty()) list += ',';
    list += std::to_string(k);
    all_equal = all_equal && equal;
  }
  if (all_equal) {
    std::cout << "equal in dims " << equal_dims << "; bottleneck " << ct::format_real(worst) << '\n';
    return 0;
  }
  std::cout << "different in dims " << differing_dims << "; bottleneck " << ct::format_real(worst)
            << '\n';
  return kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong-collapse accelerated persistent homology of Rips snapshot sequences"};
  app.require_subcommand(1);

  auto* core_cmd = app.add_subcommand("core", "Strong-collapse one complex to its core");
  std::string core_input;
  std::string core_out;
  std::string core_retraction;
  std::string core_trace;
  core_cmd->add_option("--input", core_input, "Complex file (one maximal simplex per line)")->required();
  core_cmd->add_option("--out", core_out, "Core complex file (default: stdout)");
  core_cmd->add_option("--retraction", core_retraction, "Write the retraction map here");
  core_cmd->add_option("--trace", core_trace, "Write the removal trace here");

  auto* pipe_cmd = app.add_subcommand("pipeline", "Persistence diagram of a Rips snapshot sequence");
  InputOptions pipe_in;
  pipe_in.add_to(pipe_cmd);
  bool no_collapse = false;
  bool clearing = false;
  std::string out_pd;
  std::string out_tower;
  std::string out_stats;
  pipe_cmd->add_flag("--no-collapse", no_collapse, "Reduce the uncollapsed snapshot filtration");
  pipe_cmd->add_flag("--clearing", clearing, "Use the clearing optimization during reduction");
  pipe_cmd->add_option("--out-pd", out_pd, "Persistence diagram file (default: stdout)");
  pipe_cmd->add_option("--out-tower", out_tower, "Core tower file");
  pipe_cmd->add_option("--out-stats", out_stats, "Per-snapshot statistics CSV");

  auto* cmp_cmd = app.add_subcommand("compare", "Compare the collapsed pipeline with the uncollapsed one");
  InputOptions cmp_in;
  cmp_in.add_to(cmp_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*core_cmd) return run_core(core_input, core_out, core_retraction, core_trace);
    if (*pipe_cmd) return run_pipeline(pipe_in, no_collapse, clearing, out_pd, out_tower, out_stats);
    if (*cmp_cmd) return run_compare(cmp_in);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ct::CapExceeded& e) {
    std::cerr << "error: " << e.what()
              << "\nhint: lower --end (or use fewer/smaller snapshots) or raise --cap\n";
    return kExitCap;
  } catch (const ct::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
