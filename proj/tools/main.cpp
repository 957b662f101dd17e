// labelprop command line: run community detection, benchmark it, sweep thread
// counts, and generate synthetic benchmark graphs. Every command prints
// line-delimited JSON records on stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 input that cannot
// be loaded or validated, 3 quality score undefined for the input.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "labelprop/graph.hpp"
#include "labelprop/lpa.hpp"
#include "labelprop/quality.hpp"
#include "labelprop/synthetic.hpp"

namespace {

using labelprop::Graph;
using labelprop::LpaConfig;
using labelprop::LpaResult;
using labelprop::VertexId;
using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct LoadOptions {
  std::string input;
  std::string format = "auto";
  bool weighted = false;
  bool one_indexed = false;
  bool no_symmetrize = false;
};

struct AlgoOptions {
  double tolerance = 0.05;
  int max_iters = 20;
  std::string tie_break = "strict";
  bool no_pruning = false;
  int chunk_size = 2048;
  int threads = 0;  // 0 = hardware default
};

std::string ends_with_lower(const std::string& path) {
  const auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext;
}

std::string resolve_format(const LoadOptions& opt) {
  if (opt.format != "auto") return opt.format;
  const std::string ext = ends_with_lower(opt.input);
  if (ext == "mtx") return "mtx";
  if (ext == "csrbin" || ext == "csr" || ext == "bin") return "csr-bin";
  return "edgelist";
}

Graph load_graph(const LoadOptions& opt) {
  const std::string format = resolve_format(opt);
  Graph g;
  if (format == "mtx") {
    g = labelprop::load_matrix_market_file(opt.input);
  } else if (format == "csr-bin") {
    g = labelprop::load_csr_binary_file(opt.input);
  } else if (format == "edgelist") {
    labelprop::EdgeListOptions eopt;
    eopt.weighted = opt.weighted;
    eopt.one_indexed = opt.one_indexed;
    eopt.symmetrize = !opt.no_symmetrize;
    g = labelprop::load_edge_list_file(opt.input, eopt);
  } else {
    throw labelprop::ConfigError("unknown input format '" + format + "'");
  }
  const auto violations = labelprop::validate(g);
  if (!violations.empty()) {
    for (const auto& v : violations) {
      std::cerr << "invariant '" << v.invariant << "' violated at index "
                << v.index << ": " << v.detail << "\n";
    }
    throw labelprop::ValidationError("loaded graph failed validation with " +
                                     std::to_string(violations.size()) +
                                     " violation(s)");
  }
  return g;
}

LpaConfig to_config(const AlgoOptions& opt) {
  LpaConfig cfg;
  cfg.tolerance = opt.tolerance;
  cfg.max_iterations = opt.max_iters;
  cfg.tie_break = labelprop::tie_break_from_string(opt.tie_break);
  cfg.pruning = !opt.no_pruning;
  cfg.chunk_size = opt.chunk_size;
  cfg.num_threads = opt.threads;
  cfg.check();
  return cfg;
}

json config_json(const LpaConfig& cfg) {
  return json{{"tolerance", cfg.tolerance},
              {"max_iterations", cfg.max_iterations},
              {"tie_break", std::string(labelprop::to_string(cfg.tie_break))},
              {"pruning", cfg.pruning},
              {"chunk_size", cfg.chunk_size},
              {"threads", cfg.effective_threads()}};
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void write_membership(const std::string& path,
                      const labelprop::CommunityAssignment& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw labelprop::IoError("cannot open for writing: " + path);
  for (std::size_t v = 0; v < labels.size(); ++v) {
    out << v << ' ' << labels[v] << '\n';
  }
  if (!out) throw labelprop::IoError("failed writing membership file: " + path);
}

double geometric_mean(const std::vector<double>& xs) {
  double log_sum = 0.0;
  for (double x : xs) log_sum += std::log(std::max(x, 1e-12));
  return std::exp(log_sum / static_cast<double>(xs.size()));
}

double arithmetic_mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

void emit(const json& record) { std::cout << record.dump() << "\n"; }

struct BenchSamples {
  std::vector<double> wall_times;
  std::vector<double> modularities;
  std::vector<int> iterations;
  bool all_converged = true;
};

BenchSamples run_reps(const Graph& g, const LpaConfig& cfg, int reps) {
  labelprop::LpaEngine engine(cfg);
  BenchSamples s;
  for (int r = 0; r < reps; ++r) {
    const LpaResult result = engine.run(g);
    s.wall_times.push_back(result.wall_time_seconds);
    s.modularities.push_back(labelprop::modularity(g, result.labels));
    s.iterations.push_back(result.iterations);
    s.all_converged = s.all_converged && result.converged;
  }
  return s;
}

json samples_json(const BenchSamples& s) {
  return json{
      {"wall_time_seconds",
       {{"geomean", geometric_mean(s.wall_times)},
        {"min", *std::min_element(s.wall_times.begin(), s.wall_times.end())},
        {"max", *std::max_element(s.wall_times.begin(), s.wall_times.end())},
        {"samples", s.wall_times}}},
      {"modularity",
       {{"mean", arithmetic_mean(s.modularities)},
        {"min",
         *std::min_element(s.modularities.begin(), s.modularities.end())},
        {"max",
         *std::max_element(s.modularities.begin(), s.modularities.end())},
        {"samples", s.modularities}}},
      {"iterations", {{"samples", s.iterations}}},
      {"all_converged", s.all_converged}};
}

int cmd_run(const LoadOptions& load, const AlgoOptions& algo,
            const std::string& membership_path) {
  const LpaConfig cfg = to_config(algo);
  const Graph g = load_graph(load);
  const LpaResult result = labelprop::lpa(g, cfg);
  if (!membership_path.empty()) write_membership(membership_path, result.labels);
  const labelprop::PartitionStats stats =
      labelprop::partition_stats(g, result.labels);
  json record{{"record", "run"},
              {"schema", kSchemaVersion},
              {"graph", load.input},
              {"n", g.num_vertices()},
              {"m", g.num_arcs()},
              {"config", config_json(cfg)},
              {"iterations", result.iterations},
              {"delta_history", result.delta_history},
              {"converged", result.converged},
              {"wall_time_seconds", result.wall_time_seconds},
              {"modularity", stats.modularity},
              {"num_communities", stats.num_communities},
              {"timestamp", utc_timestamp()}};
  if (!membership_path.empty()) record["membership"] = membership_path;
  emit(record);
  return 0;
}

int cmd_bench(const LoadOptions& load, const AlgoOptions& algo, int reps) {
  if (reps < 1) throw labelprop::ConfigError("--reps must be at least 1");
  const LpaConfig cfg = to_config(algo);
  const Graph g = load_graph(load);
  const BenchSamples s = run_reps(g, cfg, reps);
  json record{{"record", "bench"},      {"schema", kSchemaVersion},
              {"graph", load.input},    {"n", g.num_vertices()},
              {"m", g.num_arcs()},      {"config", config_json(cfg)},
              {"reps", reps},           {"timestamp", utc_timestamp()}};
  record.update(samples_json(s));
  emit(record);
  return 0;
}

int cmd_scale(const LoadOptions& load, const AlgoOptions& algo, int reps,
              const std::vector<int>& thread_counts) {
  if (reps < 1) throw labelprop::ConfigError("--reps must be at least 1");
  if (thread_counts.empty()) {
    throw labelprop::ConfigError("--threads needs at least one value");
  }
  const Graph g = load_graph(load);
  const int hardware = labelprop::default_num_threads();

  double baseline_geomean = 0.0;
  for (std::size_t idx = 0; idx < thread_counts.size(); ++idx) {
    const int t = thread_counts[idx];
    if (t > hardware) {
      std::cerr << "warning: requested " << t << " threads on hardware with "
                << hardware << " (run proceeds oversubscribed)\n";
    }
    AlgoOptions algo_t = algo;
    algo_t.threads = t;
    const LpaConfig cfg = to_config(algo_t);
    const BenchSamples s = run_reps(g, cfg, reps);
    const double geomean = geometric_mean(s.wall_times);
    if (idx == 0) baseline_geomean = geomean;
    json record{{"record", "scale"},
                {"schema", kSchemaVersion},
                {"graph", load.input},
                {"n", g.num_vertices()},
                {"m", g.num_arcs()},
                {"config", config_json(cfg)},
                {"reps", reps},
                {"threads", cfg.effective_threads()},
                {"baseline_threads", thread_counts.front()},
                {"speedup", baseline_geomean / geomean},
                {"timestamp", utc_timestamp()}};
    record.update(samples_json(s));
    emit(record);
  }
  return 0;
}

struct GenerateOptions {
  std::string kind;
  VertexId cliques = 8;
  VertexId clique_size = 6;
  VertexId n = 1000;
  VertexId blocks = 10;
  double p_in = 0.2;
  double p_out = 0.001;
  std::uint64_t seed = 1;
  std::string output;
  std::string ground_truth;
};

int cmd_generate(const GenerateOptions& opt) {
  labelprop::PlantedGraph planted;
  json params;
  if (opt.kind == "clique-ring") {
    planted = labelprop::make_clique_ring(opt.cliques, opt.clique_size);
    params = {{"cliques", opt.cliques}, {"clique_size", opt.clique_size}};
  } else if (opt.kind == "barbell") {
    planted = labelprop::make_barbell(opt.clique_size);
    params = {{"clique_size", opt.clique_size}};
  } else if (opt.kind == "planted-partition") {
    planted = labelprop::make_planted_partition(opt.n, opt.blocks, opt.p_in,
                                                opt.p_out, opt.seed);
    params = {{"n", opt.n},
              {"blocks", opt.blocks},
              {"p_in", opt.p_in},
              {"p_out", opt.p_out},
              {"seed", opt.seed}};
  } else {
    throw labelprop::ConfigError("unknown graph kind '" + opt.kind + "'");
  }

  labelprop::write_matrix_market_file(planted.graph, opt.output);
  const std::string truth_path =
      opt.ground_truth.empty() ? opt.output + ".labels" : opt.ground_truth;
  write_membership(truth_path, planted.planted_labels);

  emit(json{{"record", "generate"},
            {"schema", kSchemaVersion},
            {"kind", opt.kind},
            {"params", params},
            {"n", planted.graph.num_vertices()},
            {"m", planted.graph.num_arcs()},
            {"output", opt.output},
            {"ground_truth", truth_path},
            {"timestamp", utc_timestamp()}});
  return 0;
}

void add_load_options(CLI::App* cmd, LoadOptions& load) {
  cmd->add_option("--input", load.input, "Path to the input graph")
      ->required();
  cmd->add_option("--format", load.format,
                  "Input format: mtx, edgelist, csr-bin (default: by "
                  "file extension)")
      ->check(CLI::IsMember({"auto", "mtx", "edgelist", "csr-bin"}));
  cmd->add_flag("--weighted", load.weighted,
                "Read the third edge-list column as the edge weight");
  cmd->add_flag("--one-indexed", load.one_indexed,
                "Edge-list vertex ids start at 1");
  cmd->add_flag("--no-symmetrize", load.no_symmetrize,
                "Trust the edge list to already contain both arc directions");
}

void add_algo_options(CLI::App* cmd, AlgoOptions& algo, bool single_threads) {
  cmd->add_option("--tolerance", algo.tolerance,
                  "Stop when the fraction of vertices changing label drops "
                  "to this value (default 0.05)");
  cmd->add_option("--max-iters", algo.max_iters,
                  "Sweep cap (default 20)");
  cmd->add_option("--tie-break", algo.tie_break,
                  "Equal-weight label resolution: strict or nonstrict")
      ->check(CLI::IsMember({"strict", "nonstrict"}));
  cmd->add_flag("--no-pruning", algo.no_pruning,
                "Rescan every vertex every sweep");
  cmd->add_option("--chunk-size", algo.chunk_size,
                  "Vertices per dynamically scheduled chunk (default 2048)");
  if (single_threads) {
    cmd->add_option("--threads", algo.threads,
                    "Worker threads (default: hardware concurrency)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "labelprop: parallel label-propagation community detection.\n"
      "Commands print one JSON record per line on stdout."};
  app.require_subcommand(1);

  LoadOptions load;
  AlgoOptions algo;
  std::string membership_path;
  int reps = 5;
  std::vector<int> thread_counts{1, 2, 4};
  GenerateOptions gen;

  CLI::App* run = app.add_subcommand(
      "run", "Detect communities and print one run record");
  add_load_options(run, load);
  add_algo_options(run, algo, /*single_threads=*/true);
  run->add_option("--output-membership", membership_path,
                  "Write 'vertex_id label' lines to this path");

  CLI::App* bench = app.add_subcommand(
      "bench", "Repeat detection and print aggregate timing and quality");
  add_load_options(bench, load);
  add_algo_options(bench, algo, /*single_threads=*/true);
  bench->add_option("--reps", reps, "Repetitions to aggregate (default 5)");

  CLI::App* scale = app.add_subcommand(
      "scale", "Benchmark across thread counts; one record per count");
  add_load_options(scale, load);
  add_algo_options(scale, algo, /*single_threads=*/false);
  scale->add_option("--reps", reps, "Repetitions per thread count (default 5)");
  scale
      ->add_option("--threads", thread_counts,
                   "Comma-separated thread counts; speedup is relative to "
                   "the first (default 1,2,4)")
      ->delimiter(',');

  CLI::App* generate = app.add_subcommand(
      "generate", "Write a synthetic graph with planted communities");
  generate
      ->add_option("--kind", gen.kind,
                   "clique-ring, barbell, or planted-partition")
      ->required()
      ->check(CLI::IsMember({"clique-ring", "barbell", "planted-partition"}));
  generate->add_option("--cliques", gen.cliques,
                       "clique-ring: number of cliques (default 8)");
  generate->add_option("--clique-size", gen.clique_size,
                       "clique-ring/barbell: vertices per clique (default 6)");
  generate->add_option("--n", gen.n,
                       "planted-partition: vertex count (default 1000)");
  generate->add_option("--blocks", gen.blocks,
                       "planted-partition: block count (default 10)");
  generate->add_option("--p-in", gen.p_in,
                       "planted-partition: within-block edge probability");
  generate->add_option("--p-out", gen.p_out,
                       "planted-partition: cross-block edge probability");
  generate->add_option("--seed", gen.seed,
                       "planted-partition: RNG seed (default 1)");
  generate->add_option("--output", gen.output, "Output MatrixMarket path")
      ->required();
  generate->add_option("--ground-truth", gen.ground_truth,
                       "Planted label file (default: <output>.labels)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*run) return cmd_run(load, algo, membership_path);
    if (*bench) return cmd_bench(load, algo, reps);
    if (*scale) return cmd_scale(load, algo, reps, thread_counts);
    if (*generate) return cmd_generate(gen);
  } catch (const labelprop::QualityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const labelprop::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const labelprop::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;  // no subcommand matched; require_subcommand should prevent this
}
