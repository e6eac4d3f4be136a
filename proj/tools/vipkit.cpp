#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "vipkit/commsim.hpp"
#include "vipkit/experiment.hpp"
#include "vipkit/parallel.hpp"
#include "vipkit/pipesim.hpp"
#include "vipkit/policies.hpp"
#include "vipkit/reorder.hpp"
#include "vipkit/vip.hpp"

using namespace vipkit;

namespace {

struct DatasetArgs {
  std::string graph_path;
  std::string roles_path;
  std::string parts_path;
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& args, bool need_parts = true) {
  cmd->add_option("--graph", args.graph_path, "binary CSR graph (.vcsr)")->required();
  cmd->add_option("--roles", args.roles_path, "roles file (one code per vertex)")->required();
  if (need_parts)
    cmd->add_option("--parts", args.parts_path, "partition label file")->required();
}

struct Dataset {
  Graph graph;
  VertexRoles roles;
  PartitionMap part;
};

Dataset load_dataset(const DatasetArgs& args) {
  Dataset d;
  d.graph = load_binary_csr(args.graph_path);
  d.roles = load_roles(args.roles_path);
  if (d.roles.size() != d.graph.num_vertices())
    throw format_error("roles length does not match graph");
  if (!args.parts_path.empty())
    d.part = partition_from_file(args.parts_path, 0, d.graph.num_vertices());
  return d;
}

Ranking compute_ranking(const std::string& policy, const Dataset& d, std::uint32_t k,
                        const FanoutSpec& fanouts, std::uint64_t b, std::uint64_t sim_epochs,
                        const SeedSpec& seeds) {
  const TransitionModel tm{TransitionModel::Kind::uniform_fanout, fanouts};
  if (policy == "deg") return rank_degree(d.graph, d.roles, d.part, k, fanouts.hops());
  if (policy == "1hop") return rank_halo_1hop(d.graph, d.part, k);
  if (policy == "wpr") return rank_wpr(d.graph, d.roles, d.part, k, tm);
  if (policy == "numpaths") return rank_numpaths(d.graph, d.roles, d.part, k, fanouts.hops());
  if (policy == "sim") {
    const auto freq = empirical_vip(d.graph, d.roles, d.part, k, b, fanouts, sim_epochs, seeds);
    return rank_by_scores(d.part, k, freq);
  }
  if (policy == "vip") {
    const auto scores = propagate(d.graph, tm, initial_probs(d.roles, d.part, k, b), k);
    return rank_by_scores(d.part, k, scores.total);
  }
  throw parameter_error("unknown or unsupported standalone policy: " + policy);
}

void write_ranking(const Ranking& r, const std::string& path, const std::string& policy) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  out << "# policy=" << policy << '\n';
  char buf[40];
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.score[i]);
    out << r.order[i] << ' ' << buf << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{"VIP-driven cache planning and communication simulation for sampled GNN workloads"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: VIPKIT_THREADS or 1)");

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate or ingest a graph");
  std::string gen_kind = "pa", gen_out, gen_edges, roles_out;
  SynthParams gen_params;
  bool gen_directed = false;
  double train_frac = 0.1, valid_frac = 0.0, test_frac = 0.0;
  std::uint64_t roles_seed = 0;
  gen->add_option("--kind", gen_kind, "path|star|tree|grid|pa|uniform");
  gen->add_option("--n", gen_params.n, "vertex count");
  gen->add_option("--d", gen_params.d, "degree/arity/columns parameter");
  gen->add_option("--seed", gen_params.seed, "generator seed");
  gen->add_option("--from-edges", gen_edges, "ingest an edge-list file instead of generating");
  gen->add_flag("--directed", gen_directed, "keep edge list directed (default symmetrizes)");
  gen->add_option("--out", gen_out, "output .vcsr path")->required();
  gen->add_option("--roles-out", roles_out, "also write a seeded roles file");
  gen->add_option("--train-frac", train_frac, "train fraction for --roles-out");
  gen->add_option("--valid-frac", valid_frac, "valid fraction for --roles-out");
  gen->add_option("--test-frac", test_frac, "test fraction for --roles-out");
  gen->add_option("--roles-seed", roles_seed, "seed for --roles-out");
  gen->callback([&] {
    Graph g = gen_edges.empty()
                  ? generate_synthetic(synth_kind_from_string(gen_kind), gen_params)
                  : load_edge_list(gen_edges, !gen_directed);
    write_binary_csr(g, gen_out);
    if (!roles_out.empty())
      write_roles(make_roles(g.num_vertices(), train_frac, valid_frac, test_frac, roles_seed),
                  roles_out);
    std::cout << "wrote " << gen_out << " (n=" << g.num_vertices() << ", m=" << g.num_edges()
              << ")\n";
  });

  // --- partition ---
  auto* part_cmd = app.add_subcommand("partition", "partition a graph");
  DatasetArgs part_args;
  add_dataset_options(part_cmd, part_args, /*need_parts=*/false);
  std::uint32_t part_k = 2;
  std::string part_method = "bfs_greedy", part_labels, part_out;
  std::uint64_t part_seed = 0;
  part_cmd->add_option("--k", part_k, "partition count")->required();
  part_cmd->add_option("--method", part_method, "random|bfs_greedy|from_file");
  part_cmd->add_option("--labels", part_labels, "label file for --method from_file");
  part_cmd->add_option("--seed", part_seed, "partitioner seed");
  part_cmd->add_option("--out", part_out, "output label file")->required();
  part_cmd->callback([&] {
    Dataset d = load_dataset(part_args);
    const auto method = partition_method_from_string(part_method);
    PartitionMap pm = method == PartitionMethod::from_file
                          ? partition_from_file(part_labels, part_k, d.graph.num_vertices())
                          : partition_graph(d.graph, d.roles, part_k, method, part_seed);
    write_partition_labels(pm, part_out);
    std::cout << "wrote " << part_out << " (K=" << pm.K << ")\n";
  });

  // --- vip ---
  auto* vip_cmd = app.add_subcommand("vip", "compute analytic VIP scores per partition");
  DatasetArgs vip_args;
  add_dataset_options(vip_cmd, vip_args);
  std::string vip_fanouts, vip_prefix = "vip_";
  std::uint64_t vip_b = 0;
  bool vip_csv = false;
  vip_cmd->add_option("--fanouts", vip_fanouts, "per-hop fanouts, e.g. 15,10,5")->required();
  vip_cmd->add_option("--batch-size", vip_b, "minibatch size")->required();
  vip_cmd->add_option("--out-prefix", vip_prefix, "output prefix (writes <prefix>k<k>.bin)");
  vip_cmd->add_flag("--csv", vip_csv, "also write per-partition CSV");
  vip_cmd->callback([&] {
    Dataset d = load_dataset(vip_args);
    const FanoutSpec fanouts = FanoutSpec::parse(vip_fanouts);
    const TransitionModel tm{TransitionModel::Kind::uniform_fanout, fanouts};
    for (std::uint32_t k = 0; k < d.part.K; ++k) {
      const auto scores = propagate(d.graph, tm, initial_probs(d.roles, d.part, k, vip_b), k);
      write_vip_binary(scores, vip_prefix + "k" + std::to_string(k) + ".bin");
      if (vip_csv) write_vip_csv(scores, vip_prefix + "k" + std::to_string(k) + ".csv");
    }
    std::cout << "wrote " << d.part.K << " VIP vectors\n";
  });

  // --- rank ---
  auto* rank_cmd = app.add_subcommand("rank", "rank remote vertices per partition");
  DatasetArgs rank_args;
  add_dataset_options(rank_cmd, rank_args);
  std::string rank_policy = "vip", rank_fanouts, rank_prefix = "rank_";
  std::uint64_t rank_b = 0, rank_sim_epochs = 2, rank_seed = 0;
  rank_cmd->add_option("--policy", rank_policy, "deg|1hop|wpr|numpaths|sim|vip")->required();
  rank_cmd->add_option("--fanouts", rank_fanouts, "per-hop fanouts")->required();
  rank_cmd->add_option("--batch-size", rank_b, "minibatch size")->required();
  rank_cmd->add_option("--sim-epochs", rank_sim_epochs, "epochs for the sim policy");
  rank_cmd->add_option("--seed", rank_seed, "seed for the sim policy");
  rank_cmd->add_option("--out-prefix", rank_prefix, "output prefix (writes <prefix>k<k>.txt)");
  rank_cmd->callback([&] {
    Dataset d = load_dataset(rank_args);
    const FanoutSpec fanouts = FanoutSpec::parse(rank_fanouts);
    for (std::uint32_t k = 0; k < d.part.K; ++k) {
      const Ranking r = compute_ranking(rank_policy, d, k, fanouts, rank_b, rank_sim_epochs,
                                        SeedSpec{rank_seed});
      write_ranking(r, rank_prefix + "k" + std::to_string(k) + ".txt", rank_policy);
      if (r.effective_alpha >= 0)
        std::cout << "partition " << k << ": halo prefix corresponds to alpha="
                  << r.effective_alpha << "\n";
    }
    std::cout << "wrote " << d.part.K << " rankings\n";
  });

  // --- cache ---
  auto* cache_cmd = app.add_subcommand("cache", "build a static cache plan from rankings");
  DatasetArgs cache_args;
  add_dataset_options(cache_cmd, cache_args);
  std::string cache_prefix = "rank_", cache_dir = "cache";
  double cache_alpha = 0.0;
  std::uint64_t cache_seed = 0;
  cache_cmd->add_option("--ranking-prefix", cache_prefix, "ranking file prefix");
  cache_cmd->add_option("--alpha", cache_alpha, "replication factor")->required();
  cache_cmd->add_option("--seed", cache_seed, "seed recorded in the manifest");
  cache_cmd->add_option("--out-dir", cache_dir, "output directory");
  cache_cmd->callback([&] {
    Dataset d = load_dataset(cache_args);
    std::vector<Ranking> rankings;
    std::string policy = "?";
    for (std::uint32_t k = 0; k < d.part.K; ++k) {
      const std::string path = cache_prefix + "k" + std::to_string(k) + ".txt";
      std::ifstream in(path);
      if (!in) throw io_error("cannot open ranking " + path);
      Ranking r;
      r.partition = k;
      std::string line;
      while (std::getline(in, line)) {
        if (line.rfind("# policy=", 0) == 0) {
          policy = line.substr(9);
          continue;
        }
        if (line.empty() || line[0] == '#') continue;
        std::uint64_t v;
        double s;
        if (std::sscanf(line.c_str(), "%lu %lf", &v, &s) != 2)
          throw format_error(path + ": bad ranking line");
        r.order.push_back(static_cast<vertex_t>(v));
        r.score.push_back(s);
      }
      rankings.push_back(std::move(r));
    }
    const CachePlan plan = build_cache(rankings, cache_alpha, d.graph.num_vertices());
    write_cache_plan(plan, cache_dir, policy, cache_seed);
    std::cout << "wrote cache plan to " << cache_dir << "\n";
  });

  // --- simulate ---
  auto* sim_cmd = app.add_subcommand("simulate", "measure communication volume");
  std::string sim_spec, sim_out_dir;
  DatasetArgs sim_args;
  std::string sim_fanouts, sim_policy, sim_cache_dir, sim_trace, sim_costs;
  std::uint64_t sim_b = 0, sim_epochs = 0, sim_seed = 0, sim_sim_epochs = 2;
  double sim_alpha = 0.0, sim_gamma = -1.0;
  sim_cmd->add_option("--spec", sim_spec, "experiment spec JSON (full grid run)");
  sim_cmd->add_option("--out-dir", sim_out_dir, "override the spec's output directory");
  sim_cmd->add_option("--graph", sim_args.graph_path, "binary CSR graph");
  sim_cmd->add_option("--roles", sim_args.roles_path, "roles file");
  sim_cmd->add_option("--parts", sim_args.parts_path, "partition label file");
  sim_cmd->add_option("--fanouts", sim_fanouts, "per-hop fanouts");
  sim_cmd->add_option("--batch-size", sim_b, "minibatch size");
  sim_cmd->add_option("--epochs", sim_epochs, "evaluation epochs");
  sim_cmd->add_option("--seed", sim_seed, "evaluation seed");
  sim_cmd->add_option("--policy", sim_policy, "policy for a single-cell run");
  sim_cmd->add_option("--alpha", sim_alpha, "replication factor for a single-cell run");
  sim_cmd->add_option("--cache-dir", sim_cache_dir, "use a prebuilt cache plan instead");
  sim_cmd->add_option("--sim-epochs", sim_sim_epochs, "epochs for the sim policy");
  sim_cmd->add_option("--trace", sim_trace, "write the sampling trace CSV here");
  sim_cmd->add_option("--batch-costs", sim_costs, "write per-batch class counts CSV here");
  sim_cmd->add_option("--gamma", sim_gamma,
                      "GPU-resident fraction for batch costs (VIP ordering)");
  sim_cmd->callback([&] {
    if (!sim_spec.empty()) {
      ExperimentSpec spec = ExperimentSpec::from_json_file(sim_spec);
      if (!sim_out_dir.empty()) spec.out_dir = sim_out_dir;
      run_experiment(spec);
      std::cout << "experiment outputs in " << spec.out_dir << " (spec_hash=" << spec.hash()
                << ")\n";
      return;
    }
    if (sim_args.graph_path.empty() || sim_fanouts.empty() || sim_b == 0 || sim_epochs == 0)
      throw parameter_error("single-cell runs need --graph/--roles/--parts/--fanouts/--batch-size/--epochs");
    Dataset d = load_dataset(sim_args);
    const FanoutSpec fanouts = FanoutSpec::parse(sim_fanouts);
    const SeedSpec seeds{sim_seed};

    CachePlan plan = CachePlan::empty(d.part.K, d.graph.num_vertices());
    std::string policy_name = "nocache";
    if (!sim_cache_dir.empty()) {
      plan = load_cache_plan(sim_cache_dir, d.graph.num_vertices());
      policy_name = "cached";
    } else if (!sim_policy.empty()) {
      policy_name = sim_policy;
      std::vector<Ranking> rankings;
      if (sim_policy == "oracle") {
        // retrospective counts over the same seeded evaluation epochs
        std::vector<std::vector<double>> counts(d.part.K,
                                                std::vector<double>(d.graph.num_vertices(), 0.0));
        for (std::uint64_t e = 0; e < sim_epochs; ++e)
          for (std::uint32_t k = 0; k < d.part.K; ++k) {
            const auto batches = epoch_minibatches(d.roles, d.part, k, sim_b, e, seeds);
            for (std::size_t i = 0; i < batches.size(); ++i) {
              const auto nb = expand(d.graph, batches[i], fanouts, seeds, BatchRef{e, k, i});
              for (vertex_t v : nb.all_vertices) counts[k][v] += 1.0;
            }
          }
        for (std::uint32_t k = 0; k < d.part.K; ++k)
          rankings.push_back(rank_by_scores(d.part, k, counts[k]));
      } else {
        for (std::uint32_t k = 0; k < d.part.K; ++k)
          rankings.push_back(
              compute_ranking(sim_policy, d, k, fanouts, sim_b, sim_sim_epochs, seeds));
      }
      plan = build_cache(rankings, sim_alpha, d.graph.num_vertices());
    }

    SimulateOptions opts;
    std::ofstream trace_out, costs_out;
    if (!sim_trace.empty()) {
      trace_out.open(sim_trace, std::ios::trunc);
      trace_out << "epoch,partition,batch_index,vertex,hop\n";
      opts.trace = &trace_out;
    }
    std::vector<std::vector<vertex_t>> orderings;
    if (!sim_costs.empty()) {
      costs_out.open(sim_costs, std::ios::trunc);
      costs_out << "epoch,batch_index,partition,local_cpu,local_gpu,cache_hits,remote_misses\n";
      opts.batch_costs = &costs_out;
      if (sim_gamma >= 0.0) {
        const TransitionModel tm{TransitionModel::Kind::uniform_fanout, fanouts};
        orderings.resize(d.part.K);
        for (std::uint32_t k = 0; k < d.part.K; ++k) {
          const auto scores =
              propagate(d.graph, tm, initial_probs(d.roles, d.part, k, sim_b), k);
          orderings[k] = d.part.members[k];
          std::sort(orderings[k].begin(), orderings[k].end(), [&](vertex_t a, vertex_t b) {
            if (scores.total[a] != scores.total[b]) return scores.total[a] > scores.total[b];
            return a < b;
          });
        }
        opts.gpu_orderings = &orderings;
        opts.gamma = sim_gamma;
      }
    }
    CommReport report = simulate(d.graph, d.roles, d.part, fanouts, sim_b, sim_epochs, seeds,
                                 plan, opts);
    report.policy = policy_name;
    write_epoch_csv({report}, "comm_epochs.csv");
    write_summary_csv({report}, "comm_summary.csv");
    std::cout << "policy=" << policy_name << " alpha=" << plan.alpha
              << " avg_epoch_misses=" << report.avg_epoch_misses() << "\n";
  });

  // --- reorder ---
  auto* re_cmd = app.add_subcommand("reorder", "two-level VIP reordering of a dataset");
  DatasetArgs re_args;
  add_dataset_options(re_cmd, re_args);
  std::string re_vip_prefix = "vip_", re_out_prefix = "reordered_";
  re_cmd->add_option("--vip-prefix", re_vip_prefix, "per-partition VIP binary prefix");
  re_cmd->add_option("--out-prefix", re_out_prefix, "output prefix");
  re_cmd->callback([&] {
    Dataset d = load_dataset(re_args);
    std::vector<std::vector<double>> scores;
    for (std::uint32_t k = 0; k < d.part.K; ++k) {
      auto v = load_vip_binary(re_vip_prefix + "k" + std::to_string(k) + ".bin");
      if (v.size() != d.graph.num_vertices())
        throw shape_error("VIP vector length does not match graph");
      scores.push_back(std::move(v));
    }
    const ReorderMap map = build_reorder(d.part, scores);
    const ReorderedDataset out = apply_reorder(d.graph, d.roles, d.part, map);
    write_reorder_map(map, re_out_prefix + "map.txt");
    write_binary_csr(out.graph, re_out_prefix + "graph.vcsr");
    write_roles(out.roles, re_out_prefix + "roles.txt");
    write_partition_labels(out.part, re_out_prefix + "parts.txt");
    std::cout << "wrote reordered dataset with prefix " << re_out_prefix << "\n";
  });

  // --- pipeline ---
  auto* pipe_cmd = app.add_subcommand("pipeline", "discrete-event pipeline cost model");
  std::string pipe_costs, pipe_config, pipe_out = "timeline.csv";
  bool pipe_serial = false;
  pipe_cmd->add_option("--costs", pipe_costs, "batch-cost CSV from simulate")->required();
  pipe_cmd->add_option("--config", pipe_config, "cluster config JSON")->required();
  pipe_cmd->add_flag("--serial", pipe_serial, "disable pipelining (strictly serial batches)");
  pipe_cmd->add_option("--out", pipe_out, "timeline CSV output");
  pipe_cmd->callback([&] {
    const ClusterConfig cfg = ClusterConfig::from_json_file(pipe_config);
    const auto costs = load_batch_costs(pipe_costs, cfg.machines);
    const PipelineResult result = simulate_pipeline(costs, cfg, !pipe_serial);
    write_timeline_csv(result, pipe_out);
    std::printf("batches=%zu mode=%s makespan=%.6g\n", costs.size(),
                pipe_serial ? "serial" : "pipelined", result.makespan);
  });

  // --- report ---
  auto* rep_cmd = app.add_subcommand("report", "aggregate sweep CSVs into a summary table");
  std::string rep_summary, rep_geomean, rep_out_dir = ".";
  rep_cmd->add_option("--summary", rep_summary, "comm_summary.csv from simulate")->required();
  rep_cmd->add_option("--geomean", rep_geomean, "comm_geomean.csv (optional)");
  rep_cmd->add_option("--out-dir", rep_out_dir, "output directory");
  rep_cmd->callback([&] {
    const std::string hash = read_spec_hash(rep_summary);
    if (!rep_geomean.empty()) {
      const std::string gh = read_spec_hash(rep_geomean);
      if (gh != hash)
        throw config_error("refusing to mix artifacts: spec_hash mismatch between inputs");
    }
    std::ifstream in(rep_summary);
    if (!in) throw io_error("cannot open " + rep_summary);
    struct Row {
      std::string policy, fanouts;
      double alpha, avg_misses, improvement;
    };
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("policy,", 0) == 0) continue;
      Row r;
      char policy[64], fanouts[64];
      if (std::sscanf(line.c_str(), "%63[^,],%lf,%63[^,],%lf,%lf", policy, &r.alpha, fanouts,
                      &r.avg_misses, &r.improvement) != 5)
        throw format_error(rep_summary + ": bad summary row");
      r.policy = policy;
      r.fanouts = fanouts;
      rows.push_back(r);
    }

    std::filesystem::create_directories(rep_out_dir);
    std::set<std::string> fanout_set;
    std::vector<std::string> policies;
    std::set<double> alpha_set;
    for (const Row& r : rows) {
      fanout_set.insert(r.fanouts);
      alpha_set.insert(r.alpha);
      if (std::find(policies.begin(), policies.end(), r.policy) == policies.end())
        policies.push_back(r.policy);
    }

    std::ofstream txt(rep_out_dir + "/report.txt", std::ios::trunc);
    std::ofstream dat(rep_out_dir + "/fig3.dat", std::ios::trunc);
    if (!txt || !dat) throw io_error("cannot write report outputs");
    if (!hash.empty()) {
      txt << "# spec_hash=" << hash << '\n';
      dat << "# spec_hash=" << hash << '\n';
    }
    auto find_row = [&](const std::string& p, double a, const std::string& f) -> const Row* {
      for (const Row& r : rows)
        if (r.policy == p && r.alpha == a && r.fanouts == f) return &r;
      return nullptr;
    };
    char buf[64];
    for (const std::string& f : fanout_set) {
      txt << "fanouts " << f << " - average per-epoch remote misses\n";
      txt << "policy";
      for (double a : alpha_set) {
        std::snprintf(buf, sizeof(buf), "\talpha=%g", a);
        txt << buf;
      }
      txt << '\n';
      for (const std::string& p : policies) {
        txt << p;
        for (double a : alpha_set) {
          const Row* r = find_row(p, a, f);
          if (r)
            std::snprintf(buf, sizeof(buf), "\t%.10g", r->avg_misses);
          else
            std::snprintf(buf, sizeof(buf), "\t-");
          txt << buf;
        }
        txt << '\n';
      }
      txt << '\n';
      dat << "# fanouts " << f << '\n';
      dat << "alpha";
      for (const std::string& p : policies) dat << ' ' << p;
      dat << '\n';
      for (double a : alpha_set) {
        std::snprintf(buf, sizeof(buf), "%.10g", a);
        dat << buf;
        for (const std::string& p : policies) {
          const Row* r = find_row(p, a, f);
          if (r)
            std::snprintf(buf, sizeof(buf), " %.10g", r->avg_misses);
          else
            std::snprintf(buf, sizeof(buf), " nan");
          dat << buf;
        }
        dat << '\n';
      }
      dat << "\n\n";
    }

    std::ofstream gp(rep_out_dir + "/fig3.gp", std::ios::trunc);
    gp << "set logscale y\nset xlabel 'replication factor'\n"
          "set ylabel 'avg per-epoch remote misses'\nset key outside\n"
          "fanout_block = 0  # one data block per fanout config, see fig3.dat\n"
          "plot for [i=2:"
       << policies.size() + 1
       << "] 'fig3.dat' index fanout_block using 1:i with linespoints title columnheader(i)\n";
    std::cout << "wrote report to " << rep_out_dir << "\n";
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // worker count must be pinned before any subcommand callback runs
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--threads") set_thread_count(std::atoi(argv[i + 1]));
  try {
    return run(argc, argv);
  } catch (const vipkit::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
