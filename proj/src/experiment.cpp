#include "vipkit/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "vipkit/error.hpp"
#include "vipkit/reorder.hpp"
#include "vipkit/vip.hpp"

namespace vipkit {

using nlohmann::json;

std::string content_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_spec_hash(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) return "";
  const std::string prefix = "# spec_hash=";
  if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  return "";
}

namespace {

std::string method_name(PartitionMethod m) {
  switch (m) {
    case PartitionMethod::random: return "random";
    case PartitionMethod::bfs_greedy: return "bfs_greedy";
    case PartitionMethod::from_file: return "from_file";
  }
  return "?";
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  ExperimentSpec spec;

  const json& jg = j.at("graph");
  if (jg.contains("path")) {
    spec.synthetic = false;
    spec.graph_path = jg.at("path").get<std::string>();
  } else {
    spec.synthetic = true;
    spec.kind = synth_kind_from_string(jg.at("kind").get<std::string>());
    spec.gparams.n = jg.at("n").get<std::uint64_t>();
    if (jg.contains("d")) spec.gparams.d = jg.at("d").get<std::uint64_t>();
    if (jg.contains("seed")) spec.gparams.seed = jg.at("seed").get<std::uint64_t>();
  }

  const json& jr = j.at("roles");
  if (jr.contains("path")) {
    spec.roles_path = jr.at("path").get<std::string>();
  } else {
    spec.train_frac = jr.at("train_frac").get<double>();
    if (jr.contains("valid_frac")) spec.valid_frac = jr.at("valid_frac").get<double>();
    if (jr.contains("test_frac")) spec.test_frac = jr.at("test_frac").get<double>();
    if (jr.contains("seed")) spec.roles_seed = jr.at("seed").get<std::uint64_t>();
  }

  const json& jp = j.at("partition");
  spec.K = jp.at("K").get<std::uint32_t>();
  if (jp.contains("path")) {
    spec.method = PartitionMethod::from_file;
    spec.parts_path = jp.at("path").get<std::string>();
  } else {
    spec.method = partition_method_from_string(jp.at("method").get<std::string>());
    if (jp.contains("seed")) spec.part_seed = jp.at("seed").get<std::uint64_t>();
  }

  for (const json& f : j.at("fanouts")) {
    FanoutSpec fs;
    for (const json& x : f) fs.fanouts.push_back(x.get<std::uint32_t>());
    fs.validate();
    spec.fanouts.push_back(std::move(fs));
  }
  spec.batch_size = j.at("batch_size").get<std::uint64_t>();
  spec.epochs = j.at("epochs").get<std::uint64_t>();
  spec.alphas = j.at("alphas").get<std::vector<double>>();
  spec.policies = j.contains("policies") ? j.at("policies").get<std::vector<std::string>>()
                                         : kAllPolicies;
  if (j.contains("gammas")) spec.gammas = j.at("gammas").get<std::vector<double>>();
  if (j.contains("sim_epochs")) spec.sim_epochs = j.at("sim_epochs").get<std::uint64_t>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out_dir")) spec.out_dir = j.at("out_dir").get<std::string>();
  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open experiment spec: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

std::string ExperimentSpec::to_canonical_json() const {
  json jg;
  if (synthetic) {
    jg["kind"] = to_string(kind);
    jg["n"] = gparams.n;
    jg["d"] = gparams.d;
    jg["seed"] = gparams.seed;
  } else {
    jg["path"] = graph_path;
  }
  json jr;
  if (!roles_path.empty()) {
    jr["path"] = roles_path;
  } else {
    jr["train_frac"] = train_frac;
    jr["valid_frac"] = valid_frac;
    jr["test_frac"] = test_frac;
    jr["seed"] = roles_seed;
  }
  json jp;
  jp["K"] = K;
  if (method == PartitionMethod::from_file) {
    jp["path"] = parts_path;
  } else {
    jp["method"] = method_name(method);
    jp["seed"] = part_seed;
  }
  json jf = json::array();
  for (const FanoutSpec& f : fanouts) jf.push_back(f.fanouts);
  json j{{"graph", jg},
         {"roles", jr},
         {"partition", jp},
         {"fanouts", jf},
         {"batch_size", batch_size},
         {"epochs", epochs},
         {"alphas", alphas},
         {"policies", policies},
         {"gammas", gammas},
         {"sim_epochs", sim_epochs},
         {"seed", seed}};
  // out_dir intentionally excluded: moving outputs does not change identity
  return j.dump();
}

std::string ExperimentSpec::hash() const { return content_hash(to_canonical_json()); }

void ExperimentSpec::validate() const {
  if (fanouts.empty()) throw parameter_error("experiment needs at least one fanout config");
  if (batch_size < 1) throw parameter_error("batch size must be >= 1");
  if (epochs < 1) throw parameter_error("epochs must be >= 1");
  if (alphas.empty()) throw parameter_error("experiment needs at least one alpha");
  for (double a : alphas)
    if (a < 0) throw parameter_error("replication factor must be >= 0");
  for (double gm : gammas)
    if (!(gm >= 0 && gm <= 1)) throw parameter_error("gamma must lie in [0,1]");
  if (policies.empty()) throw parameter_error("experiment needs at least one policy");
  if (K < 1) throw parameter_error("K must be >= 1");
}

ExperimentData load_experiment_data(const ExperimentSpec& spec) {
  ExperimentData data;
  data.graph = spec.synthetic ? generate_synthetic(spec.kind, spec.gparams)
                              : load_binary_csr(spec.graph_path);
  const std::size_t n = data.graph.num_vertices();
  data.roles = spec.roles_path.empty()
                   ? make_roles(n, spec.train_frac, spec.valid_frac, spec.test_frac,
                                spec.roles_seed)
                   : load_roles(spec.roles_path);
  if (data.roles.size() != n) throw format_error("roles length does not match vertex count");
  data.part = spec.method == PartitionMethod::from_file
                  ? partition_from_file(spec.parts_path, spec.K, n)
                  : partition_graph(data.graph, data.roles, spec.K, spec.method, spec.part_seed);
  return data;
}

void run_experiment(const ExperimentSpec& spec) {
  const std::string hash = spec.hash();
  const ExperimentData data = load_experiment_data(spec);

  SweepConfig cfg;
  cfg.fanouts = spec.fanouts;
  cfg.batch_size = spec.batch_size;
  cfg.epochs = spec.epochs;
  cfg.alphas = spec.alphas;
  cfg.policies = spec.policies;
  cfg.seeds = SeedSpec{spec.seed};
  cfg.sim_epochs = spec.sim_epochs;
  const SweepResult result = sweep(data.graph, data.roles, data.part, cfg);

  std::filesystem::create_directories(spec.out_dir);
  write_epoch_csv(result.reports, spec.out_dir + "/comm_epochs.csv", hash);
  write_summary_csv(result.reports, spec.out_dir + "/comm_summary.csv", hash);
  write_geomean_csv(result, spec.out_dir + "/comm_geomean.csv", hash);

  if (!spec.gammas.empty()) {
    std::ofstream out(spec.out_dir + "/h2d.csv", std::ios::trunc);
    if (!out) throw io_error("cannot write h2d.csv");
    out << "# spec_hash=" << hash << '\n';
    out << "fanouts,gamma,ordering,partition,total_transfers\n";
    char buf[40];
    for (const FanoutSpec& fanouts : spec.fanouts) {
      const TransitionModel tm{TransitionModel::Kind::uniform_fanout, fanouts};
      // VIP ordering of each partition's local vertices vs. the id order
      std::vector<std::vector<vertex_t>> vip_order(spec.K), id_order(spec.K);
      for (std::uint32_t k = 0; k < spec.K; ++k) {
        const auto scores =
            propagate(data.graph, tm, initial_probs(data.roles, data.part, k, spec.batch_size), k);
        std::vector<vertex_t> ord = data.part.members[k];
        std::sort(ord.begin(), ord.end(), [&](vertex_t a, vertex_t b) {
          if (scores.total[a] != scores.total[b]) return scores.total[a] > scores.total[b];
          return a < b;
        });
        vip_order[k] = std::move(ord);
        id_order[k] = data.part.members[k];
      }
      for (double gamma : spec.gammas)
        for (std::uint32_t k = 0; k < spec.K; ++k) {
          std::snprintf(buf, sizeof(buf), "%.10g", gamma);
          const auto vip_count =
              h2d_volume(data.graph, data.roles, data.part, k, vip_order[k], gamma, fanouts,
                         spec.batch_size, spec.epochs, cfg.seeds);
          const auto id_count =
              h2d_volume(data.graph, data.roles, data.part, k, id_order[k], gamma, fanouts,
                         spec.batch_size, spec.epochs, cfg.seeds);
          out << fanouts.label() << ',' << buf << ",vip," << k << ',' << vip_count.total_transfers
              << '\n';
          out << fanouts.label() << ',' << buf << ",identity," << k << ','
              << id_count.total_transfers << '\n';
        }
    }
  }

  json manifest{{"spec", json::parse(spec.to_canonical_json())}, {"spec_hash", hash}};
  std::ofstream mf(spec.out_dir + "/manifest.json", std::ios::trunc);
  mf << manifest.dump(2) << '\n';
}

}  // namespace vipkit
