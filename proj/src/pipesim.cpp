#include "vipkit/pipesim.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <queue>

#include <json.hpp>

#include "vipkit/error.hpp"

namespace vipkit {

const char* to_string(PipeResource r) {
  switch (r) {
    case PipeResource::sampler: return "cpu_sampler";
    case PipeResource::nic: return "nic";
    case PipeResource::pcie: return "pcie";
    case PipeResource::cpu_slice: return "cpu_slice";
    case PipeResource::gpu: return "gpu";
  }
  return "?";
}

void ClusterConfig::validate() const {
  if (machines < 1) throw config_error("cluster needs at least one machine");
  if (net_bandwidth <= 0 || pci_bandwidth <= 0 || cpu_slice_bandwidth <= 0 ||
      gpu_slice_bandwidth <= 0 || sampler_batches_per_s <= 0)
    throw config_error("all rates must be positive");
  if (net_latency < 0 || pci_latency < 0 || gpu_batch_time_s < 0 || feature_bytes < 0 ||
      metadata_bytes < 0)
    throw config_error("latencies and sizes must be non-negative");
  if (max_in_flight < 1) throw config_error("max_in_flight must be >= 1");
}

ClusterConfig ClusterConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open cluster config: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  ClusterConfig cfg;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("machines", cfg.machines);
  get("net_bandwidth_bytes_per_s", cfg.net_bandwidth);
  get("net_latency_s", cfg.net_latency);
  get("pci_bandwidth_bytes_per_s", cfg.pci_bandwidth);
  get("pci_latency_s", cfg.pci_latency);
  get("sampler_batches_per_s", cfg.sampler_batches_per_s);
  get("gpu_batch_time_s", cfg.gpu_batch_time_s);
  get("cpu_slice_bandwidth_bytes_per_s", cfg.cpu_slice_bandwidth);
  get("gpu_slice_bandwidth_bytes_per_s", cfg.gpu_slice_bandwidth);
  get("feature_bytes", cfg.feature_bytes);
  get("metadata_bytes_per_partition", cfg.metadata_bytes);
  get("max_in_flight", cfg.max_in_flight);
  cfg.validate();
  return cfg;
}

std::string ClusterConfig::to_json() const {
  nlohmann::json j{{"machines", machines},
                   {"net_bandwidth_bytes_per_s", net_bandwidth},
                   {"net_latency_s", net_latency},
                   {"pci_bandwidth_bytes_per_s", pci_bandwidth},
                   {"pci_latency_s", pci_latency},
                   {"sampler_batches_per_s", sampler_batches_per_s},
                   {"gpu_batch_time_s", gpu_batch_time_s},
                   {"cpu_slice_bandwidth_bytes_per_s", cpu_slice_bandwidth},
                   {"gpu_slice_bandwidth_bytes_per_s", gpu_slice_bandwidth},
                   {"feature_bytes", feature_bytes},
                   {"metadata_bytes_per_partition", metadata_bytes},
                   {"max_in_flight", max_in_flight}};
  return j.dump(2);
}

double PipelineResult::serial_total() const {
  double s = 0.0;
  for (const StageEvent& e : events) s += e.end - e.start;
  return s;
}

namespace {

struct StageDef {
  std::uint8_t stage;
  PipeResource resource;
  double duration;
};

std::uint64_t max_count(const std::vector<std::uint64_t>& xs) {
  std::uint64_t m = 0;
  for (std::uint64_t x : xs) m = std::max(m, x);
  return m;
}

// Stage bindings: 1 sampler; 2,4,9 NIC all-to-all; 3,5,7 PCIe; 6 CPU slice;
// 8,10 GPU; model compute appended on GPU. Stages 2-5 move fixed-size
// metadata; 6-10 move feature bytes scaled by the batch's class counts.
std::vector<StageDef> stage_table(const BatchCost& cost, const ClusterConfig& cfg) {
  const double K = cfg.machines;
  const double meta = K > 1 ? cfg.metadata_bytes * (K - 1) : 0.0;
  const double nic_meta = K > 1 ? cfg.net_latency + meta / cfg.net_bandwidth : 0.0;
  const double pci_meta = K > 1 ? cfg.pci_latency + meta / cfg.pci_bandwidth : 0.0;

  const double cpu_bytes = static_cast<double>(max_count(cost.local_cpu)) * cfg.feature_bytes;
  const double gpu_bytes = static_cast<double>(max_count(cost.local_gpu) +
                                               max_count(cost.cache_hit)) *
                           cfg.feature_bytes;
  const double miss_bytes = static_cast<double>(max_count(cost.remote_miss)) * cfg.feature_bytes;

  std::vector<StageDef> stages;
  stages.push_back({1, PipeResource::sampler, 1.0 / cfg.sampler_batches_per_s});
  stages.push_back({2, PipeResource::nic, nic_meta});
  stages.push_back({3, PipeResource::pcie, pci_meta});
  stages.push_back({4, PipeResource::nic, nic_meta});
  stages.push_back({5, PipeResource::pcie, pci_meta});
  stages.push_back({6, PipeResource::cpu_slice, cpu_bytes / cfg.cpu_slice_bandwidth});
  stages.push_back({7, PipeResource::pcie,
                    cpu_bytes > 0 ? cfg.pci_latency + cpu_bytes / cfg.pci_bandwidth : 0.0});
  stages.push_back({8, PipeResource::gpu, gpu_bytes / cfg.gpu_slice_bandwidth});
  stages.push_back({9, PipeResource::nic,
                    miss_bytes > 0 && K > 1 ? cfg.net_latency + miss_bytes / cfg.net_bandwidth
                                            : 0.0});
  stages.push_back({10, PipeResource::gpu, miss_bytes / cfg.gpu_slice_bandwidth});
  stages.push_back({11, PipeResource::gpu, cfg.gpu_batch_time_s});
  return stages;
}

}  // namespace

// Event-driven schedule: every resource is exclusive and work-conserving,
// serving pending stage requests in arrival order (ties by batch, then
// stage). A batch's next stage becomes pending the instant the previous one
// completes; admission opens a slot per completed batch. Serial mode is the
// same machinery with a window of one.
PipelineResult simulate_pipeline(const std::vector<BatchCost>& costs, const ClusterConfig& cfg,
                                 bool pipelined) {
  cfg.validate();
  if (costs.empty()) throw parameter_error("pipeline simulation needs at least one batch");

  const std::size_t n_batches = costs.size();
  std::vector<std::vector<StageDef>> stages;
  stages.reserve(n_batches);
  for (const BatchCost& c : costs) stages.push_back(stage_table(c, cfg));
  const std::uint32_t window =
      pipelined ? std::min<std::uint32_t>(cfg.max_in_flight, static_cast<std::uint32_t>(n_batches))
                : 1;

  struct Pending {
    double arrival;
    std::uint32_t batch;
    std::uint8_t stage_pos;
    bool operator>(const Pending& o) const {
      if (arrival != o.arrival) return arrival > o.arrival;
      if (batch != o.batch) return batch > o.batch;
      return stage_pos > o.stage_pos;
    }
  };
  struct Completion {
    double time;
    std::uint64_t seq;
    std::uint32_t batch;
    std::uint8_t stage_pos;
    std::size_t resource;
    bool operator>(const Completion& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };

  std::array<std::priority_queue<Pending, std::vector<Pending>, std::greater<>>,
             kNumPipeResources>
      queue;
  std::array<bool, kNumPipeResources> busy_now{};
  std::priority_queue<Completion, std::vector<Completion>, std::greater<>> events;
  std::uint64_t seq = 0;

  PipelineResult result;
  auto maybe_start = [&](std::size_t r, double now) {
    if (busy_now[r] || queue[r].empty()) return;
    const Pending p = queue[r].top();
    queue[r].pop();
    const StageDef& def = stages[p.batch][p.stage_pos];
    const double start = std::max(now, p.arrival);
    busy_now[r] = true;
    result.busy[r] += def.duration;
    result.events.push_back({p.batch, def.stage, def.resource, start, start + def.duration});
    events.push({start + def.duration, seq++, p.batch, p.stage_pos, r});
  };
  auto arrive = [&](std::uint32_t batch, std::uint8_t stage_pos, double now) {
    const std::size_t r = static_cast<std::size_t>(stages[batch][stage_pos].resource);
    queue[r].push({now, batch, stage_pos});
    maybe_start(r, now);
  };

  std::uint32_t next_admit = 0;
  for (; next_admit < window; ++next_admit) arrive(next_admit, 0, 0.0);

  while (!events.empty()) {
    const Completion done = events.top();
    events.pop();
    busy_now[done.resource] = false;
    if (done.stage_pos + 1u < stages[done.batch].size()) {
      arrive(done.batch, static_cast<std::uint8_t>(done.stage_pos + 1), done.time);
    } else {
      result.makespan = std::max(result.makespan, done.time);
      if (next_admit < n_batches) arrive(next_admit++, 0, done.time);
    }
    maybe_start(done.resource, done.time);
  }
  return result;
}

std::vector<BatchCost> load_batch_costs(const std::string& path, std::uint32_t K) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open batch costs: " + path);
  std::map<std::pair<std::uint64_t, std::uint64_t>, BatchCost> by_batch;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("epoch,", 0) == 0) continue;  // header
    std::uint64_t e, b, k, lc, lg, ch, rm;
    if (std::sscanf(line.c_str(), "%lu,%lu,%lu,%lu,%lu,%lu,%lu", &e, &b, &k, &lc, &lg, &ch, &rm) !=
        7)
      throw format_error(path + ":" + std::to_string(lineno) + ": bad batch-cost row");
    if (k >= K) throw format_error(path + ":" + std::to_string(lineno) + ": partition >= K");
    auto& cost = by_batch[{e, b}];
    if (cost.local_cpu.empty()) {
      cost.local_cpu.assign(K, 0);
      cost.local_gpu.assign(K, 0);
      cost.cache_hit.assign(K, 0);
      cost.remote_miss.assign(K, 0);
    }
    cost.local_cpu[k] = lc;
    cost.local_gpu[k] = lg;
    cost.cache_hit[k] = ch;
    cost.remote_miss[k] = rm;
  }
  std::vector<BatchCost> costs;
  costs.reserve(by_batch.size());
  for (auto& [key, cost] : by_batch) costs.push_back(std::move(cost));
  return costs;
}

void write_timeline_csv(const PipelineResult& result, const std::string& path,
                        const std::string& spec_hash) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  if (!spec_hash.empty()) out << "# spec_hash=" << spec_hash << '\n';
  out << "batch,stage,start,end,resource\n";
  char buf[96];
  for (const StageEvent& e : result.events) {
    std::snprintf(buf, sizeof(buf), "%u,%u,%.10g,%.10g,%s\n", e.batch, e.stage, e.start, e.end,
                  to_string(e.resource));
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "# makespan=%.10g\n", result.makespan);
  out << buf;
  for (std::size_t r = 0; r < kNumPipeResources; ++r) {
    std::snprintf(buf, sizeof(buf), "# busy_%s=%.10g\n",
                  to_string(static_cast<PipeResource>(r)), result.busy[r]);
    out << buf;
  }
}

}  // namespace vipkit
