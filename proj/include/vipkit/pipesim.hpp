#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vipkit/error.hpp"

namespace vipkit {

/// Resources the pipeline stages bind to. Each is exclusive and FIFO.
enum class PipeResource : std::uint8_t { sampler = 0, nic = 1, pcie = 2, cpu_slice = 3, gpu = 4 };
constexpr std::size_t kNumPipeResources = 5;
const char* to_string(PipeResource r);

struct ClusterConfig {
  std::uint32_t machines = 1;
  double net_bandwidth = 3.125e9;       // bytes/s per machine
  double net_latency = 5e-5;            // s per all-to-all round
  double pci_bandwidth = 1.2e10;        // bytes/s
  double pci_latency = 1e-5;            // s per transfer
  double sampler_batches_per_s = 50.0;  // CPU batch preparation throughput
  double gpu_batch_time_s = 0.02;       // model compute per batch
  double cpu_slice_bandwidth = 8e9;     // bytes/s for CPU-side tensor slicing
  double gpu_slice_bandwidth = 2e11;    // bytes/s for GPU-side slicing/joins
  double feature_bytes = 1024.0;        // bytes per vertex feature vector
  double metadata_bytes = 64.0;         // bytes per partition for stages 2-5
  std::uint32_t max_in_flight = 10;

  void validate() const;
  static ClusterConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

/// Distinct-vertex counts per machine for one distributed minibatch,
/// by storage class. Taken from commsim batch-cost rows.
struct BatchCost {
  std::vector<std::uint64_t> local_cpu;
  std::vector<std::uint64_t> local_gpu;
  std::vector<std::uint64_t> cache_hit;
  std::vector<std::uint64_t> remote_miss;
};

struct StageEvent {
  std::uint32_t batch;
  std::uint8_t stage;  // 1..10, 11 = model compute
  PipeResource resource;
  double start;
  double end;
};

struct PipelineResult {
  double makespan = 0.0;
  std::array<double, kNumPipeResources> busy{};
  std::vector<StageEvent> events;

  double serial_total() const;  // sum of all stage durations
};

/// Walks every batch through the 10 preparation stages plus model compute.
/// Stage service times derive from the batch's class counts and the cluster
/// rates; all-to-all stages synchronize the K machines, so their round time
/// is latency + max over machines of send bytes / bandwidth. When pipelined,
/// up to max_in_flight batches occupy distinct stages with exclusive FIFO
/// resources; otherwise batches run strictly serially.
PipelineResult simulate_pipeline(const std::vector<BatchCost>& costs, const ClusterConfig& cfg,
                                 bool pipelined);

/// Reads commsim batch-cost rows (epoch,batch_index,partition,local_cpu,
/// local_gpu,cache_hits,remote_misses) into per-minibatch costs; partitions
/// missing from a batch contribute zero counts.
std::vector<BatchCost> load_batch_costs(const std::string& path, std::uint32_t K);

/// CSV: batch,stage,start,end,resource plus a trailing summary row.
void write_timeline_csv(const PipelineResult& result, const std::string& path,
                        const std::string& spec_hash = "");

}  // namespace vipkit
