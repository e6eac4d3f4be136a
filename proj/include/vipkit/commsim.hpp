#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "vipkit/policies.hpp"
#include "vipkit/sampling.hpp"

namespace vipkit {

/// Per-policy, per-alpha communication tallies. Counts are distinct
/// vertices per minibatch, summed over the minibatches of each
/// (epoch, partition) cell.
struct CommReport {
  std::string policy;
  double alpha = 0.0;
  std::string fanout_label;
  std::uint64_t epochs = 0;
  std::uint32_t partitions = 0;

  struct Cell {
    std::uint64_t local_hits = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t remote_misses = 0;
  };
  std::vector<Cell> cells;  // epoch-major: cells[e * partitions + k]

  Cell& at(std::uint64_t e, std::uint32_t k) { return cells[e * partitions + k]; }
  const Cell& at(std::uint64_t e, std::uint32_t k) const { return cells[e * partitions + k]; }

  std::uint64_t total_misses() const;
  std::uint64_t total_cache_hits() const;
  std::uint64_t total_local_hits() const;
  double avg_epoch_misses() const;

  double improvement_vs_nocache = std::numeric_limits<double>::quiet_NaN();
};

struct SimulateOptions {
  std::ostream* trace = nullptr;        // sampling trace CSV rows
  std::ostream* batch_costs = nullptr;  // per-batch class counts CSV rows
  const std::vector<vertex_t>* seed_keys = nullptr;
  // GPU-prefix split for batch-cost rows: per-partition orderings of local
  // vertices plus the resident fraction. Empty = everything on CPU.
  const std::vector<std::vector<vertex_t>>* gpu_orderings = nullptr;
  double gamma = 0.0;
};

/// One epoch-level measurement run: expands every minibatch of every
/// partition for E epochs and classifies each distinct neighborhood vertex
/// as local, cache hit, or remote miss. Expansion depends only on the seeds,
/// never on the plan, so runs are comparable across policies and alphas.
CommReport simulate(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                    const FanoutSpec& fanouts, std::uint64_t b, std::uint64_t E,
                    const SeedSpec& seeds, const CachePlan& plan,
                    const SimulateOptions& opts = {});

inline const std::vector<std::string> kAllPolicies = {"deg", "1hop",   "wpr", "numpaths",
                                                      "sim", "vip", "oracle"};

struct SweepConfig {
  std::vector<FanoutSpec> fanouts;
  std::uint64_t batch_size = 0;
  std::uint64_t epochs = 0;
  std::vector<double> alphas;
  std::vector<std::string> policies;
  SeedSpec seeds;
  std::uint64_t sim_epochs = 2;  // epochs behind the "sim" policy estimate
};

struct SweepResult {
  std::vector<CommReport> reports;
  struct Geomean {
    std::string policy;
    double alpha;
    double geomean_improvement;
  };
  std::vector<Geomean> geomeans;
};

/// Full policy x alpha x fanout grid. The oracle policy is computed from a
/// first pass over the same seeded epochs (retrospective access counts);
/// the no-cache baseline for improvement ratios is the alpha=0 run.
SweepResult sweep(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                  const SweepConfig& cfg);

struct H2dReport {
  std::uint64_t total_transfers = 0;
  std::vector<std::uint64_t> per_epoch;
};

/// Host-to-device transfer count for partition k under a local-vertex
/// ordering with the first floor(gamma*|members_k|) positions GPU-resident.
H2dReport h2d_volume(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                     std::uint32_t k, std::span<const vertex_t> ordering, double gamma,
                     const FanoutSpec& fanouts, std::uint64_t b, std::uint64_t E,
                     const SeedSpec& seeds);

double geometric_mean(std::span<const double> xs);

// CSV emission; a non-empty spec_hash is embedded as a leading comment.
void write_epoch_csv(const std::vector<CommReport>& reports, const std::string& path,
                     const std::string& spec_hash = "");
void write_summary_csv(const std::vector<CommReport>& reports, const std::string& path,
                       const std::string& spec_hash = "");
void write_geomean_csv(const SweepResult& result, const std::string& path,
                       const std::string& spec_hash = "");

}  // namespace vipkit
