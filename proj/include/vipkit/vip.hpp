#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vipkit/graph.hpp"
#include "vipkit/sampling.hpp"

namespace vipkit {

/// Hop-wise transition probability that a sampling vertex of the given
/// out-degree picks one fixed neighbor: min(1, f^h / deg). The kind field
/// leaves room for non-uniform samplers behind the same interface.
struct TransitionModel {
  enum class Kind { uniform_fanout };

  Kind kind = Kind::uniform_fanout;
  FanoutSpec fanouts;

  /// hop is 1-based; deg is the sampler's outgoing degree.
  double weight(std::size_t hop, std::uint64_t deg) const {
    const double f = static_cast<double>(fanouts.fanouts[hop - 1]);
    const double d = static_cast<double>(deg);
    return d <= f ? 1.0 : f / d;
  }
};

/// Per-partition inclusion probabilities: initial vector p0, hop-wise
/// vectors, and the combined total = 1 - prod_h (1 - hop[h]).
struct VipScores {
  std::uint32_t partition = 0;
  std::vector<double> p0;
  std::vector<std::vector<double>> hop;
  std::vector<double> total;
};

/// p0(u) = min(1, b/|T_k|) on partition-k train vertices, 0 elsewhere.
std::vector<double> initial_probs(const VertexRoles& roles, const PartitionMap& part,
                                  std::uint32_t k, std::uint64_t b);

/// Hop-wise probability propagation. Each hop is one sweep over the reverse
/// adjacency (the product for u runs over the vertices that can sample u),
/// accumulated in log space to survive very high degrees. O(L(m+n)).
VipScores propagate(const Graph& g, const TransitionModel& tm, std::vector<double> p0,
                    std::uint32_t partition = 0);

/// Empirical inclusion frequency: the fraction of simulated minibatches
/// (over S epochs of partition k) whose expanded neighborhood contains each
/// vertex. Streams are derived from `seeds` under a dedicated tag, so they
/// are disjoint from any evaluation run sharing the same seed.
std::vector<double> empirical_vip(const Graph& g, const VertexRoles& roles,
                                  const PartitionMap& part, std::uint32_t k, std::uint64_t b,
                                  const FanoutSpec& fanouts, std::uint64_t S,
                                  const SeedSpec& seeds);

/// n x f64 little-endian totals, one file per partition.
void write_vip_binary(const VipScores& scores, const std::string& path);
std::vector<double> load_vip_binary(const std::string& path);

/// CSV: vertex,total,hop1..hopL
void write_vip_csv(const VipScores& scores, const std::string& path);

}  // namespace vipkit
