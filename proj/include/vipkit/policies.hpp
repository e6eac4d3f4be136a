#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vipkit/graph.hpp"
#include "vipkit/vip.hpp"

namespace vipkit {

/// Full ordering of partition-k remote vertices by decreasing score, ties by
/// ascending id; zero-score vertices form the tail so any prefix length is
/// well defined. `score[i]` belongs to `order[i]`.
struct Ranking {
  std::uint32_t partition = 0;
  std::vector<vertex_t> order;
  std::vector<double> score;
  /// Set by the 1-hop halo policy: the replication factor its natural prefix
  /// corresponds to (|halo| * K / n). Negative when not applicable.
  double effective_alpha = -1.0;
};

/// Remote vertices reachable within L forward hops of partition-k train
/// vertices, by decreasing out-degree; unreachable remotes trail with
/// score 0.
Ranking rank_degree(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                    std::uint32_t k, std::size_t L);

/// The 1-hop halo: remote vertices adjacent to any partition-k vertex.
Ranking rank_halo_1hop(const Graph& g, const PartitionMap& part, std::uint32_t k);

/// Weighted reverse-PageRank baseline: power iteration r <- (1-d)e + d W r
/// on the sampling-direction graph, restart vector uniform over partition-k
/// train vertices, hop-1 transition weights row-normalized per sampler;
/// dangling mass is redistributed to the restart vector.
Ranking rank_wpr(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                 std::uint32_t k, const TransitionModel& tm, std::uint32_t iters = 5,
                 double damping = 0.85);

/// Number of walks of length <= L from any partition-k train vertex,
/// counted in f64 (overflow saturates; counts only feed a sort).
Ranking rank_numpaths(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                      std::uint32_t k, std::size_t L);

/// Generic score ranking used by the sim., VIP, and oracle policies.
Ranking rank_by_scores(const PartitionMap& part, std::uint32_t k, std::span<const double> scores);

/// Per-partition static caches: the first min(floor(alpha*n/K), #remote)
/// vertices of each ranking, with O(1) membership lookup.
struct CachePlan {
  std::uint32_t K = 1;
  double alpha = 0.0;
  std::vector<std::vector<vertex_t>> cached;
  std::vector<std::vector<std::uint64_t>> member_bits;

  bool is_cached(std::uint32_t k, vertex_t v) const {
    return (member_bits[k][v >> 6] >> (v & 63)) & 1u;
  }
  static CachePlan empty(std::uint32_t K, std::size_t n);
};

CachePlan build_cache(const std::vector<Ranking>& rankings, double alpha, std::size_t n);

/// Per-partition id lists (one per line) plus a JSON manifest
/// {policy, alpha, K, seed, [spec_hash]}.
void write_cache_plan(const CachePlan& plan, const std::string& dir, const std::string& policy,
                      std::uint64_t seed, const std::string& spec_hash = "");
CachePlan load_cache_plan(const std::string& dir, std::size_t n);

}  // namespace vipkit
