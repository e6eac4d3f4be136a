#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "vipkit/graph.hpp"
#include "vipkit/rng.hpp"

namespace vipkit {

/// Per-hop sample budgets, first entry nearest the minibatch.
struct FanoutSpec {
  std::vector<std::uint32_t> fanouts;

  std::size_t hops() const { return fanouts.size(); }
  void validate() const;
  std::string label() const;  // e.g. "15-10-5"
  static FanoutSpec parse(const std::string& s);
};

/// Result of one L-hop neighborhood expansion. frontier[h-1] holds the
/// distinct vertices sampled exactly h hops out; all_vertices is the sorted
/// distinct union of the batch and every frontier.
struct ExpandedNeighborhood {
  std::vector<vertex_t> batch;
  std::vector<std::vector<vertex_t>> frontier;
  std::vector<vertex_t> all_vertices;
};

/// Identifies one minibatch for stream keying.
struct BatchRef {
  std::uint64_t epoch = 0;
  std::uint32_t partition = 0;
  std::uint64_t batch_index = 0;
};

/// Seeded uniform permutation of partition-k train vertices, chunked into
/// ceil(|T_k|/b) batches; the final batch may be smaller. When seed_keys is
/// given, vertices are keyed by seed_keys[v] instead of v (used to replay
/// sampling across relabelings).
std::vector<std::vector<vertex_t>> epoch_minibatches(const VertexRoles& roles,
                                                     const PartitionMap& part, std::uint32_t k,
                                                     std::uint64_t b, std::uint64_t epoch,
                                                     const SeedSpec& seeds,
                                                     const std::vector<vertex_t>* seed_keys = nullptr);

/// Uniform without-replacement subset of at most `fanout` out-neighbors of v.
/// Each neighbor lands in the result with marginal probability
/// min(1, fanout/deg(v)). Appends to `out`. When seed_keys is given, the
/// draw is taken over the neighbors in seed-key order, so a relabeled graph
/// replays the same underlying subsets.
void sample_neighbors(const Graph& g, vertex_t v, std::uint32_t fanout, RngStream& stream,
                      std::vector<vertex_t>& out,
                      const std::vector<vertex_t>* seed_keys = nullptr);

/// The node-wise expansion process: starting from the batch, each frontier
/// vertex samples at most f^h out-neighbors; the deduplicated union becomes
/// the next frontier. Streams are keyed per (epoch, partition, batch, hop,
/// vertex), so the result is independent of traversal or thread order.
ExpandedNeighborhood expand(const Graph& g, std::span<const vertex_t> batch,
                            const FanoutSpec& fanouts, const SeedSpec& seeds, const BatchRef& ref,
                            const std::vector<vertex_t>* seed_keys = nullptr);

/// Trace row format: epoch,partition,batch_index,vertex,hop (hop 0 = batch).
void append_trace(std::ostream& out, const BatchRef& ref, const ExpandedNeighborhood& nb);

}  // namespace vipkit
