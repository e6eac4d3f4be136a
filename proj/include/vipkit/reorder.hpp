#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vipkit/graph.hpp"

namespace vipkit {

/// Two-level relabeling: partitions become contiguous id ranges ordered by
/// partition index, and each partition's vertices are ordered by decreasing
/// score (ties by ascending old id). A machine keeps a prefix of its range
/// on the GPU.
struct ReorderMap {
  std::vector<vertex_t> new_of_old;
  std::vector<vertex_t> old_of_new;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;  // [start_k, end_k)

  std::size_t size() const { return new_of_old.size(); }
};

/// scores[k] is partition k's score vector over all n vertices; only the
/// entries of partition-k members are consulted.
ReorderMap build_reorder(const PartitionMap& part,
                         const std::vector<std::vector<double>>& scores);

struct ReorderedDataset {
  Graph graph;
  VertexRoles roles;
  PartitionMap part;
};

/// Relabels the graph, roles, and partition map; the result is isomorphic
/// to the input.
ReorderedDataset apply_reorder(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                               const ReorderMap& map);

/// File format: n lines "old new".
void write_reorder_map(const ReorderMap& map, const std::string& path);
ReorderMap load_reorder_map(const std::string& path);

}  // namespace vipkit
