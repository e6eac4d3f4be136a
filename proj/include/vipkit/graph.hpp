#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vipkit/error.hpp"
#include "vipkit/rng.hpp"

namespace vipkit {

using vertex_t = std::uint32_t;
using offset_t = std::uint64_t;

/// Immutable CSR adjacency, forward and reverse. Target slices are sorted,
/// deduplicated and self-loop free; for undirected graphs the reverse
/// structure equals the forward one. Safe for unrestricted concurrent reads.
struct Graph {
  std::vector<offset_t> fwd_offsets{0};
  std::vector<vertex_t> fwd_targets;
  std::vector<offset_t> rev_offsets{0};
  std::vector<vertex_t> rev_targets;

  std::size_t num_vertices() const { return fwd_offsets.size() - 1; }
  std::size_t num_edges() const { return fwd_targets.size(); }

  std::uint64_t out_degree(vertex_t v) const { return fwd_offsets[v + 1] - fwd_offsets[v]; }
  std::uint64_t in_degree(vertex_t v) const { return rev_offsets[v + 1] - rev_offsets[v]; }

  std::span<const vertex_t> out_neighbors(vertex_t v) const {
    return {fwd_targets.data() + fwd_offsets[v], fwd_targets.data() + fwd_offsets[v + 1]};
  }
  std::span<const vertex_t> in_neighbors(vertex_t v) const {
    return {rev_targets.data() + rev_offsets[v], rev_targets.data() + rev_offsets[v + 1]};
  }

  /// Canonicalizes an edge list: optional symmetrization, then self-loop
  /// removal, per-source sort and dedup. Builds both CSR orientations.
  static Graph from_edges(std::uint64_t n, std::vector<std::pair<vertex_t, vertex_t>> edges,
                          bool make_undirected);

  /// Structural validation; throws format_error on violation.
  void check_invariants() const;
};

enum class Role : std::uint8_t { train = 0, valid = 1, test = 2, none = 3 };

struct VertexRoles {
  std::vector<std::uint8_t> role;

  std::size_t size() const { return role.size(); }
  bool is_train(vertex_t v) const { return role[v] == static_cast<std::uint8_t>(Role::train); }
  std::vector<vertex_t> train_vertices() const;
  std::size_t train_count() const;
};

/// Vertex -> partition assignment for K partitions plus per-partition
/// ascending member lists; the two views are kept mutually consistent.
struct PartitionMap {
  std::uint32_t K = 1;
  std::vector<std::uint32_t> part_of;
  std::vector<std::vector<vertex_t>> members;

  static PartitionMap from_labels(std::vector<std::uint32_t> labels, std::uint32_t K);

  std::vector<vertex_t> train_members(const VertexRoles& roles, std::uint32_t k) const;
};

enum class SynthKind { path, star, tree, grid, preferential_attachment, uniform_random };

SynthKind synth_kind_from_string(const std::string& s);
std::string to_string(SynthKind kind);

struct SynthParams {
  std::uint64_t n = 1;
  // Meaning depends on kind: tree arity, grid columns, attachment degree,
  // or edges-per-vertex for uniform_random. Ignored for path and star.
  std::uint64_t d = 2;
  std::uint64_t seed = 0;
};

/// Deterministic generators; all outputs are undirected and satisfy the
/// Graph invariants.
Graph generate_synthetic(SynthKind kind, const SynthParams& params);

/// Seeded role assignment by shuffled fractions; remaining vertices get
/// Role::none.
VertexRoles make_roles(std::size_t n, double train_frac, double valid_frac, double test_frac,
                       std::uint64_t seed);

enum class PartitionMethod { random, bfs_greedy, from_file };

PartitionMethod partition_method_from_string(const std::string& s);

/// Built-in partitioners balance |members_k| within +/-1 of n/K and train
/// counts within +/-1 of |T|/K. bfs_greedy grows K BFS regions from spread
/// seeds; it approximates an edge-cut partitioner but does not minimize cut.
PartitionMap partition_graph(const Graph& g, const VertexRoles& roles, std::uint32_t K,
                             PartitionMethod method, std::uint64_t seed);

/// External labels (e.g. METIS output): n lines of integers in [0, K).
/// K == 0 infers K as max label + 1.
PartitionMap partition_from_file(const std::string& path, std::uint32_t K, std::size_t n);

// --- file formats ---

/// Whitespace-separated "u v" pairs, '#' comments allowed. n inferred as
/// max id + 1 unless n_hint > 0.
Graph load_edge_list(const std::string& path, bool make_undirected, std::uint64_t n_hint = 0);

/// Binary CSR: magic "VCSR", u32 version 1, u64 n, u64 m, (n+1) u64 forward
/// offsets, m u64 forward targets, little-endian. Reverse structure is
/// rebuilt on load.
void write_binary_csr(const Graph& g, const std::string& path);
Graph load_binary_csr(const std::string& path);

VertexRoles load_roles(const std::string& path);
void write_roles(const VertexRoles& roles, const std::string& path);

void write_partition_labels(const PartitionMap& part, const std::string& path);

}  // namespace vipkit
