#include "vipkit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <deque>
#include <fstream>
#include <limits>
#include <numeric>

namespace vipkit {

namespace {

constexpr std::uint64_t kMaxVertices = 1ull << 32;

void build_csr(std::uint64_t n, const std::vector<std::pair<vertex_t, vertex_t>>& edges,
               std::vector<offset_t>& offsets, std::vector<vertex_t>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& [u, v] : edges) offsets[u + 1]++;
  for (std::uint64_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(edges.size());
  std::vector<offset_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges) targets[cursor[u]++] = v;
  // per-source sort; dedup happened on the edge list already
  for (std::uint64_t u = 0; u < n; ++u)
    std::sort(targets.begin() + offsets[u], targets.begin() + offsets[u + 1]);
}

}  // namespace

Graph Graph::from_edges(std::uint64_t n, std::vector<std::pair<vertex_t, vertex_t>> edges,
                        bool make_undirected) {
  if (n == 0 || n > kMaxVertices) throw range_error("vertex count out of range: " + std::to_string(n));
  if (make_undirected) {
    const std::size_t orig = edges.size();
    edges.reserve(orig * 2);
    for (std::size_t i = 0; i < orig; ++i) edges.emplace_back(edges[i].second, edges[i].first);
  }
  edges.erase(std::remove_if(edges.begin(), edges.end(),
                             [](const auto& e) { return e.first == e.second; }),
              edges.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  build_csr(n, edges, g.fwd_offsets, g.fwd_targets);
  for (auto& e : edges) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  build_csr(n, edges, g.rev_offsets, g.rev_targets);
  return g;
}

void Graph::check_invariants() const {
  const std::size_t n = num_vertices();
  const std::size_t m = num_edges();
  auto check_side = [&](const std::vector<offset_t>& off, const std::vector<vertex_t>& tgt,
                        const char* side) {
    if (off.size() != n + 1 || off.front() != 0 || off.back() != tgt.size())
      throw format_error(std::string(side) + " offsets malformed");
    for (std::size_t v = 0; v < n; ++v) {
      if (off[v] > off[v + 1]) throw format_error(std::string(side) + " offsets decrease");
      for (offset_t i = off[v]; i < off[v + 1]; ++i) {
        if (tgt[i] >= n) throw format_error(std::string(side) + " target out of range");
        if (tgt[i] == v) throw format_error("self-loop survived preprocessing");
        if (i > off[v] && tgt[i - 1] >= tgt[i])
          throw format_error(std::string(side) + " targets not strictly increasing");
      }
    }
  };
  check_side(fwd_offsets, fwd_targets, "forward");
  check_side(rev_offsets, rev_targets, "reverse");
  if (rev_targets.size() != m) throw format_error("forward/reverse edge count mismatch");
}

std::vector<vertex_t> VertexRoles::train_vertices() const {
  std::vector<vertex_t> out;
  for (std::size_t v = 0; v < role.size(); ++v)
    if (role[v] == 0) out.push_back(static_cast<vertex_t>(v));
  return out;
}

std::size_t VertexRoles::train_count() const {
  return static_cast<std::size_t>(std::count(role.begin(), role.end(), 0));
}

PartitionMap PartitionMap::from_labels(std::vector<std::uint32_t> labels, std::uint32_t K) {
  if (K == 0) throw parameter_error("partition count must be >= 1");
  PartitionMap pm;
  pm.K = K;
  pm.part_of = std::move(labels);
  pm.members.assign(K, {});
  for (std::size_t v = 0; v < pm.part_of.size(); ++v) {
    if (pm.part_of[v] >= K)
      throw format_error("partition label " + std::to_string(pm.part_of[v]) +
                         " out of range for K=" + std::to_string(K));
    pm.members[pm.part_of[v]].push_back(static_cast<vertex_t>(v));
  }
  for (std::uint32_t k = 0; k < K; ++k)
    if (pm.members[k].empty())
      throw partition_error("partition " + std::to_string(k) + " is empty");
  return pm;
}

std::vector<vertex_t> PartitionMap::train_members(const VertexRoles& roles, std::uint32_t k) const {
  std::vector<vertex_t> out;
  for (vertex_t v : members[k])
    if (roles.is_train(v)) out.push_back(v);
  return out;
}

SynthKind synth_kind_from_string(const std::string& s) {
  if (s == "path") return SynthKind::path;
  if (s == "star") return SynthKind::star;
  if (s == "tree") return SynthKind::tree;
  if (s == "grid") return SynthKind::grid;
  if (s == "pa" || s == "preferential_attachment") return SynthKind::preferential_attachment;
  if (s == "uniform" || s == "uniform_random") return SynthKind::uniform_random;
  throw parameter_error("unknown synthetic graph kind: " + s);
}

std::string to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::path: return "path";
    case SynthKind::star: return "star";
    case SynthKind::tree: return "tree";
    case SynthKind::grid: return "grid";
    case SynthKind::preferential_attachment: return "preferential_attachment";
    case SynthKind::uniform_random: return "uniform_random";
  }
  return "?";
}

namespace {

using EdgeList = std::vector<std::pair<vertex_t, vertex_t>>;

EdgeList gen_path(std::uint64_t n) {
  EdgeList e;
  for (std::uint64_t i = 0; i + 1 < n; ++i)
    e.emplace_back(static_cast<vertex_t>(i), static_cast<vertex_t>(i + 1));
  return e;
}

EdgeList gen_star(std::uint64_t n) {
  EdgeList e;
  for (std::uint64_t i = 1; i < n; ++i) e.emplace_back(0, static_cast<vertex_t>(i));
  return e;
}

EdgeList gen_tree(std::uint64_t n, std::uint64_t arity) {
  EdgeList e;
  for (std::uint64_t i = 1; i < n; ++i)
    e.emplace_back(static_cast<vertex_t>((i - 1) / arity), static_cast<vertex_t>(i));
  return e;
}

EdgeList gen_grid(std::uint64_t n, std::uint64_t cols) {
  EdgeList e;
  for (std::uint64_t i = 0; i < n; ++i) {
    if ((i + 1) % cols != 0 && i + 1 < n)
      e.emplace_back(static_cast<vertex_t>(i), static_cast<vertex_t>(i + 1));
    if (i + cols < n) e.emplace_back(static_cast<vertex_t>(i), static_cast<vertex_t>(i + cols));
  }
  return e;
}

// Barabasi-Albert style growth: each new vertex attaches min(d, v) edges to
// targets drawn from the repeated-endpoints list (degree-proportional).
// Ids are shuffled afterwards so they carry no age or degree information,
// matching how published benchmark graphs are labeled.
EdgeList gen_preferential_attachment(std::uint64_t n, std::uint64_t d, std::uint64_t seed) {
  EdgeList e;
  std::vector<vertex_t> endpoints;
  RngStream rng(SeedSpec{seed}.key({stream_tag::synthesis, 1}));
  std::vector<vertex_t> chosen;
  for (std::uint64_t v = 1; v < n; ++v) {
    const std::uint64_t dv = std::min<std::uint64_t>(d, v);
    chosen.clear();
    for (std::uint64_t j = 0; j < dv; ++j) {
      vertex_t t;
      do {
        t = endpoints.empty() ? static_cast<vertex_t>(rng.next_below(v))
                              : endpoints[rng.next_below(endpoints.size())];
      } while (t == v || std::find(chosen.begin(), chosen.end(), t) != chosen.end());
      chosen.push_back(t);
    }
    for (vertex_t t : chosen) {
      e.emplace_back(static_cast<vertex_t>(v), t);
      endpoints.push_back(static_cast<vertex_t>(v));
      endpoints.push_back(t);
    }
  }
  std::vector<vertex_t> relabel(n);
  for (std::uint64_t v = 0; v < n; ++v) relabel[v] = static_cast<vertex_t>(v);
  for (std::uint64_t i = n; i > 1; --i) std::swap(relabel[i - 1], relabel[rng.next_below(i)]);
  for (auto& [u, v] : e) {
    u = relabel[u];
    v = relabel[v];
  }
  return e;
}

EdgeList gen_uniform_random(std::uint64_t n, std::uint64_t d, std::uint64_t seed) {
  EdgeList e;
  RngStream rng(SeedSpec{seed}.key({stream_tag::synthesis, 2}));
  const std::uint64_t attempts = n * d;
  e.reserve(attempts);
  for (std::uint64_t i = 0; i < attempts; ++i) {
    const auto u = static_cast<vertex_t>(rng.next_below(n));
    const auto v = static_cast<vertex_t>(rng.next_below(n));
    if (u != v) e.emplace_back(u, v);
  }
  return e;
}

}  // namespace

Graph generate_synthetic(SynthKind kind, const SynthParams& p) {
  if (p.n < 1) throw parameter_error("synthetic graph needs n >= 1");
  if (p.n > kMaxVertices) throw range_error("n exceeds vertex-id limit");
  EdgeList edges;
  switch (kind) {
    case SynthKind::path: edges = gen_path(p.n); break;
    case SynthKind::star: edges = gen_star(p.n); break;
    case SynthKind::tree:
      if (p.d < 1) throw parameter_error("tree arity must be >= 1");
      edges = gen_tree(p.n, p.d);
      break;
    case SynthKind::grid:
      if (p.d < 1) throw parameter_error("grid column count must be >= 1");
      edges = gen_grid(p.n, p.d);
      break;
    case SynthKind::preferential_attachment:
      if (p.d < 1) throw parameter_error("attachment degree must be >= 1");
      edges = gen_preferential_attachment(p.n, p.d, p.seed);
      break;
    case SynthKind::uniform_random:
      if (p.d < 1) throw parameter_error("edges-per-vertex must be >= 1");
      edges = gen_uniform_random(p.n, p.d, p.seed);
      break;
  }
  return Graph::from_edges(p.n, std::move(edges), /*make_undirected=*/true);
}

VertexRoles make_roles(std::size_t n, double train_frac, double valid_frac, double test_frac,
                       std::uint64_t seed) {
  if (train_frac < 0 || valid_frac < 0 || test_frac < 0 ||
      train_frac + valid_frac + test_frac > 1.0 + 1e-12)
    throw parameter_error("role fractions must be non-negative and sum to <= 1");
  std::vector<vertex_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  RngStream rng(SeedSpec{seed}.key({stream_tag::roles}));
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[rng.next_below(i)]);

  VertexRoles roles;
  roles.role.assign(n, static_cast<std::uint8_t>(Role::none));
  const auto t = static_cast<std::size_t>(train_frac * static_cast<double>(n));
  const auto va = static_cast<std::size_t>(valid_frac * static_cast<double>(n));
  const auto te = static_cast<std::size_t>(test_frac * static_cast<double>(n));
  std::size_t i = 0;
  for (std::size_t j = 0; j < t && i < n; ++j, ++i) roles.role[order[i]] = 0;
  for (std::size_t j = 0; j < va && i < n; ++j, ++i) roles.role[order[i]] = 1;
  for (std::size_t j = 0; j < te && i < n; ++j, ++i) roles.role[order[i]] = 2;
  return roles;
}

PartitionMethod partition_method_from_string(const std::string& s) {
  if (s == "random") return PartitionMethod::random;
  if (s == "bfs_greedy" || s == "bfs") return PartitionMethod::bfs_greedy;
  if (s == "from_file") return PartitionMethod::from_file;
  throw parameter_error("unknown partition method: " + s);
}

namespace {

struct Quota {
  std::uint64_t total = 0;
  std::uint64_t train = 0;
};

std::vector<Quota> make_quotas(std::size_t n, std::size_t trains, std::uint32_t K) {
  std::vector<Quota> q(K);
  for (std::uint32_t k = 0; k < K; ++k) {
    q[k].total = n / K + (k < n % K ? 1 : 0);
    q[k].train = trains / K + (k < trains % K ? 1 : 0);
  }
  return q;
}

PartitionMap partition_random(const Graph& g, const VertexRoles& roles, std::uint32_t K,
                              std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  std::vector<vertex_t> trains, rest;
  for (std::size_t v = 0; v < n; ++v)
    (roles.is_train(static_cast<vertex_t>(v)) ? trains : rest).push_back(static_cast<vertex_t>(v));

  RngStream rng(SeedSpec{seed}.key({stream_tag::partitioning, K}));
  auto shuffle = [&rng](std::vector<vertex_t>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[rng.next_below(i)]);
  };
  shuffle(trains);
  shuffle(rest);

  auto quotas = make_quotas(n, trains.size(), K);
  std::vector<std::uint32_t> labels(n, 0);
  std::vector<std::uint64_t> total_count(K, 0);
  for (std::size_t i = 0; i < trains.size(); ++i) {
    const auto k = static_cast<std::uint32_t>(i % K);
    labels[trains[i]] = k;
    total_count[k]++;
  }
  for (vertex_t v : rest) {
    std::uint32_t best = 0;
    std::uint64_t best_deficit = 0;
    for (std::uint32_t k = 0; k < K; ++k) {
      const std::uint64_t deficit = quotas[k].total - total_count[k];
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = k;
      }
    }
    labels[v] = best;
    total_count[best]++;
  }
  return PartitionMap::from_labels(std::move(labels), K);
}

// Multi-source BFS distances from the current seed set; used to spread the
// next region seed as far from the existing ones as possible.
std::vector<std::uint32_t> bfs_distances(const Graph& g, const std::vector<vertex_t>& sources) {
  constexpr std::uint32_t unreachable = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(g.num_vertices(), unreachable);
  std::deque<vertex_t> queue;
  for (vertex_t s : sources) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const vertex_t v = queue.front();
    queue.pop_front();
    for (vertex_t u : g.out_neighbors(v))
      if (dist[u] == unreachable) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
  }
  return dist;
}

PartitionMap partition_bfs_greedy(const Graph& g, const VertexRoles& roles, std::uint32_t K,
                                  std::uint64_t seed) {
  (void)seed;  // growth is fully determined by the spread-seed rule
  const std::size_t n = g.num_vertices();
  const std::size_t trains = roles.size() == n ? roles.train_count() : 0;

  std::vector<vertex_t> region_seeds;
  vertex_t first = 0;
  if (trains > 0) {
    for (std::size_t v = 0; v < n; ++v)
      if (roles.is_train(static_cast<vertex_t>(v))) {
        first = static_cast<vertex_t>(v);
        break;
      }
  }
  region_seeds.push_back(first);
  while (region_seeds.size() < K) {
    auto dist = bfs_distances(g, region_seeds);
    vertex_t far = 0;
    std::uint64_t far_d = 0;
    bool found = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (std::find(region_seeds.begin(), region_seeds.end(), static_cast<vertex_t>(v)) !=
          region_seeds.end())
        continue;
      const std::uint64_t dv = dist[v];
      if (!found || dv > far_d) {
        far = static_cast<vertex_t>(v);
        far_d = dv;
        found = true;
      }
    }
    if (!found) throw partition_error("fewer vertices than partitions");
    region_seeds.push_back(far);
  }

  auto quotas = make_quotas(n, trains, K);
  constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> labels(n, kUnassigned);
  std::vector<std::deque<vertex_t>> frontier(K);
  std::vector<std::uint64_t> total_left(K), train_left(K);
  for (std::uint32_t k = 0; k < K; ++k) {
    frontier[k].push_back(region_seeds[k]);
    total_left[k] = quotas[k].total;
    train_left[k] = quotas[k].train;
  }

  std::size_t assigned = 0;
  vertex_t scan_from = 0;  // teleport cursor
  auto claimable = [&](std::uint32_t k, vertex_t v) {
    const bool is_train = roles.size() == n && roles.is_train(v);
    if (is_train) return train_left[k] > 0;
    return total_left[k] > train_left[k];
  };

  while (assigned < n) {
    // most-deficient region claims next: train deficit first, then total
    std::uint32_t k = K;
    for (std::uint32_t c = 0; c < K; ++c) {
      if (total_left[c] == 0) continue;
      if (k == K || train_left[c] > train_left[k] ||
          (train_left[c] == train_left[k] && total_left[c] > total_left[k]))
        k = c;
    }
    if (k == K) throw partition_error("quota accounting failed");

    vertex_t pick = static_cast<vertex_t>(n);
    while (!frontier[k].empty()) {
      const vertex_t v = frontier[k].front();
      frontier[k].pop_front();
      if (labels[v] != kUnassigned) continue;
      if (!claimable(k, v)) continue;  // dropped: deficits only shrink
      pick = v;
      break;
    }
    if (pick == static_cast<vertex_t>(n)) {
      while (scan_from < n && labels[scan_from] != kUnassigned) ++scan_from;
      vertex_t v = scan_from;
      while (v < n && (labels[v] != kUnassigned || !claimable(k, v))) ++v;
      if (v >= n) throw partition_error("no claimable vertex for partition " + std::to_string(k));
      pick = v;
    }

    labels[pick] = k;
    ++assigned;
    total_left[k]--;
    if (roles.size() == n && roles.is_train(pick)) train_left[k]--;
    for (vertex_t u : g.out_neighbors(pick))
      if (labels[u] == kUnassigned) frontier[k].push_back(u);
  }
  return PartitionMap::from_labels(std::move(labels), K);
}

}  // namespace

PartitionMap partition_graph(const Graph& g, const VertexRoles& roles, std::uint32_t K,
                             PartitionMethod method, std::uint64_t seed) {
  if (K == 0) throw parameter_error("partition count must be >= 1");
  if (g.num_vertices() < K) throw partition_error("fewer vertices than partitions");
  switch (method) {
    case PartitionMethod::random: return partition_random(g, roles, K, seed);
    case PartitionMethod::bfs_greedy: return partition_bfs_greedy(g, roles, K, seed);
    case PartitionMethod::from_file:
      throw parameter_error("from_file partitioning requires a label file path");
  }
  throw parameter_error("bad partition method");
}

PartitionMap partition_from_file(const std::string& path, std::uint32_t K, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open partition label file: " + path);
  std::vector<std::uint32_t> labels;
  labels.reserve(n);
  std::string line;
  std::size_t lineno = 0;
  std::uint32_t max_label = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::uint32_t lab = 0;
    auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), lab);
    if (ec != std::errc())
      throw format_error(path + ":" + std::to_string(lineno) + ": bad partition label");
    labels.push_back(lab);
    max_label = std::max(max_label, lab);
  }
  if (labels.size() != n)
    throw format_error(path + ": expected " + std::to_string(n) + " labels, got " +
                       std::to_string(labels.size()));
  if (K == 0) K = max_label + 1;
  return PartitionMap::from_labels(std::move(labels), K);
}

Graph load_edge_list(const std::string& path, bool make_undirected, std::uint64_t n_hint) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open edge list: " + path);
  std::vector<std::pair<vertex_t, vertex_t>> edges;
  std::string line;
  std::size_t lineno = 0;
  std::uint64_t max_id = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] == '#') continue;
    std::uint64_t u = 0, v = 0;
    auto r1 = std::from_chars(line.data() + i, line.data() + line.size(), u);
    if (r1.ec != std::errc())
      throw parse_error(path + ":" + std::to_string(lineno) + ": malformed edge line");
    const char* p = r1.ptr;
    while (p < line.data() + line.size() && (*p == ' ' || *p == '\t')) ++p;
    auto r2 = std::from_chars(p, line.data() + line.size(), v);
    if (r2.ec != std::errc())
      throw parse_error(path + ":" + std::to_string(lineno) + ": malformed edge line");
    if (u >= kMaxVertices || v >= kMaxVertices)
      throw range_error(path + ":" + std::to_string(lineno) + ": vertex id exceeds limit");
    if (n_hint > 0 && (u >= n_hint || v >= n_hint))
      throw range_error(path + ":" + std::to_string(lineno) + ": vertex id >= n");
    edges.emplace_back(static_cast<vertex_t>(u), static_cast<vertex_t>(v));
    max_id = std::max({max_id, u, v});
    any = true;
  }
  const std::uint64_t n = n_hint > 0 ? n_hint : (any ? max_id + 1 : 0);
  if (n == 0) throw parse_error(path + ": no edges and no vertex count given");
  return Graph::from_edges(n, std::move(edges), make_undirected);
}

namespace {

void put_u32(std::ofstream& out, std::uint32_t x) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(x >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ofstream& out, std::uint64_t x) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(x >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::ifstream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t x = 0;
  for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return x;
}

std::uint64_t get_u64(std::ifstream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return x;
}

}  // namespace

void write_binary_csr(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  out.write("VCSR", 4);
  put_u32(out, 1);
  put_u64(out, g.num_vertices());
  put_u64(out, g.num_edges());
  for (offset_t o : g.fwd_offsets) put_u64(out, o);
  for (vertex_t t : g.fwd_targets) put_u64(out, t);
  if (!out) throw io_error("write failed: " + path);
}

Graph load_binary_csr(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "VCSR", 4) != 0) throw format_error(path + ": bad magic");
  const std::uint32_t version = get_u32(in);
  if (version != 1) throw format_error(path + ": unsupported version " + std::to_string(version));
  const std::uint64_t n = get_u64(in);
  const std::uint64_t m = get_u64(in);
  if (n > kMaxVertices) throw range_error(path + ": vertex count exceeds in-memory limit");
  Graph g;
  g.fwd_offsets.resize(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i) g.fwd_offsets[i] = get_u64(in);
  g.fwd_targets.resize(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::uint64_t t = get_u64(in);
    if (t >= n) throw format_error(path + ": target id out of range");
    g.fwd_targets[i] = static_cast<vertex_t>(t);
  }
  if (!in) throw io_error(path + ": truncated file");

  // rebuild reverse CSR by transposition
  g.rev_offsets.assign(n + 1, 0);
  for (vertex_t t : g.fwd_targets) g.rev_offsets[t + 1]++;
  for (std::uint64_t i = 0; i < n; ++i) g.rev_offsets[i + 1] += g.rev_offsets[i];
  g.rev_targets.resize(m);
  std::vector<offset_t> cursor(g.rev_offsets.begin(), g.rev_offsets.end() - 1);
  for (std::uint64_t u = 0; u < n; ++u)
    for (offset_t i = g.fwd_offsets[u]; i < g.fwd_offsets[u + 1]; ++i)
      g.rev_targets[cursor[g.fwd_targets[i]]++] = static_cast<vertex_t>(u);
  g.check_invariants();
  return g;
}

VertexRoles load_roles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open roles file: " + path);
  VertexRoles roles;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    unsigned code = 0;
    auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), code);
    if (ec != std::errc() || code > 3)
      throw format_error(path + ":" + std::to_string(lineno) + ": bad role code");
    roles.role.push_back(static_cast<std::uint8_t>(code));
  }
  return roles;
}

void write_roles(const VertexRoles& roles, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  for (std::uint8_t r : roles.role) out << static_cast<unsigned>(r) << '\n';
}

void write_partition_labels(const PartitionMap& part, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  for (std::uint32_t k : part.part_of) out << k << '\n';
}

}  // namespace vipkit
