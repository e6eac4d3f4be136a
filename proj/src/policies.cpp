#include "vipkit/policies.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "vipkit/error.hpp"

namespace vipkit {

namespace {

// Shared ordering rule: decreasing score, ties by ascending id. `extra`
// breaks before score when provided (reachability flag for "deg.").
Ranking order_remotes(const PartitionMap& part, std::uint32_t k, std::span<const double> scores,
                      const std::vector<std::uint8_t>* tier = nullptr) {
  Ranking r;
  r.partition = k;
  for (std::size_t v = 0; v < part.part_of.size(); ++v)
    if (part.part_of[v] != k) r.order.push_back(static_cast<vertex_t>(v));
  std::sort(r.order.begin(), r.order.end(), [&](vertex_t a, vertex_t b) {
    if (tier && (*tier)[a] != (*tier)[b]) return (*tier)[a] > (*tier)[b];
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  r.score.reserve(r.order.size());
  for (vertex_t v : r.order) r.score.push_back(scores[v]);
  return r;
}

std::vector<std::uint8_t> forward_reachable(const Graph& g, const std::vector<vertex_t>& sources,
                                            std::size_t max_hops) {
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<vertex_t> current = sources;
  for (vertex_t s : sources) seen[s] = 1;
  std::vector<vertex_t> next;
  for (std::size_t h = 0; h < max_hops && !current.empty(); ++h) {
    next.clear();
    for (vertex_t v : current)
      for (vertex_t u : g.out_neighbors(v))
        if (!seen[u]) {
          seen[u] = 1;
          next.push_back(u);
        }
    current.swap(next);
  }
  return seen;
}

}  // namespace

Ranking rank_degree(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                    std::uint32_t k, std::size_t L) {
  const auto train = part.train_members(roles, k);
  const auto reachable = forward_reachable(g, train, L);
  std::vector<double> scores(g.num_vertices(), 0.0);
  for (std::size_t v = 0; v < scores.size(); ++v)
    if (reachable[v]) scores[v] = static_cast<double>(g.out_degree(static_cast<vertex_t>(v)));
  return order_remotes(part, k, scores, &reachable);
}

Ranking rank_halo_1hop(const Graph& g, const PartitionMap& part, std::uint32_t k) {
  std::vector<double> scores(g.num_vertices(), 0.0);
  std::size_t halo = 0;
  for (vertex_t v : part.members[k])
    for (vertex_t u : g.out_neighbors(v))
      if (part.part_of[u] != k && scores[u] == 0.0) {
        scores[u] = 1.0;
        ++halo;
      }
  Ranking r = order_remotes(part, k, scores);
  r.effective_alpha =
      static_cast<double>(halo) * static_cast<double>(part.K) / static_cast<double>(g.num_vertices());
  return r;
}

Ranking rank_wpr(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                 std::uint32_t k, const TransitionModel& tm, std::uint32_t iters, double damping) {
  if (iters < 1) throw parameter_error("wPR needs at least one iteration");
  const std::size_t n = g.num_vertices();
  const auto train = part.train_members(roles, k);
  if (train.empty()) throw sampling_error("partition has no train vertices");

  std::vector<double> restart(n, 0.0);
  const double e = 1.0 / static_cast<double>(train.size());
  for (vertex_t v : train) restart[v] = e;

  // Row normalization: each sampler v spreads its rank equally over the
  // vertices it can sample (hop-1 weights are constant per row, so the
  // normalized weight is 1/deg for any fanout).
  std::vector<double> rank = restart;
  std::vector<double> next(n);
  for (std::uint32_t it = 0; it < iters; ++it) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      if (g.out_degree(static_cast<vertex_t>(v)) == 0) dangling += rank[v];
    for (std::size_t u = 0; u < n; ++u) {
      double acc = 0.0;
      for (vertex_t v : g.in_neighbors(static_cast<vertex_t>(u))) {
        const std::uint64_t deg = g.out_degree(v);
        const double w = tm.weight(1, deg);
        acc += rank[v] * (w / (w * static_cast<double>(deg)));
      }
      next[u] = (1.0 - damping) * restart[u] + damping * (acc + dangling * restart[u]);
    }
    rank.swap(next);
  }
  return order_remotes(part, k, rank);
}

Ranking rank_numpaths(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                      std::uint32_t k, std::size_t L) {
  const std::size_t n = g.num_vertices();
  std::vector<double> count(n, 0.0);
  for (vertex_t v : part.train_members(roles, k)) count[v] = 1.0;
  std::vector<double> scores(n, 0.0), next(n);
  for (std::size_t h = 0; h < L; ++h) {
    for (std::size_t u = 0; u < n; ++u) {
      double acc = 0.0;
      for (vertex_t v : g.in_neighbors(static_cast<vertex_t>(u))) acc += count[v];
      next[u] = acc;
    }
    count.swap(next);
    for (std::size_t u = 0; u < n; ++u) scores[u] += count[u];
  }
  return order_remotes(part, k, scores);
}

Ranking rank_by_scores(const PartitionMap& part, std::uint32_t k, std::span<const double> scores) {
  if (scores.size() != part.part_of.size())
    throw shape_error("score vector length does not match vertex count");
  return order_remotes(part, k, scores);
}

CachePlan CachePlan::empty(std::uint32_t K, std::size_t n) {
  CachePlan plan;
  plan.K = K;
  plan.alpha = 0.0;
  plan.cached.assign(K, {});
  plan.member_bits.assign(K, std::vector<std::uint64_t>((n + 63) / 64, 0));
  return plan;
}

CachePlan build_cache(const std::vector<Ranking>& rankings, double alpha, std::size_t n) {
  if (alpha < 0) throw parameter_error("replication factor must be >= 0");
  const auto K = static_cast<std::uint32_t>(rankings.size());
  if (K == 0) throw parameter_error("need at least one ranking");
  CachePlan plan = CachePlan::empty(K, n);
  plan.alpha = alpha;
  const auto capacity = static_cast<std::uint64_t>(
      std::floor(alpha * static_cast<double>(n) / static_cast<double>(K) + 1e-9));
  for (std::uint32_t k = 0; k < K; ++k) {
    const auto take = std::min<std::uint64_t>(capacity, rankings[k].order.size());
    plan.cached[k].assign(rankings[k].order.begin(), rankings[k].order.begin() + take);
    for (vertex_t v : plan.cached[k]) plan.member_bits[k][v >> 6] |= 1ull << (v & 63);
  }
  return plan;
}

void write_cache_plan(const CachePlan& plan, const std::string& dir, const std::string& policy,
                      std::uint64_t seed, const std::string& spec_hash) {
  std::filesystem::create_directories(dir);
  for (std::uint32_t k = 0; k < plan.K; ++k) {
    std::ofstream out(dir + "/cache_k" + std::to_string(k) + ".txt", std::ios::trunc);
    if (!out) throw io_error("cannot write cache file in " + dir);
    for (vertex_t v : plan.cached[k]) out << v << '\n';
  }
  nlohmann::json manifest{{"policy", policy}, {"alpha", plan.alpha}, {"K", plan.K}, {"seed", seed}};
  if (!spec_hash.empty()) manifest["spec_hash"] = spec_hash;
  std::ofstream out(dir + "/manifest.json", std::ios::trunc);
  out << manifest.dump(2) << '\n';
}

CachePlan load_cache_plan(const std::string& dir, std::size_t n) {
  std::ifstream mf(dir + "/manifest.json");
  if (!mf) throw io_error("cannot open cache manifest in " + dir);
  nlohmann::json manifest = nlohmann::json::parse(mf);
  const auto K = manifest.at("K").get<std::uint32_t>();
  CachePlan plan = CachePlan::empty(K, n);
  plan.alpha = manifest.at("alpha").get<double>();
  for (std::uint32_t k = 0; k < K; ++k) {
    std::ifstream in(dir + "/cache_k" + std::to_string(k) + ".txt");
    if (!in) throw io_error("missing cache file for partition " + std::to_string(k));
    std::uint64_t v;
    while (in >> v) {
      if (v >= n) throw format_error("cached vertex id out of range");
      plan.cached[k].push_back(static_cast<vertex_t>(v));
      plan.member_bits[k][v >> 6] |= 1ull << (v & 63);
    }
  }
  return plan;
}

}  // namespace vipkit
