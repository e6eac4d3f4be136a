#include "vipkit/vip.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "vipkit/error.hpp"
#include "vipkit/parallel.hpp"

namespace vipkit {

namespace {

constexpr double kFlushBelow = 1e-300;

double clamp_prob(double x) {
  if (!(x > kFlushBelow)) return 0.0;  // also flushes denormals and NaN-safe
  return x < 1.0 ? x : 1.0;
}

}  // namespace

std::vector<double> initial_probs(const VertexRoles& roles, const PartitionMap& part,
                                  std::uint32_t k, std::uint64_t b) {
  if (b == 0) throw parameter_error("batch size must be >= 1");
  const std::vector<vertex_t> train = part.train_members(roles, k);
  if (train.empty())
    throw sampling_error("partition " + std::to_string(k) + " has no train vertices");
  const double p = std::min(1.0, static_cast<double>(b) / static_cast<double>(train.size()));
  std::vector<double> p0(roles.size(), 0.0);
  for (vertex_t v : train) p0[v] = p;
  return p0;
}

VipScores propagate(const Graph& g, const TransitionModel& tm, std::vector<double> p0,
                    std::uint32_t partition) {
  tm.fanouts.validate();
  const std::size_t n = g.num_vertices();
  if (p0.size() != n) throw shape_error("p0 length does not match vertex count");
  for (double p : p0)
    if (!(p >= 0.0 && p <= 1.0)) throw parameter_error("p0 entries must lie in [0,1]");

  VipScores scores;
  scores.partition = partition;
  scores.p0 = std::move(p0);
  const std::size_t L = tm.fanouts.hops();
  scores.hop.assign(L, std::vector<double>(n, 0.0));

  const std::vector<double>* prev = &scores.p0;
  std::vector<double> sample_prob(n);
  for (std::size_t h = 1; h <= L; ++h) {
    std::vector<double>& cur = scores.hop[h - 1];
    const std::vector<double>& src = *prev;
    // hoist w^h(u,v) * p^{h-1}(v), which depends only on the sampler v
    parallel_for(0, n, [&](std::size_t v) {
      const double pv = src[v];
      sample_prob[v] =
          pv == 0.0 ? 0.0 : tm.weight(h, g.out_degree(static_cast<vertex_t>(v))) * pv;
    });
    parallel_for(0, n, [&](std::size_t u) {
      // u is excluded only if every in-neighbor v fails to sample it;
      // accumulate log(1 - w*p) over the reverse adjacency in CSR order
      double log_miss = 0.0;
      for (vertex_t v : g.in_neighbors(static_cast<vertex_t>(u))) {
        const double wp = sample_prob[v];
        if (wp == 0.0) continue;
        log_miss += std::log1p(-wp);  // -inf when wp == 1, giving hit prob 1
      }
      cur[u] = clamp_prob(-std::expm1(log_miss));
    });
    prev = &cur;
  }

  scores.total.assign(n, 0.0);
  parallel_for(0, n, [&](std::size_t u) {
    double log_miss = 0.0;
    for (std::size_t h = 0; h < L; ++h) log_miss += std::log1p(-scores.hop[h][u]);
    scores.total[u] = clamp_prob(-std::expm1(log_miss));
  });
  return scores;
}

std::vector<double> empirical_vip(const Graph& g, const VertexRoles& roles,
                                  const PartitionMap& part, std::uint32_t k, std::uint64_t b,
                                  const FanoutSpec& fanouts, std::uint64_t S,
                                  const SeedSpec& seeds) {
  if (S < 1) throw parameter_error("epoch count must be >= 1");
  const SeedSpec sim = seeds.derived(stream_tag::empirical_vip);
  std::vector<std::uint64_t> hits(g.num_vertices(), 0);
  std::uint64_t batches = 0;
  for (std::uint64_t epoch = 0; epoch < S; ++epoch) {
    auto mb = epoch_minibatches(roles, part, k, b, epoch, sim);
    for (std::size_t i = 0; i < mb.size(); ++i) {
      const auto nb = expand(g, mb[i], fanouts, sim, BatchRef{epoch, k, i});
      for (vertex_t v : nb.all_vertices) hits[v]++;
      ++batches;
    }
  }
  std::vector<double> freq(g.num_vertices());
  for (std::size_t v = 0; v < freq.size(); ++v)
    freq[v] = static_cast<double>(hits[v]) / static_cast<double>(batches);
  return freq;
}

void write_vip_binary(const VipScores& scores, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  for (double x : scores.total) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(x));
    std::memcpy(&bits, &x, sizeof(bits));
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
  }
  if (!out) throw io_error("write failed: " + path);
}

std::vector<double> load_vip_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::vector<double> values;
  unsigned char b[8];
  while (in.read(reinterpret_cast<char*>(b), 8)) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double x;
    std::memcpy(&x, &bits, sizeof(x));
    values.push_back(x);
  }
  return values;
}

void write_vip_csv(const VipScores& scores, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  out << "vertex,total";
  for (std::size_t h = 1; h <= scores.hop.size(); ++h) out << ",hop" << h;
  out << '\n';
  char buf[32];
  for (std::size_t v = 0; v < scores.total.size(); ++v) {
    out << v;
    std::snprintf(buf, sizeof(buf), ",%.17g", scores.total[v]);
    out << buf;
    for (const auto& hop : scores.hop) {
      std::snprintf(buf, sizeof(buf), ",%.17g", hop[v]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace vipkit
