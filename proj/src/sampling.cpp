#include "vipkit/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "vipkit/error.hpp"

namespace vipkit {

void FanoutSpec::validate() const {
  if (fanouts.empty()) throw parameter_error("fanout list must have at least one hop");
  for (std::uint32_t f : fanouts)
    if (f < 1) throw parameter_error("each fanout must be >= 1");
}

std::string FanoutSpec::label() const {
  std::string s;
  for (std::size_t i = 0; i < fanouts.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(fanouts[i]);
  }
  return s;
}

FanoutSpec FanoutSpec::parse(const std::string& s) {
  FanoutSpec spec;
  const char* p = s.data();
  const char* end = s.data() + s.size();
  while (p < end) {
    std::uint32_t f = 0;
    auto [q, ec] = std::from_chars(p, end, f);
    if (ec != std::errc()) throw parameter_error("bad fanout list: " + s);
    spec.fanouts.push_back(f);
    p = q;
    if (p < end) {
      if (*p != ',' && *p != '-') throw parameter_error("bad fanout list: " + s);
      ++p;
    }
  }
  spec.validate();
  return spec;
}

std::vector<std::vector<vertex_t>> epoch_minibatches(const VertexRoles& roles,
                                                     const PartitionMap& part, std::uint32_t k,
                                                     std::uint64_t b, std::uint64_t epoch,
                                                     const SeedSpec& seeds,
                                                     const std::vector<vertex_t>* seed_keys) {
  if (b == 0) throw parameter_error("batch size must be >= 1");
  std::vector<vertex_t> train = part.train_members(roles, k);
  if (train.empty())
    throw sampling_error("partition " + std::to_string(k) + " has no train vertices");
  if (seed_keys) {
    // canonical order follows the replay keys so permutations correspond
    // positionally across relabelings
    std::sort(train.begin(), train.end(),
              [&](vertex_t a, vertex_t c) { return (*seed_keys)[a] < (*seed_keys)[c]; });
  }
  RngStream rng = seeds.stream({stream_tag::minibatch_perm, epoch, k});
  for (std::size_t i = train.size(); i > 1; --i)
    std::swap(train[i - 1], train[rng.next_below(i)]);

  std::vector<std::vector<vertex_t>> batches;
  for (std::size_t pos = 0; pos < train.size(); pos += b) {
    const std::size_t take = std::min<std::size_t>(b, train.size() - pos);
    batches.emplace_back(train.begin() + pos, train.begin() + pos + take);
  }
  return batches;
}

void sample_neighbors(const Graph& g, vertex_t v, std::uint32_t fanout, RngStream& stream,
                      std::vector<vertex_t>& out, const std::vector<vertex_t>* seed_keys) {
  const auto nbrs = g.out_neighbors(v);
  const std::size_t deg = nbrs.size();
  if (deg <= fanout) {
    out.insert(out.end(), nbrs.begin(), nbrs.end());
    return;
  }
  // partial Fisher-Yates over a scratch copy: exactly uniform without
  // replacement, marginal inclusion fanout/deg per neighbor
  static thread_local std::vector<vertex_t> scratch;
  scratch.assign(nbrs.begin(), nbrs.end());
  if (seed_keys)
    std::sort(scratch.begin(), scratch.end(),
              [&](vertex_t a, vertex_t b) { return (*seed_keys)[a] < (*seed_keys)[b]; });
  for (std::uint32_t i = 0; i < fanout; ++i) {
    const std::size_t j = i + stream.next_below(deg - i);
    std::swap(scratch[i], scratch[j]);
    out.push_back(scratch[i]);
  }
}

ExpandedNeighborhood expand(const Graph& g, std::span<const vertex_t> batch,
                            const FanoutSpec& fanouts, const SeedSpec& seeds, const BatchRef& ref,
                            const std::vector<vertex_t>* seed_keys) {
  if (batch.empty()) throw sampling_error("cannot expand an empty batch");
  fanouts.validate();

  ExpandedNeighborhood nb;
  nb.batch.assign(batch.begin(), batch.end());
  nb.frontier.reserve(fanouts.hops());

  std::vector<vertex_t> current(batch.begin(), batch.end());
  std::vector<vertex_t> sampled;
  for (std::size_t h = 1; h <= fanouts.hops(); ++h) {
    sampled.clear();
    for (vertex_t v : current) {
      const std::uint64_t key_v = seed_keys ? (*seed_keys)[v] : v;
      RngStream stream =
          seeds.stream({stream_tag::neighbor_sample, ref.epoch, ref.partition, ref.batch_index,
                        static_cast<std::uint64_t>(h), key_v});
      sample_neighbors(g, v, fanouts.fanouts[h - 1], stream, sampled, seed_keys);
    }
    std::sort(sampled.begin(), sampled.end());
    sampled.erase(std::unique(sampled.begin(), sampled.end()), sampled.end());
    nb.frontier.push_back(sampled);
    current = sampled;
  }

  nb.all_vertices.assign(batch.begin(), batch.end());
  for (const auto& f : nb.frontier)
    nb.all_vertices.insert(nb.all_vertices.end(), f.begin(), f.end());
  std::sort(nb.all_vertices.begin(), nb.all_vertices.end());
  nb.all_vertices.erase(std::unique(nb.all_vertices.begin(), nb.all_vertices.end()),
                        nb.all_vertices.end());
  return nb;
}

void append_trace(std::ostream& out, const BatchRef& ref, const ExpandedNeighborhood& nb) {
  auto row = [&](vertex_t v, std::size_t hop) {
    out << ref.epoch << ',' << ref.partition << ',' << ref.batch_index << ',' << v << ',' << hop
        << '\n';
  };
  for (vertex_t v : nb.batch) row(v, 0);
  for (std::size_t h = 0; h < nb.frontier.size(); ++h)
    for (vertex_t v : nb.frontier[h]) row(v, h + 1);
}

}  // namespace vipkit
