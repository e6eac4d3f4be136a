#include "vipkit/commsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "vipkit/error.hpp"

namespace vipkit {

std::uint64_t CommReport::total_misses() const {
  std::uint64_t s = 0;
  for (const Cell& c : cells) s += c.remote_misses;
  return s;
}

std::uint64_t CommReport::total_cache_hits() const {
  std::uint64_t s = 0;
  for (const Cell& c : cells) s += c.cache_hits;
  return s;
}

std::uint64_t CommReport::total_local_hits() const {
  std::uint64_t s = 0;
  for (const Cell& c : cells) s += c.local_hits;
  return s;
}

double CommReport::avg_epoch_misses() const {
  if (epochs == 0) return 0.0;
  return static_cast<double>(total_misses()) / static_cast<double>(epochs);
}

namespace {

// Drives the seeded expansion sequence shared by every measurement in this
// module; the callback sees each minibatch exactly once, in deterministic
// order.
template <class F>
void for_each_expansion(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                        const FanoutSpec& fanouts, std::uint64_t b, std::uint64_t E,
                        const SeedSpec& seeds, const std::vector<vertex_t>* seed_keys, F&& fn) {
  for (std::uint64_t e = 0; e < E; ++e)
    for (std::uint32_t k = 0; k < part.K; ++k) {
      const auto batches = epoch_minibatches(roles, part, k, b, e, seeds, seed_keys);
      for (std::size_t i = 0; i < batches.size(); ++i) {
        const BatchRef ref{e, k, i};
        fn(ref, expand(g, batches[i], fanouts, seeds, ref, seed_keys));
      }
    }
}

struct Classified {
  std::uint64_t local = 0;
  std::uint64_t cache = 0;
  std::uint64_t miss = 0;
};

Classified classify(const ExpandedNeighborhood& nb, const PartitionMap& part, std::uint32_t k,
                    const CachePlan& plan) {
  Classified c;
  for (vertex_t v : nb.all_vertices) {
    if (part.part_of[v] == k)
      c.local++;
    else if (plan.is_cached(k, v))
      c.cache++;
    else
      c.miss++;
  }
  return c;
}

}  // namespace

CommReport simulate(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                    const FanoutSpec& fanouts, std::uint64_t b, std::uint64_t E,
                    const SeedSpec& seeds, const CachePlan& plan, const SimulateOptions& opts) {
  if (plan.K != part.K) throw config_error("cache plan partition count differs from partition map");

  CommReport report;
  report.alpha = plan.alpha;
  report.fanout_label = fanouts.label();
  report.epochs = E;
  report.partitions = part.K;
  report.cells.assign(E * part.K, {});

  // position maps for the optional CPU/GPU split of batch-cost rows
  std::vector<std::vector<std::uint64_t>> gpu_threshold_pos;
  std::vector<std::uint64_t> gpu_cut(part.K, 0);
  if (opts.gpu_orderings) {
    constexpr auto npos = std::numeric_limits<std::uint64_t>::max();
    gpu_threshold_pos.assign(part.K, {});
    for (std::uint32_t k = 0; k < part.K; ++k) {
      const auto& ord = (*opts.gpu_orderings)[k];
      gpu_threshold_pos[k].assign(g.num_vertices(), npos);
      for (std::size_t i = 0; i < ord.size(); ++i) gpu_threshold_pos[k][ord[i]] = i;
      gpu_cut[k] = static_cast<std::uint64_t>(
          std::floor(opts.gamma * static_cast<double>(ord.size()) + 1e-9));
    }
  }

  for_each_expansion(g, roles, part, fanouts, b, E, seeds, opts.seed_keys,
                     [&](const BatchRef& ref, const ExpandedNeighborhood& nb) {
                       const Classified c = classify(nb, part, ref.partition, plan);
                       auto& cell = report.at(ref.epoch, ref.partition);
                       cell.local_hits += c.local;
                       cell.cache_hits += c.cache;
                       cell.remote_misses += c.miss;
                       if (opts.trace) append_trace(*opts.trace, ref, nb);
                       if (opts.batch_costs) {
                         std::uint64_t gpu = 0;
                         if (opts.gpu_orderings) {
                           for (vertex_t v : nb.all_vertices)
                             if (part.part_of[v] == ref.partition &&
                                 gpu_threshold_pos[ref.partition][v] < gpu_cut[ref.partition])
                               ++gpu;
                         }
                         *opts.batch_costs
                             << ref.epoch << ',' << ref.batch_index << ',' << ref.partition << ','
                             << (c.local - gpu) << ',' << gpu << ',' << c.cache << ',' << c.miss
                             << '\n';
                       }
                     });
  return report;
}

double geometric_mean(std::span<const double> xs) {
  if (xs.empty()) throw parameter_error("geometric mean of empty set");
  double log_sum = 0.0;
  for (double x : xs) {
    if (std::isinf(x)) return x;
    if (!(x > 0)) throw parameter_error("geometric mean needs positive values");
    log_sum += std::log(x);
  }
  return std::exp(log_sum / static_cast<double>(xs.size()));
}

SweepResult sweep(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                  const SweepConfig& cfg) {
  if (cfg.fanouts.empty() || cfg.alphas.empty() || cfg.policies.empty())
    throw parameter_error("sweep needs non-empty fanout, alpha, and policy grids");
  const std::size_t n = g.num_vertices();

  SweepResult result;
  // improvement[policy][alpha] per fanout, for the geomean across fanouts
  std::vector<std::vector<std::vector<double>>> improvements(
      cfg.policies.size(), std::vector<std::vector<double>>(cfg.alphas.size()));

  for (const FanoutSpec& fanouts : cfg.fanouts) {
    const std::size_t L = fanouts.hops();
    const TransitionModel tm{TransitionModel::Kind::uniform_fanout, fanouts};

    // pass 1: retrospective access counts for the oracle policy
    const bool want_oracle = std::find(cfg.policies.begin(), cfg.policies.end(), "oracle") !=
                             cfg.policies.end();
    std::vector<std::vector<double>> access_counts;
    if (want_oracle) {
      access_counts.assign(part.K, std::vector<double>(n, 0.0));
      for_each_expansion(g, roles, part, fanouts, cfg.batch_size, cfg.epochs, cfg.seeds, nullptr,
                         [&](const BatchRef& ref, const ExpandedNeighborhood& nb) {
                           for (vertex_t v : nb.all_vertices)
                             access_counts[ref.partition][v] += 1.0;
                         });
    }

    std::vector<std::vector<Ranking>> rankings(cfg.policies.size());
    for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
      const std::string& policy = cfg.policies[p];
      rankings[p].reserve(part.K);
      for (std::uint32_t k = 0; k < part.K; ++k) {
        if (policy == "deg")
          rankings[p].push_back(rank_degree(g, roles, part, k, L));
        else if (policy == "1hop")
          rankings[p].push_back(rank_halo_1hop(g, part, k));
        else if (policy == "wpr")
          rankings[p].push_back(rank_wpr(g, roles, part, k, tm));
        else if (policy == "numpaths")
          rankings[p].push_back(rank_numpaths(g, roles, part, k, L));
        else if (policy == "sim") {
          const auto freq =
              empirical_vip(g, roles, part, k, cfg.batch_size, fanouts, cfg.sim_epochs, cfg.seeds);
          rankings[p].push_back(rank_by_scores(part, k, freq));
        } else if (policy == "vip") {
          const auto scores =
              propagate(g, tm, initial_probs(roles, part, k, cfg.batch_size), k);
          rankings[p].push_back(rank_by_scores(part, k, scores.total));
        } else if (policy == "oracle") {
          rankings[p].push_back(rank_by_scores(part, k, access_counts[k]));
        } else {
          throw parameter_error("unknown policy: " + policy);
        }
      }
    }

    std::vector<CachePlan> plans;
    plans.reserve(cfg.policies.size() * cfg.alphas.size());
    for (std::size_t p = 0; p < cfg.policies.size(); ++p)
      for (double alpha : cfg.alphas) plans.push_back(build_cache(rankings[p], alpha, n));

    // pass 2: classify each expansion against every plan plus the no-cache
    // baseline; expansions are identical across plans by construction
    const CachePlan no_cache = CachePlan::empty(part.K, n);
    std::vector<CommReport> reports(plans.size());
    CommReport baseline;
    auto init_report = [&](CommReport& r, double alpha) {
      r.alpha = alpha;
      r.fanout_label = fanouts.label();
      r.epochs = cfg.epochs;
      r.partitions = part.K;
      r.cells.assign(cfg.epochs * part.K, {});
    };
    init_report(baseline, 0.0);
    for (std::size_t i = 0; i < plans.size(); ++i) {
      init_report(reports[i], plans[i].alpha);
      reports[i].policy = cfg.policies[i / cfg.alphas.size()];
    }

    for_each_expansion(
        g, roles, part, fanouts, cfg.batch_size, cfg.epochs, cfg.seeds, nullptr,
        [&](const BatchRef& ref, const ExpandedNeighborhood& nb) {
          const Classified base = classify(nb, part, ref.partition, no_cache);
          auto& bc = baseline.at(ref.epoch, ref.partition);
          bc.local_hits += base.local;
          bc.cache_hits += base.cache;
          bc.remote_misses += base.miss;
          for (std::size_t i = 0; i < plans.size(); ++i) {
            const Classified c = classify(nb, part, ref.partition, plans[i]);
            auto& cell = reports[i].at(ref.epoch, ref.partition);
            cell.local_hits += c.local;
            cell.cache_hits += c.cache;
            cell.remote_misses += c.miss;
          }
        });

    const auto base_misses = baseline.total_misses();
    for (std::size_t p = 0; p < cfg.policies.size(); ++p)
      for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
        CommReport& r = reports[p * cfg.alphas.size() + a];
        const auto misses = r.total_misses();
        if (base_misses == 0)
          r.improvement_vs_nocache = 1.0;
        else if (misses == 0)
          r.improvement_vs_nocache = std::numeric_limits<double>::infinity();
        else
          r.improvement_vs_nocache =
              static_cast<double>(base_misses) / static_cast<double>(misses);
        improvements[p][a].push_back(r.improvement_vs_nocache);
        result.reports.push_back(std::move(r));
      }
  }

  for (std::size_t p = 0; p < cfg.policies.size(); ++p)
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a)
      result.geomeans.push_back(
          {cfg.policies[p], cfg.alphas[a], geometric_mean(improvements[p][a])});
  return result;
}

H2dReport h2d_volume(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                     std::uint32_t k, std::span<const vertex_t> ordering, double gamma,
                     const FanoutSpec& fanouts, std::uint64_t b, std::uint64_t E,
                     const SeedSpec& seeds) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw parameter_error("gamma must lie in [0,1]");
  std::vector<vertex_t> sorted(ordering.begin(), ordering.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != part.members[k])
    throw parameter_error("ordering is not a permutation of the partition's local vertices");

  constexpr auto npos = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> pos(g.num_vertices(), npos);
  for (std::size_t i = 0; i < ordering.size(); ++i) pos[ordering[i]] = i;
  const auto cut = static_cast<std::uint64_t>(
      std::floor(gamma * static_cast<double>(ordering.size()) + 1e-9));

  H2dReport report;
  report.per_epoch.assign(E, 0);
  for (std::uint64_t e = 0; e < E; ++e) {
    const auto batches = epoch_minibatches(roles, part, k, b, e, seeds);
    for (std::size_t i = 0; i < batches.size(); ++i) {
      const auto nb = expand(g, batches[i], fanouts, seeds, BatchRef{e, k, i});
      for (vertex_t v : nb.all_vertices)
        if (part.part_of[v] == k && pos[v] >= cut) report.per_epoch[e]++;
    }
    report.total_transfers += report.per_epoch[e];
  }
  return report;
}

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::ofstream open_csv(const std::string& path, const std::string& spec_hash) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  if (!spec_hash.empty()) out << "# spec_hash=" << spec_hash << '\n';
  return out;
}

}  // namespace

void write_epoch_csv(const std::vector<CommReport>& reports, const std::string& path,
                     const std::string& spec_hash) {
  auto out = open_csv(path, spec_hash);
  out << "policy,alpha,fanouts,epoch,partition,local_hits,cache_hits,remote_misses\n";
  for (const CommReport& r : reports)
    for (std::uint64_t e = 0; e < r.epochs; ++e)
      for (std::uint32_t k = 0; k < r.partitions; ++k) {
        const auto& c = r.at(e, k);
        out << r.policy << ',' << fmt_double(r.alpha) << ',' << r.fanout_label << ',' << e << ','
            << k << ',' << c.local_hits << ',' << c.cache_hits << ',' << c.remote_misses << '\n';
      }
}

void write_summary_csv(const std::vector<CommReport>& reports, const std::string& path,
                       const std::string& spec_hash) {
  auto out = open_csv(path, spec_hash);
  out << "policy,alpha,fanouts,avg_misses,improvement_vs_nocache\n";
  for (const CommReport& r : reports)
    out << r.policy << ',' << fmt_double(r.alpha) << ',' << r.fanout_label << ','
        << fmt_double(r.avg_epoch_misses()) << ',' << fmt_double(r.improvement_vs_nocache) << '\n';
}

void write_geomean_csv(const SweepResult& result, const std::string& path,
                       const std::string& spec_hash) {
  auto out = open_csv(path, spec_hash);
  out << "policy,alpha,geomean_improvement\n";
  for (const auto& gm : result.geomeans)
    out << gm.policy << ',' << fmt_double(gm.alpha) << ',' << fmt_double(gm.geomean_improvement)
        << '\n';
}

}  // namespace vipkit
