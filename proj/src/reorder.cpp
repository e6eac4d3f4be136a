#include "vipkit/reorder.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "vipkit/error.hpp"

namespace vipkit {

ReorderMap build_reorder(const PartitionMap& part,
                         const std::vector<std::vector<double>>& scores) {
  if (scores.size() != part.K) throw shape_error("need one score vector per partition");
  const std::size_t n = part.part_of.size();
  for (const auto& s : scores)
    if (s.size() != n) throw shape_error("score vector length does not match vertex count");

  ReorderMap map;
  map.old_of_new.reserve(n);
  map.ranges.reserve(part.K);
  for (std::uint32_t k = 0; k < part.K; ++k) {
    const std::uint64_t start = map.old_of_new.size();
    std::vector<vertex_t> local = part.members[k];
    std::sort(local.begin(), local.end(), [&](vertex_t a, vertex_t b) {
      if (scores[k][a] != scores[k][b]) return scores[k][a] > scores[k][b];
      return a < b;
    });
    map.old_of_new.insert(map.old_of_new.end(), local.begin(), local.end());
    map.ranges.emplace_back(start, map.old_of_new.size());
  }
  map.new_of_old.resize(n);
  for (std::size_t i = 0; i < n; ++i) map.new_of_old[map.old_of_new[i]] = static_cast<vertex_t>(i);
  return map;
}

ReorderedDataset apply_reorder(const Graph& g, const VertexRoles& roles, const PartitionMap& part,
                               const ReorderMap& map) {
  const std::size_t n = g.num_vertices();
  if (map.size() != n) throw shape_error("reorder map size does not match vertex count");

  ReorderedDataset out;
  Graph& ng = out.graph;
  ng.fwd_offsets.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u)
    ng.fwd_offsets[u + 1] =
        ng.fwd_offsets[u] + g.out_degree(map.old_of_new[u]);
  ng.fwd_targets.resize(g.num_edges());
  for (std::size_t u = 0; u < n; ++u) {
    const vertex_t old_u = map.old_of_new[u];
    offset_t w = ng.fwd_offsets[u];
    for (vertex_t t : g.out_neighbors(old_u)) ng.fwd_targets[w++] = map.new_of_old[t];
    std::sort(ng.fwd_targets.begin() + ng.fwd_offsets[u], ng.fwd_targets.begin() + w);
  }
  ng.rev_offsets.assign(n + 1, 0);
  for (vertex_t t : ng.fwd_targets) ng.rev_offsets[t + 1]++;
  for (std::size_t i = 0; i < n; ++i) ng.rev_offsets[i + 1] += ng.rev_offsets[i];
  ng.rev_targets.resize(ng.fwd_targets.size());
  std::vector<offset_t> cursor(ng.rev_offsets.begin(), ng.rev_offsets.end() - 1);
  for (std::size_t u = 0; u < n; ++u)
    for (offset_t i = ng.fwd_offsets[u]; i < ng.fwd_offsets[u + 1]; ++i)
      ng.rev_targets[cursor[ng.fwd_targets[i]]++] = static_cast<vertex_t>(u);

  out.roles.role.resize(n);
  for (std::size_t u = 0; u < n; ++u) out.roles.role[u] = roles.role[map.old_of_new[u]];

  std::vector<std::uint32_t> labels(n);
  for (std::size_t u = 0; u < n; ++u) labels[u] = part.part_of[map.old_of_new[u]];
  out.part = PartitionMap::from_labels(std::move(labels), part.K);
  return out;
}

void write_reorder_map(const ReorderMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot write " + path);
  for (std::size_t old = 0; old < map.size(); ++old)
    out << old << ' ' << map.new_of_old[old] << '\n';
}

ReorderMap load_reorder_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  ReorderMap map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::uint64_t old = 0, nw = 0;
    auto r1 = std::from_chars(line.data(), line.data() + line.size(), old);
    if (r1.ec != std::errc())
      throw format_error(path + ":" + std::to_string(lineno) + ": bad reorder line");
    const char* p = r1.ptr;
    while (p < line.data() + line.size() && *p == ' ') ++p;
    auto r2 = std::from_chars(p, line.data() + line.size(), nw);
    if (r2.ec != std::errc())
      throw format_error(path + ":" + std::to_string(lineno) + ": bad reorder line");
    if (old != map.new_of_old.size())
      throw format_error(path + ": reorder lines must be in old-id order");
    map.new_of_old.push_back(static_cast<vertex_t>(nw));
  }
  const std::size_t n = map.new_of_old.size();
  map.old_of_new.assign(n, 0);
  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t old = 0; old < n; ++old) {
    const vertex_t nw = map.new_of_old[old];
    if (nw >= n || seen[nw]) throw format_error(path + ": not a permutation");
    seen[nw] = 1;
    map.old_of_new[nw] = static_cast<vertex_t>(old);
  }
  return map;
}

}  // namespace vipkit
