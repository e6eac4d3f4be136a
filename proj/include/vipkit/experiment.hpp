#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vipkit/commsim.hpp"
#include "vipkit/graph.hpp"

namespace vipkit {

/// Declarative description of a full experiment run. The JSON document is
/// the provenance record: its canonical hash is embedded in every output
/// file so artifacts from different runs cannot be mixed silently.
struct ExperimentSpec {
  // graph: either a synthetic recipe or a .vcsr path
  bool synthetic = true;
  SynthKind kind = SynthKind::preferential_attachment;
  SynthParams gparams;
  std::string graph_path;

  // roles: either fractions (seeded) or a roles file
  std::string roles_path;
  double train_frac = 0.1;
  double valid_frac = 0.0;
  double test_frac = 0.0;
  std::uint64_t roles_seed = 0;

  // partitioning: built-in method or label file
  std::uint32_t K = 1;
  PartitionMethod method = PartitionMethod::random;
  std::uint64_t part_seed = 0;
  std::string parts_path;

  std::vector<FanoutSpec> fanouts;
  std::uint64_t batch_size = 1;
  std::uint64_t epochs = 1;
  std::vector<double> alphas;
  std::vector<std::string> policies;
  std::vector<double> gammas;
  std::uint64_t sim_epochs = 2;
  std::uint64_t seed = 0;
  std::string out_dir = "out";

  static ExperimentSpec from_json_file(const std::string& path);
  static ExperimentSpec from_json_text(const std::string& text);
  std::string to_canonical_json() const;
  std::string hash() const;  // 16 hex chars over the canonical form
  void validate() const;
};

struct ExperimentData {
  Graph graph;
  VertexRoles roles;
  PartitionMap part;
};

/// Materializes the graph, roles, and partition map a spec describes.
ExperimentData load_experiment_data(const ExperimentSpec& spec);

/// Runs the communication sweep (and the gamma sweep when requested) and
/// writes comm_epochs.csv, comm_summary.csv, comm_geomean.csv, h2d.csv and
/// manifest.json under spec.out_dir.
void run_experiment(const ExperimentSpec& spec);

/// FNV-1a 64-bit, printed as 16 hex characters.
std::string content_hash(const std::string& text);

/// Leading "# spec_hash=..." comment of a CSV, or empty.
std::string read_spec_hash(const std::string& path);

}  // namespace vipkit
