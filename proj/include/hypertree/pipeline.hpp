#pragma once

#include "hypertree/graph.hpp"
#include "hypertree/json_io.hpp"

#include <cstdint>
#include <string>

namespace hypertree {

/// One experiment: a graph family at a truncation depth plus every knob the
/// stages consume. `out_dir` controls only where files land; it is excluded
/// from the config hash and the emitted bundle so identical experiments give
/// identical bytes wherever they are written.
struct ExperimentConfig {
  std::string family = "example1";  // example1 | example2 | tree
  int depth = 8;
  int branching = 2;  // tree family only
  int base = -1;      // Gromov product base; -1 means the root

  std::string epsilon_policy = "auto";  // "auto" (the admissible cap) | "explicit"
  double epsilon_value = 0;             // used when policy is "explicit"

  std::string threshold_policy = "default";  // "default" | "explicit"
  int threshold2x = 0;                       // used when policy is "explicit"

  std::uint64_t seed = 1;
  int threads = 0;  // 0 = HYPERTREE_THREADS, then hardware

  // scan caps, embedded in every report
  int exhaustive_cap = 600;   // four-point / basepoint sample cap
  int visual_cap = 700;       // full-vertex visual metric only up to this size
  int packing_exact_cap = 64;
  int cover_exact_cap = 24;
  int stage_cap = 64;

  std::string out_dir;  // empty = do not write files
};

nlohmann::json config_to_json(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);
nlohmann::json caps_to_json(const ExperimentConfig& cfg);

/// Admissible visual-metric epsilon for the config: explicit value, or the
/// cap log(2)/delta2x (log(2)/2 when delta is 0, where any epsilon works).
double effective_epsilon(const ExperimentConfig& cfg, int delta2x);

/// The graph named by the config (family + depth + branching).
TruncatedGraph family_graph(const ExperimentConfig& cfg);

/// Two overlapping arc-shaped cell sets covering [0, cell_count); the cover
/// the geodetic audit falls back to when none is supplied.
std::vector<std::vector<int>> default_cell_cover(int cell_count);

struct PipelineResult {
  int exit_code = 0;
  std::string failed_stage;  // empty on success
  std::string error;         // what broke, when exit_code != 0
  nlohmann::json bundle;
  std::vector<std::pair<std::string, bool>> invariants;
};

/// generate -> distances -> products -> delta checks -> visual metric ->
/// cells -> dimension -> faithful tree -> geodetic tree + audit -> bundle.
/// Writes bundle.json, cell_metric.csv and census.csv into out_dir when set.
/// exit_code 0 iff every stage ran and every hard invariant held.
PipelineResult run_pipeline(const ExperimentConfig& cfg);

}  // namespace hypertree
