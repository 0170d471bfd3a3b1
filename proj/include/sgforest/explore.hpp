#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sgforest/gap_set.hpp"
#include "sgforest/kernel.hpp"
#include "sgforest/trim.hpp"

namespace sgforest {

// Per-genus node counts of one exploration, plus every Wilf violation seen.
struct ExplorationReport {
  int genus_bound = 0;  // exploration depth; counts has genus_bound + 1 entries
  std::string policy_descriptor;
  std::vector<std::uint64_t> counts;
  std::vector<GapSet> violations;  // canonically sorted
  std::uint64_t nodes_visited = 0;

  static ExplorationReport empty(int depth, std::string policy_descriptor);

  friend bool operator==(const ExplorationReport&, const ExplorationReport&) = default;
};

// Pointwise sum. Throws ContractViolation if bounds or descriptors differ.
ExplorationReport merge(const ExplorationReport& a, const ExplorationReport& b);
void merge_into(ExplorationReport& into, const ExplorationReport& from);

// Depth-first walk of the retained subtree below `start`, down to genus `depth`.
// `start` must be retained and carry a genus bound of at least `depth`.
ExplorationReport explore_seq(const SemigroupState& start, const TrimPolicy& policy, int depth);

struct Frontier {
  std::vector<SemigroupState> nodes;  // retained nodes of genus exactly g0, canonical order
  ExplorationReport prefix;           // counts for genus < g0
};

Frontier split_frontier(const TrimPolicy& policy, int depth, int frontier_genus);

inline constexpr int kDefaultFrontierGenus = 22;

struct ExploreOptions {
  int workers = 1;
  std::optional<int> frontier_genus;  // default min(depth, kDefaultFrontierGenus)
  std::optional<std::filesystem::path> checkpoint_path;
  std::chrono::milliseconds checkpoint_interval{60'000};
  // Run only the first N frontier tasks, leaving the rest pending.
  std::optional<std::size_t> stop_after_tasks;
};

struct ExploreOutcome {
  ExplorationReport report;
  std::vector<GapSet> pending;  // frontier roots not yet explored

  bool complete() const noexcept { return pending.empty(); }
};

struct Checkpoint {
  std::string policy_descriptor;
  std::vector<GapSet> pending;
  ExplorationReport partial;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// Full run from the root: frontier split, then a shared task queue drained by
// `options.workers` threads.
ExploreOutcome run_exploration(const TrimPolicy& policy, int depth, const ExploreOptions& options);

// Continues a checkpointed run. Throws LoadError if the checkpoint was written
// for a different policy or depth.
ExploreOutcome resume_exploration(const Checkpoint& checkpoint, const TrimPolicy& policy, int depth,
                                  const ExploreOptions& options);

ExplorationReport explore_parallel(const TrimPolicy& policy, int depth, int workers, int frontier_genus);

// Line-oriented text file, written atomically through a temporary file.
void save_checkpoint(const std::filesystem::path& path, const std::vector<GapSet>& pending,
                     const ExplorationReport& partial);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Serialized form used by save_checkpoint.
std::string format_checkpoint(const std::vector<GapSet>& pending, const ExplorationReport& partial);
Checkpoint parse_checkpoint(const std::string& text);

}  // namespace sgforest
