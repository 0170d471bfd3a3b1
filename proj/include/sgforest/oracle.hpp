#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgforest/gap_set.hpp"
#include "sgforest/kernel.hpp"

// Slow reference implementations, independent of the incremental kernel.
namespace sgforest::oracle {

inline constexpr int kMaxGapSetGenus = 12;
inline constexpr int kMaxRecomputeGenus = 22;

// Explicit description of a semigroup of genus g: members on [0, 2g+1],
// gaps, and primitives found by testing every pair of members.
struct OracleSemigroup {
  std::vector<int> members;
  GapSet gaps;
  std::vector<int> primitives;

  static OracleSemigroup from_gaps(const GapSet& gaps);
};

// All gap sets of genus 0..g_max, found by subset search on {1, ..., 2g}
// rather than by descending the tree. Throws ConfigError for g_max > 12.
std::map<int, std::vector<GapSet>> enumerate_gapsets(int g_max);

// State whose every field is recomputed by definition from `membership`.
SemigroupState recompute_state(const Membership& membership, int genus_bound);

// Field-by-field comparison of `s` with its recomputation; nullopt when equal.
std::optional<std::string> state_discrepancy(const SemigroupState& s);

struct EquivalenceReport {
  std::vector<std::string> discrepancies;
  std::vector<std::uint64_t> tree_counts;  // per genus, no trimming
};

// (a) tree vs gap-set search as sets of gap sets, for genus <= min(g_max, 12);
// (b) every tree node vs its recomputation, for genus <= g_max (at most 22).
EquivalenceReport assert_equivalence(int g_max);

}  // namespace sgforest::oracle
