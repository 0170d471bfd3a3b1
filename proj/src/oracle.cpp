#include "sgforest/oracle.hpp"

#include <algorithm>
#include <set>

#include "sgforest/errors.hpp"

namespace sgforest::oracle {

namespace {

bool sum_of_two_members(const std::vector<bool>& member, int x) {
  for (int y = 1; y < x; ++y) {
    if (member[static_cast<std::size_t>(y)] && member[static_cast<std::size_t>(x - y)]) return true;
  }
  return false;
}

// Decides 1..2g in order; a gap is admissible only if it is not a sum of two
// earlier nonzero members.
void search(int x, int g, int gaps_left, std::vector<bool>& member, std::vector<int>& gaps,
            std::vector<GapSet>& out) {
  const int top = 2 * g;
  if (gaps_left == 0) {
    out.emplace_back(gaps);
    return;
  }
  if (x > top || top - x + 1 < gaps_left) return;
  if (!sum_of_two_members(member, x)) {
    member[static_cast<std::size_t>(x)] = false;
    gaps.push_back(x);
    search(x + 1, g, gaps_left - 1, member, gaps, out);
    gaps.pop_back();
  }
  if (x == 1) return;  // 1 in S forces S = N
  member[static_cast<std::size_t>(x)] = true;
  search(x + 1, g, gaps_left, member, gaps, out);
}

}  // namespace

OracleSemigroup OracleSemigroup::from_gaps(const GapSet& gaps) {
  const int g = static_cast<int>(gaps.size());
  const int top = 2 * g + 1;
  OracleSemigroup o;
  o.gaps = gaps;
  std::vector<bool> member(static_cast<std::size_t>(2 * top) + 2, true);
  for (int x : gaps.values()) {
    if (x > top) throw ValidationError("gap " + std::to_string(x) + " exceeds 2g+1");
    member[static_cast<std::size_t>(x)] = false;
  }
  for (int x = 0; x <= top; ++x) {
    if (member[static_cast<std::size_t>(x)]) o.members.push_back(x);
  }
  for (int x : o.members) {
    for (int y : o.members) {
      if (x > 0 && y > 0 && !member[static_cast<std::size_t>(x + y)]) {
        throw ValidationError("complement not closed: " + std::to_string(x) + " + " + std::to_string(y));
      }
    }
  }
  // Every primitive is below c + m <= 2g + 1 + g + 1; scanning to 2*top covers it.
  for (int x = 1; x <= 2 * top; ++x) {
    if (member[static_cast<std::size_t>(x)] && !sum_of_two_members(member, x)) o.primitives.push_back(x);
  }
  return o;
}

std::map<int, std::vector<GapSet>> enumerate_gapsets(int g_max) {
  if (g_max < 0 || g_max > kMaxGapSetGenus) {
    throw ConfigError("gap-set enumeration is limited to genus <= " + std::to_string(kMaxGapSetGenus) +
                      " (subset search grows combinatorially), got " + std::to_string(g_max));
  }
  std::map<int, std::vector<GapSet>> out;
  for (int g = 0; g <= g_max; ++g) {
    std::vector<bool> member(static_cast<std::size_t>(2 * g) + 2, true);
    std::vector<int> gaps;
    std::vector<GapSet> found;
    search(1, g, g, member, gaps, found);
    for (const auto& t : found) OracleSemigroup::from_gaps(t);  // self-check closure
    std::sort(found.begin(), found.end());
    out[g] = std::move(found);
  }
  return out;
}

SemigroupState recompute_state(const Membership& membership, int genus_bound) {
  const int bound = membership.bound();
  std::vector<bool> member(static_cast<std::size_t>(bound) + 1);
  for (int x = 0; x <= bound; ++x) member[static_cast<std::size_t>(x)] = membership.contains(x);
  if (!member[0]) throw ValidationError("0 must be a member");
  for (int x = 1; x <= bound; ++x) {
    for (int y = 1; x + y <= bound; ++y) {
      if (member[static_cast<std::size_t>(x)] && member[static_cast<std::size_t>(y)] &&
          !member[static_cast<std::size_t>(x + y)]) {
        throw ValidationError("closure violated: " + std::to_string(x) + " + " + std::to_string(y));
      }
    }
  }

  SemigroupState::Fields f{genus_bound, membership.bits(), 0, -1, 0, 0, Bitmap{}};
  for (int x = bound; x >= 1; --x) {
    if (!member[static_cast<std::size_t>(x)]) {
      f.frobenius = x;
      break;
    }
  }
  for (int x = 1; x <= bound; ++x) {
    if (!member[static_cast<std::size_t>(x)]) ++f.genus;
  }
  for (int x = 1; x <= bound; ++x) {
    if (member[static_cast<std::size_t>(x)]) {
      f.m = x;
      break;
    }
  }
  if (f.m == 0) throw ValidationError("no nonzero member within the bound");
  for (int x = 1; x <= bound; ++x) {
    if (!member[static_cast<std::size_t>(x)] || sum_of_two_members(member, x)) continue;
    if (x < f.frobenius) {
      ++f.left_primitives;
    } else {
      f.right_primitives.set(x);
    }
  }
  return SemigroupState::from_fields(f);
}

std::optional<std::string> state_discrepancy(const SemigroupState& s) {
  SemigroupState ref;
  try {
    ref = recompute_state(s.membership(), s.genus_bound());
  } catch (const Error& e) {
    return "state " + s.gaps().to_string() + ": " + e.what();
  }
  if (ref == s) return std::nullopt;
  std::string what = "state " + s.gaps().to_string() + ":";
  if (ref.membership_bits() != s.membership_bits()) what += " membership";
  if (ref.multiplicity() != s.multiplicity()) what += " m";
  if (ref.frobenius() != s.frobenius()) what += " F";
  if (ref.genus() != s.genus()) what += " g";
  if (ref.left_primitive_count() != s.left_primitive_count()) what += " e_l";
  if (ref.right_primitives() != s.right_primitives()) what += " right_primitives";
  return what + " differ from recomputation";
}

EquivalenceReport assert_equivalence(int g_max) {
  if (g_max < 0 || g_max > kMaxRecomputeGenus) {
    throw ConfigError("equivalence check is limited to genus <= " + std::to_string(kMaxRecomputeGenus));
  }
  EquivalenceReport report;
  report.tree_counts.assign(static_cast<std::size_t>(g_max) + 1, 0);
  const int gap_leg = std::min(g_max, kMaxGapSetGenus);
  std::map<int, std::vector<GapSet>> tree_sets;

  std::vector<SemigroupState> stack{root(std::max(g_max, 1))};
  while (!stack.empty()) {
    const SemigroupState s = stack.back();
    stack.pop_back();
    ++report.tree_counts[static_cast<std::size_t>(s.genus())];
    if (auto d = state_discrepancy(s)) report.discrepancies.push_back(*d);
    if (s.genus() <= gap_leg) tree_sets[s.genus()].push_back(s.gaps());
    if (s.genus() < g_max) {
      for (auto& c : children(s)) stack.push_back(std::move(c));
    }
  }

  const auto reference = enumerate_gapsets(gap_leg);
  for (int g = 0; g <= gap_leg; ++g) {
    auto& mine = tree_sets[g];
    std::sort(mine.begin(), mine.end());
    const auto& theirs = reference.at(g);
    if (std::adjacent_find(mine.begin(), mine.end()) != mine.end()) {
      report.discrepancies.push_back("genus " + std::to_string(g) + ": tree produced a duplicate gap set");
    }
    std::vector<GapSet> only_tree;
    std::vector<GapSet> only_oracle;
    std::set_difference(mine.begin(), mine.end(), theirs.begin(), theirs.end(), std::back_inserter(only_tree));
    std::set_difference(theirs.begin(), theirs.end(), mine.begin(), mine.end(), std::back_inserter(only_oracle));
    for (const auto& t : only_tree) {
      report.discrepancies.push_back("genus " + std::to_string(g) + ": {" + t.to_string() + "} only in tree");
    }
    for (const auto& t : only_oracle) {
      report.discrepancies.push_back("genus " + std::to_string(g) + ": {" + t.to_string() + "} only in gap-set search");
    }
  }
  return report;
}

}  // namespace sgforest::oracle
