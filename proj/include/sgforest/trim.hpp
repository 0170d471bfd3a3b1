#pragma once

#include <optional>
#include <string>

#include "sgforest/kernel.hpp"

namespace sgforest {

// Which subtree cuts are active while exploring the tree up to genus_bound.
struct TrimPolicy {
  int genus_bound = 1;
  std::optional<int> denominator;  // d >= 3; empty means no e_l / e trimming
  bool left_size_rule = false;
  bool special_rule = false;
  // Require the cut node itself to be non-special. Off: any node without a
  // right primitive = -1 mod m is cut; special nodes cut that way are still
  // Wilf-checked but not counted.
  bool special_rule_strict = false;
  // Apply the embedding-dimension cut to ordinary nodes too.
  bool trim_ordinary_embedding = true;

  static TrimPolicy none(int genus_bound) {
    TrimPolicy p;
    p.genus_bound = genus_bound;
    return p;
  }

  // Throws ConfigError on an out-of-range bound or denominator.
  void check() const;

  // Stable textual encoding, e.g. "bound=100;d=3;left-size=off;special=off;ordinary-embedding=on".
  std::string descriptor() const;

  friend bool operator==(const TrimPolicy&, const TrimPolicy&) = default;
};

namespace trim {

// Every descendant has e >= e_l >= m/d.
inline bool cut_left_primitive(const SemigroupState& s, int d) {
  return !s.is_ordinary() && d * s.left_primitive_count() >= s.multiplicity();
}

// cut_left_primitive(child(parent, a), d), where `rank` counts the right
// primitives of `parent` below a. Monotone in rank, so callers iterating a in
// increasing order may stop at the first true.
inline bool cut_left_primitive_of_child(const SemigroupState& parent, int a, int rank, int d) {
  if (a == parent.multiplicity()) return false;  // child is O_{m+1}
  return d * (parent.left_primitive_count() + rank) >= parent.multiplicity();
}

// e >= m/d + (G - g): e drops by at most one per generation, so every
// descendant of genus <= G keeps e >= m/d.
inline bool cut_embedding(const SemigroupState& s, int d, int genus_bound) {
  return d * s.embedding_dimension() >= s.multiplicity() + d * (genus_bound - s.genus());
}

// |L| >= G/3 forces c >= 4g/3 on every descendant of genus <= G.
inline bool cut_left_size(const SemigroupState& s, int genus_bound) { return 3 * s.left_size() >= genus_bound; }

inline bool is_special(const SemigroupState& s) { return s.conductor() % s.multiplicity() == 0; }

// No right primitive = -1 mod m: no proper descendant is special.
inline bool cut_special_residue(const SemigroupState& s) {
  const int m = s.multiplicity();
  bool found = false;
  s.for_each_right_primitive_until([&](int b) {
    found = (b + 1) % m == 0;
    return !found;
  });
  return !found;
}

// Non-special with no right primitive congruent to -1 mod m: no descendant is special.
inline bool cut_special(const SemigroupState& s) {
  return !is_special(s) && cut_special_residue(s);
}

inline bool retain(const SemigroupState& s, const TrimPolicy& policy) {
  if (policy.denominator) {
    const int d = *policy.denominator;
    if (cut_left_primitive(s, d)) return false;
    if ((policy.trim_ordinary_embedding || !s.is_ordinary()) && cut_embedding(s, d, policy.genus_bound)) return false;
  }
  if (policy.left_size_rule && cut_left_size(s, policy.genus_bound)) return false;
  if (policy.special_rule && (policy.special_rule_strict ? cut_special(s) : cut_special_residue(s))) return false;
  return true;
}

// A node outside the retained tree that must still pass the Wilf check: a
// special node dropped by the non-strict special cut.
inline bool check_when_cut(const SemigroupState& s, const TrimPolicy& policy) {
  return policy.special_rule && !policy.special_rule_strict && is_special(s);
}

}  // namespace trim
}  // namespace sgforest
