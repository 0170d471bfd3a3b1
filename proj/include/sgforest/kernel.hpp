#pragma once

#include <cstdint>
#include <vector>

#include "sgforest/bitmap.hpp"
#include "sgforest/gap_set.hpp"

namespace sgforest {

// Largest supported genus bound. Keeps 3G+1 inside one Bitmap and every
// counter below 2^64 for the trimmed trees.
inline constexpr int kMaxGenusBound = 120;

// Membership bit array over [0, bound]. Bits above `bound` are kept set:
// every such integer exceeds the conductor of any state of genus <= G.
class Membership {
 public:
  explicit Membership(int bound);

  int bound() const noexcept { return bound_; }
  bool contains(int x) const { return x > bound_ || bits_.test(x); }
  void remove(int x);
  void add(int x);
  const Bitmap& bits() const noexcept { return bits_; }

  friend bool operator==(const Membership&, const Membership&) = default;

 private:
  int bound_;
  Bitmap bits_;
};

struct InvariantRecord {
  int m = 0;
  int e = 0;
  int e_l = 0;
  int e_r = 0;
  int frobenius = 0;
  int conductor = 0;
  int genus = 0;
  int left_size = 0;
  std::int64_t wilf = 0;

  friend bool operator==(const InvariantRecord&, const InvariantRecord&) = default;
};

// c = q*m - rho with 0 <= rho < m.
struct EuclidSplit {
  int q = 0;
  int rho = 0;
  bool special = false;

  friend bool operator==(const EuclidSplit&, const EuclidSplit&) = default;
};

class SemigroupState;
SemigroupState root(int genus_bound);
SemigroupState child(const SemigroupState& s, int a);
SemigroupState from_gaps(const GapSet& gaps, int genus_bound);

// One node of the tree: membership plus incrementally maintained invariants.
// Right primitives are stored as a bit set; they always lie in [c, c+m-1]
// (except for N, whose single primitive 1 lies above c = 0).
class SemigroupState {
 public:
  // Placeholder value; only meaningful after assignment from a real state.
  SemigroupState() = default;

  int genus_bound() const noexcept { return genus_bound_; }
  int bound() const noexcept { return 3 * genus_bound_ + 1; }

  int multiplicity() const noexcept { return m_; }
  int frobenius() const noexcept { return frobenius_; }
  int conductor() const noexcept { return frobenius_ + 1; }
  int genus() const noexcept { return genus_; }
  int left_primitive_count() const noexcept { return left_primitives_; }
  int right_primitive_count() const noexcept { return right_count_; }
  int embedding_dimension() const noexcept { return left_primitives_ + right_count_; }
  int left_size() const noexcept { return conductor() - genus_; }
  std::int64_t wilf_number() const noexcept {
    return std::int64_t{embedding_dimension()} * left_size() - conductor();
  }

  // O_m = {0} u (m + N); N itself is O_1.
  bool is_ordinary() const noexcept { return genus_ == m_ - 1; }

  bool contains(int x) const { return x > bound() || membership_.test(x); }
  Membership membership() const;
  const Bitmap& membership_bits() const noexcept { return membership_; }
  const Bitmap& right_primitive_bits() const noexcept { return right_primitives_; }
  std::vector<int> right_primitives() const;
  GapSet gaps() const;

  template <class Fn>
  void for_each_right_primitive(Fn&& fn) const {
    right_primitives_.for_each(fn);
  }

  // Stops at the first primitive for which fn returns false.
  template <class Fn>
  void for_each_right_primitive_until(Fn&& fn) const {
    right_primitives_.for_each_until(fn);
  }

  friend bool operator==(const SemigroupState&, const SemigroupState&) = default;

  // Builds the child S \ {a} without checking that `a` is a right primitive
  // or that the genus bound is respected. Hot path of the explorer.
  void assign_child_unchecked(const SemigroupState& parent, int a) noexcept {
    *this = parent;
    membership_.reset(a);
    frobenius_ = a;
    ++genus_;
    if (a == parent.m_) {
      // O_m \ {m} = O_{m+1}: primitives m+1 .. 2m+1, none on the left.
      m_ = a + 1;
      left_primitives_ = 0;
      right_primitives_ = Bitmap{};
      right_primitives_.set_range(a + 1, 2 * a + 1);
      right_count_ = a + 1;
      return;
    }
    left_primitives_ += parent.right_primitives_.count_below(a);
    right_primitives_.clear_through(a);
    right_count_ = right_primitives_.count();
    const int candidate = a + m_;
    if (!has_decomposition(candidate)) {
      right_primitives_.set(candidate);
      ++right_count_;
    }
  }

  // Fields set directly; callers guarantee consistency (see validate()).
  struct Fields {
    int genus_bound;
    Bitmap membership;
    int m;
    int frobenius;
    int genus;
    int left_primitives;
    Bitmap right_primitives;
  };
  static SemigroupState from_fields(const Fields& f);

 private:
  friend SemigroupState root(int genus_bound);

  // True iff x = s1 + s2 with s1, s2 nonzero members.
  bool has_decomposition(int x) const noexcept {
    const int half = x / 2;
    for (int s = membership_.next_set(m_); s != -1 && s <= half; s = membership_.next_set(s + 1)) {
      if (membership_.test(x - s)) return true;
    }
    return false;
  }

  Bitmap membership_;
  Bitmap right_primitives_;
  std::int16_t genus_bound_ = 0;
  std::int16_t m_ = 1;
  std::int16_t frobenius_ = -1;
  std::int16_t genus_ = 0;
  std::int16_t left_primitives_ = 0;
  std::int16_t right_count_ = 0;
};

std::vector<SemigroupState> children(const SemigroupState& s);
InvariantRecord invariants(const SemigroupState& s);
EuclidSplit euclid_split(const SemigroupState& s);

// All primitives of the semigroup encoded by `membership`, computed from
// scratch. Throws ValidationError if the membership is not additively closed.
std::vector<int> primitives_by_sieve(const Membership& membership);

// Throws ValidationError if `membership` is not a numerical semigroup within
// its bound; the message names the first violating pair.
void check_closure(const Membership& membership);

// Checks every state invariant against a from-scratch sieve.
void validate(const SemigroupState& s);

}  // namespace sgforest
