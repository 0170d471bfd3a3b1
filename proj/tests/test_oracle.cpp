#include <doctest.h>

#include <vector>

#include "sgforest/errors.hpp"
#include "sgforest/oracle.hpp"

using namespace sgforest;
using Counts = std::vector<std::uint64_t>;

TEST_CASE("gap-set search, small genera") {
  const auto sets = oracle::enumerate_gapsets(4);
  CHECK(sets.at(0) == std::vector<GapSet>{GapSet{}});
  CHECK(sets.at(2) == std::vector<GapSet>{GapSet({1, 2}), GapSet({1, 3})});
  CHECK(sets.at(4).size() == 7);
  CHECK_THROWS_AS(oracle::enumerate_gapsets(13), ConfigError);
}

TEST_CASE("gap-set search matches n_g through genus 12") {
  const Counts table{1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592};
  const auto sets = oracle::enumerate_gapsets(12);
  for (int g = 0; g <= 12; ++g) CHECK(sets.at(g).size() == table[static_cast<std::size_t>(g)]);
}

TEST_CASE("oracle semigroup primitives") {
  const auto o = oracle::OracleSemigroup::from_gaps(GapSet({1, 2, 4}));
  CHECK(o.primitives == std::vector<int>{3, 5, 7});
  CHECK(o.members.front() == 0);
  CHECK_THROWS_AS(oracle::OracleSemigroup::from_gaps(GapSet({1, 4})), ValidationError);
}

TEST_CASE("recompute_state") {
  Membership o5_minus_6(31);
  for (int x : {1, 2, 3, 4, 6}) o5_minus_6.remove(x);
  const auto s = oracle::recompute_state(o5_minus_6, 10);
  CHECK(s.multiplicity() == 5);
  CHECK(s.frobenius() == 6);
  CHECK(s.left_primitive_count() == 1);
  CHECK(s.right_primitives() == std::vector<int>{7, 8, 9, 11});

  CHECK(oracle::recompute_state(Membership(31), 10) == root(10));

  Membership s457(31);
  for (int x : {1, 2, 3, 6}) s457.remove(x);
  const auto t = oracle::recompute_state(s457, 10);
  CHECK(t.left_primitive_count() == 2);
  CHECK(t.left_size() == 3);
  CHECK(t.embedding_dimension() == 3);
  CHECK(t.wilf_number() == 2);

  Membership bad(31);
  for (int x : {1, 4}) bad.remove(x);
  CHECK_THROWS_AS(oracle::recompute_state(bad, 10), ValidationError);
}

TEST_CASE("tree and oracles agree") {
  const auto small = oracle::assert_equivalence(6);
  CHECK(small.discrepancies.empty());
  CHECK(small.tree_counts == Counts{1, 1, 2, 4, 7, 12, 23});

  const auto ten = oracle::assert_equivalence(10);
  CHECK(ten.discrepancies.empty());
  CHECK(ten.tree_counts[10] == 204);
  CHECK_THROWS_AS(oracle::assert_equivalence(23), ConfigError);
}

TEST_CASE("a flipped membership bit is detected") {
  const auto s = from_gaps(GapSet({1, 2, 3, 4, 6}), 10);
  REQUIRE_FALSE(oracle::state_discrepancy(s).has_value());
  for (int bit : {6, 5, 7, 11, 3}) {
    Bitmap mem = s.membership_bits();
    if (mem.test(bit)) {
      mem.reset(bit);
    } else {
      mem.set(bit);
    }
    const auto mutated = SemigroupState::from_fields(
        {s.genus_bound(), mem, s.multiplicity(), s.frobenius(), s.genus(), s.left_primitive_count(),
         s.right_primitive_bits()});
    CHECK(oracle::state_discrepancy(mutated).has_value());
  }
}
