#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sgforest {

// Sorted set of gaps of a numerical semigroup. Textual form is a
// comma-separated list ("1,2,4,5"); the empty string denotes N.
class GapSet {
 public:
  GapSet() = default;
  // Throws ValidationError unless `gaps` is strictly increasing and positive.
  explicit GapSet(std::vector<int> gaps);

  static GapSet parse(std::string_view text);
  std::string to_string() const;

  std::span<const int> values() const noexcept { return gaps_; }
  std::size_t size() const noexcept { return gaps_.size(); }
  bool empty() const noexcept { return gaps_.empty(); }
  bool contains(int x) const;

  friend bool operator==(const GapSet&, const GapSet&) = default;
  // Canonical order: lexicographic on the sorted gap list.
  friend auto operator<=>(const GapSet&, const GapSet&) = default;

 private:
  std::vector<int> gaps_;
};

}  // namespace sgforest
