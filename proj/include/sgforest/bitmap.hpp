#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace sgforest {

// Fixed 384-bit set used for semigroup membership and primitive sets.
class Bitmap {
 public:
  static constexpr int kWords = 6;
  static constexpr int kBits = kWords * 64;

  constexpr Bitmap() = default;

  static constexpr Bitmap all_ones() {
    Bitmap b;
    b.words_.fill(~std::uint64_t{0});
    return b;
  }

  constexpr bool test(int x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  constexpr void set(int x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  constexpr void reset(int x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  // Sets every bit in [lo, hi].
  constexpr void set_range(int lo, int hi) {
    for (int x = lo; x <= hi; ++x) set(x);
  }

  constexpr int count() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }

  // Number of set bits strictly below x.
  constexpr int count_below(int x) const {
    int n = 0;
    const int word = x >> 6;
    for (int i = 0; i < word; ++i) n += std::popcount(words_[i]);
    if (word < kWords && (x & 63) != 0) n += std::popcount(words_[word] & ((std::uint64_t{1} << (x & 63)) - 1));
    return n;
  }

  // Clears every bit at or below x.
  constexpr void clear_through(int x) {
    const int word = x >> 6;
    for (int i = 0; i < word; ++i) words_[i] = 0;
    const int bit = x & 63;
    words_[word] &= bit == 63 ? 0 : ~((std::uint64_t{2} << bit) - 1);
  }

  // Smallest set bit >= from, or -1.
  constexpr int next_set(int from) const {
    if (from >= kBits) return -1;
    int word = from >> 6;
    std::uint64_t w = words_[word] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return word * 64 + std::countr_zero(w);
      if (++word == kWords) return -1;
      w = words_[word];
    }
  }

  template <class Fn>
  constexpr void for_each(Fn&& fn) const {
    for (int i = 0; i < kWords; ++i) {
      for (std::uint64_t w = words_[i]; w != 0; w &= w - 1) fn(i * 64 + std::countr_zero(w));
    }
  }

  template <class Fn>
  constexpr void for_each_until(Fn&& fn) const {
    for (int i = 0; i < kWords; ++i) {
      for (std::uint64_t w = words_[i]; w != 0; w &= w - 1) {
        if (!fn(i * 64 + std::countr_zero(w))) return;
      }
    }
  }

  constexpr bool any() const {
    for (auto w : words_)
      if (w != 0) return true;
    return false;
  }

  constexpr Bitmap operator&(const Bitmap& o) const {
    Bitmap r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }

  friend constexpr bool operator==(const Bitmap&, const Bitmap&) = default;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace sgforest
