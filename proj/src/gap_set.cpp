#include "sgforest/gap_set.hpp"

#include <algorithm>
#include <charconv>

#include "sgforest/errors.hpp"

namespace sgforest {

GapSet::GapSet(std::vector<int> gaps) : gaps_(std::move(gaps)) {
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    if (gaps_[i] <= 0) throw ValidationError("gap set: gaps must be positive, got " + std::to_string(gaps_[i]));
    if (i > 0 && gaps_[i] <= gaps_[i - 1]) throw ValidationError("gap set: gaps must be strictly increasing");
  }
}

GapSet GapSet::parse(std::string_view text) {
  std::vector<int> gaps;
  if (text.empty()) return GapSet{};
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    const auto field = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    int value = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
      throw ValidationError("gap set: malformed entry '" + std::string(field) + "'");
    }
    gaps.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return GapSet(std::move(gaps));
}

std::string GapSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(gaps_[i]);
  }
  return out;
}

bool GapSet::contains(int x) const { return std::binary_search(gaps_.begin(), gaps_.end(), x); }

}  // namespace sgforest
