#include "sgforest/trim.hpp"

#include "sgforest/errors.hpp"

namespace sgforest {

void TrimPolicy::check() const {
  if (genus_bound < 1 || genus_bound > kMaxGenusBound) {
    throw ConfigError("trim genus bound must be in [1, " + std::to_string(kMaxGenusBound) + "], got " +
                      std::to_string(genus_bound));
  }
  if (denominator && *denominator < 3) {
    throw ConfigError("trim denominator must be >= 3, got " + std::to_string(*denominator));
  }
}

std::string TrimPolicy::descriptor() const {
  auto flag = [](bool b) { return b ? "on" : "off"; };
  std::string out = "bound=" + std::to_string(genus_bound);
  out += ";d=" + (denominator ? std::to_string(*denominator) : std::string("none"));
  out += ";left-size=";
  out += flag(left_size_rule);
  out += ";special=";
  out += special_rule ? (special_rule_strict ? "strict" : "on") : "off";
  out += ";ordinary-embedding=";
  out += flag(trim_ordinary_embedding);
  return out;
}

}  // namespace sgforest
