#include <charconv>
#include <fstream>
#include <sstream>

#include "sgforest/errors.hpp"
#include "sgforest/explore.hpp"

namespace sgforest {

namespace {

constexpr std::string_view kMagic = "sgforest-checkpoint v1";
// Extension lines carrying violations found by completed tasks.
constexpr std::string_view kViolationPrefix = "violation:";

std::uint64_t parse_u64(std::string_view field, std::size_t line) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
    throw LoadError(line, "malformed integer '" + std::string(field) + "'");
  }
  return value;
}

GapSet parse_gaps(std::string_view text, std::size_t line) {
  try {
    return GapSet::parse(text);
  } catch (const ValidationError& e) {
    throw LoadError(line, e.what());
  }
}

}  // namespace

std::string format_checkpoint(const std::vector<GapSet>& pending, const ExplorationReport& partial) {
  std::string out;
  out += kMagic;
  out += '\n';
  out += partial.policy_descriptor;
  out += '\n';
  for (std::size_t g = 0; g < partial.counts.size(); ++g) {
    if (g > 0) out += ',';
    out += std::to_string(partial.counts[g]);
  }
  out += '\n';
  out += std::to_string(partial.nodes_visited);
  out += '\n';
  for (const auto& v : partial.violations) {
    out += kViolationPrefix;
    out += v.to_string();
    out += '\n';
  }
  for (const auto& p : pending) {
    out += p.to_string();
    out += '\n';
  }
  return out;
}

Checkpoint parse_checkpoint(const std::string& text) {
  std::vector<std::string_view> lines;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    if (nl == std::string_view::npos) throw LoadError(lines.size() + 1, "missing final line feed");
    lines.push_back(rest.substr(0, nl));
    rest.remove_prefix(nl + 1);
  }
  if (lines.size() < 4) throw LoadError(lines.size() + 1, "truncated checkpoint header");
  if (lines[0] != kMagic) throw LoadError(1, "unsupported checkpoint version '" + std::string(lines[0]) + "'");
  if (lines[1].empty()) throw LoadError(2, "empty policy descriptor");

  Checkpoint cp;
  cp.policy_descriptor = std::string(lines[1]);
  cp.partial.policy_descriptor = cp.policy_descriptor;
  std::string_view counts = lines[2];
  while (true) {
    const auto comma = counts.find(',');
    cp.partial.counts.push_back(parse_u64(counts.substr(0, comma), 3));
    if (comma == std::string_view::npos) break;
    counts.remove_prefix(comma + 1);
  }
  cp.partial.genus_bound = static_cast<int>(cp.partial.counts.size()) - 1;
  cp.partial.nodes_visited = parse_u64(lines[3], 4);

  std::uint64_t sum = 0;
  for (auto c : cp.partial.counts) sum += c;
  if (sum != cp.partial.nodes_visited) throw LoadError(4, "nodes_visited does not equal the sum of counts");

  for (std::size_t i = 4; i < lines.size(); ++i) {
    const auto line = lines[i];
    if (line.starts_with(kViolationPrefix)) {
      if (!cp.pending.empty()) throw LoadError(i + 1, "violation line after pending roots");
      cp.partial.violations.push_back(parse_gaps(line.substr(kViolationPrefix.size()), i + 1));
    } else {
      GapSet gaps = parse_gaps(line, i + 1);
      if (static_cast<int>(gaps.size()) > cp.partial.genus_bound) {
        throw LoadError(i + 1, "pending root deeper than the checkpointed depth");
      }
      cp.pending.push_back(std::move(gaps));
    }
  }
  return cp;
}

void save_checkpoint(const std::filesystem::path& path, const std::vector<GapSet>& pending,
                     const ExplorationReport& partial) {
  const std::string text = format_checkpoint(pending, partial);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

}  // namespace sgforest
