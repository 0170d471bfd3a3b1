#include "sgforest/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sgforest/errors.hpp"
#include "sgforest/oracle.hpp"

namespace sgforest::cli {

namespace {

std::string group_digits(std::uint64_t v) {
  std::string raw = std::to_string(v);
  std::string out;
  const auto n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out += ' ';
    out += raw[i];
  }
  return out;
}

std::string read_input(const std::optional<std::filesystem::path>& path) {
  std::ostringstream buf;
  if (path) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path->string());
    buf << in.rdbuf();
  } else {
    buf << std::cin.rdbuf();
  }
  return buf.str();
}

void write_output(const std::optional<std::filesystem::path>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path->string() + " for writing");
  file << text;
  if (!file.flush()) throw IoError("write failed on " + path->string());
}

int run_exploration_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const TrimPolicy policy = config.policy();
  ExploreOptions options;
  options.workers = config.workers;
  options.frontier_genus = config.frontier_genus;
  options.checkpoint_path = config.checkpoint;
  options.checkpoint_interval =
      std::chrono::milliseconds(static_cast<std::int64_t>(config.checkpoint_interval_seconds * 1000.0));
  options.stop_after_tasks = config.stop_after_tasks;

  ExploreOutcome outcome = config.resume
                               ? resume_exploration(load_checkpoint(*config.resume), policy, config.max_genus, options)
                               : run_exploration(policy, config.max_genus, options);
  if (!outcome.complete()) {
    err << "interrupted: " << outcome.pending.size() << " frontier roots pending";
    if (config.checkpoint) err << "; checkpoint written to " << config.checkpoint->string();
    err << '\n';
    return kInterrupted;
  }
  const ExplorationReport& report = outcome.report;
  write_output(config.out, emit_counts(report, config.format), out);
  for (const auto& v : report.violations) err << "violation: " << v.to_string() << '\n';
  if (config.command == Command::wilf) {
    err << "checked " << report.nodes_visited << " nodes up to genus " << report.genus_bound << " ("
        << policy.descriptor() << "): " << report.violations.size() << " Wilf violations\n";
  }
  return report.violations.empty() ? kOk : kViolations;
}

int run_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto result = oracle::assert_equivalence(config.max_genus);
  ExplorationReport report = ExplorationReport::empty(config.max_genus, TrimPolicy::none(std::max(1, config.max_genus)).descriptor());
  report.counts = result.tree_counts;
  for (auto c : report.counts) report.nodes_visited += c;
  write_output(config.out, emit_counts(report, config.format), out);
  for (const auto& d : result.discrepancies) err << "discrepancy: " << d << '\n';
  err << "oracle check up to genus " << config.max_genus << ": " << result.discrepancies.size()
      << " discrepancies\n";
  return result.discrepancies.empty() ? kOk : kViolations;
}

}  // namespace

TrimPolicy RunConfig::policy() const {
  TrimPolicy p;
  p.genus_bound = bound_genus.value_or(std::max(1, max_genus));
  p.denominator = denominator;
  p.special_rule = special_rule || special_rule_strict;
  p.special_rule_strict = special_rule_strict;
  p.left_size_rule = left_size_rule;
  p.trim_ordinary_embedding = trim_ordinary_embedding;
  return p;
}

void RunConfig::check() const {
  switch (command) {
    case Command::ratios:
    case Command::fibonacci:
      return;
    case Command::oracle_check:
      if (max_genus < 0 || max_genus > oracle::kMaxRecomputeGenus) {
        throw ConfigError("oracle-check --max-genus must be in [0, " + std::to_string(oracle::kMaxRecomputeGenus) + "]");
      }
      return;
    case Command::count:
    case Command::wilf:
      break;
  }
  if (max_genus < 0 || max_genus > kMaxGenusBound) {
    throw ConfigError("--max-genus must be in [0, " + std::to_string(kMaxGenusBound) + "]");
  }
  const TrimPolicy p = policy();
  p.check();
  const bool trimming = p.denominator || p.left_size_rule || p.special_rule;
  if (trimming && max_genus > p.genus_bound) throw ConfigError("--max-genus may not exceed --bound-genus when trimming");
  if (workers < 1) throw ConfigError("--workers must be >= 1");
  if (frontier_genus && (*frontier_genus < 0 || *frontier_genus > max_genus)) {
    throw ConfigError("--frontier-genus must be in [0, --max-genus]");
  }
  if (checkpoint_interval_seconds <= 0) throw ConfigError("--checkpoint-interval must be positive");
  if (stop_after_tasks && !checkpoint) throw ConfigError("--stop-after-tasks requires --checkpoint");
}

std::string emit_counts(const ExplorationReport& report, Format format) {
  std::string out;
  if (format == Format::pretty) {
    std::size_t g_width = std::to_string(report.counts.empty() ? 0 : report.counts.size() - 1).size();
    std::size_t c_width = 5;
    for (auto c : report.counts) c_width = std::max(c_width, group_digits(c).size());
    auto pad = [](const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
    g_width = std::max<std::size_t>(g_width, 1);
    out += pad("g", g_width) + "  " + pad("count", c_width) + '\n';
    for (std::size_t g = 0; g < report.counts.size(); ++g) {
      out += pad(std::to_string(g), g_width) + "  " + pad(group_digits(report.counts[g]), c_width) + '\n';
    }
    return out;
  }
  const char sep = format == Format::tsv ? '\t' : ',';
  out += "g";
  out += sep;
  out += "count\n";
  for (std::size_t g = 0; g < report.counts.size(); ++g) {
    out += std::to_string(g);
    out += sep;
    out += std::to_string(report.counts[g]);
    out += '\n';
  }
  return out;
}

std::vector<std::uint64_t> parse_counts_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::uint64_t> counts;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "g,count" && !line.starts_with("g,count,")) throw LoadError(1, "expected header 'g,count'");
      continue;
    }
    if (line.empty()) continue;
    std::string_view row = line;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) throw LoadError(line_no, "expected 'g,count'");
    const auto g_field = row.substr(0, comma);
    auto c_field = row.substr(comma + 1);
    if (const auto extra = c_field.find(','); extra != std::string_view::npos) c_field = c_field.substr(0, extra);
    std::uint64_t g = 0;
    std::uint64_t c = 0;
    auto parse = [&](std::string_view f, std::uint64_t& v) {
      const auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc{} || end != f.data() + f.size()) {
        throw LoadError(line_no, "malformed integer '" + std::string(f) + "'");
      }
    };
    parse(g_field, g);
    parse(c_field, c);
    if (g != counts.size()) throw LoadError(line_no, "genus rows must be consecutive from 0");
    counts.push_back(c);
  }
  if (line_no == 0) throw LoadError(1, "empty input");
  return counts;
}

std::string format_ratio(std::uint64_t num, std::uint64_t den, int digits) {
  using u128 = unsigned __int128;
  u128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const u128 scaled = static_cast<u128>(num) * scale;
  u128 q = scaled / den;
  const u128 r = scaled % den;
  const u128 twice = 2 * r;
  if (twice > den || (twice == den && (q & 1) != 0)) ++q;
  const auto int_part = static_cast<std::uint64_t>(q / scale);
  auto frac = static_cast<std::uint64_t>(q % scale);
  if (digits == 0) return std::to_string(int_part);
  std::string frac_str = std::to_string(frac);
  frac_str.insert(0, static_cast<std::size_t>(digits) - frac_str.size(), '0');
  return std::to_string(int_part) + "." + frac_str;
}

std::string emit_ratios(const std::string& counts_csv) {
  const auto counts = parse_counts_csv(counts_csv);
  std::string out = "g,count,ratio\n";
  for (std::size_t g = 0; g < counts.size(); ++g) {
    out += std::to_string(g) + ',' + std::to_string(counts[g]) + ',';
    if (g > 0 && counts[g - 1] != 0) out += format_ratio(counts[g], counts[g - 1]);
    out += '\n';
  }
  return out;
}

std::string fibonacci_check(const std::string& counts_csv) {
  const auto counts = parse_counts_csv(counts_csv);
  std::string out;
  for (std::size_t g = 2; g < counts.size(); ++g) {
    const unsigned __int128 rhs = static_cast<unsigned __int128>(counts[g - 1]) + counts[g - 2];
    if (counts[g] < rhs) {
      out += "g=" + std::to_string(g) + ": " + std::to_string(counts[g]) + " < " + std::to_string(counts[g - 1]) +
             " + " + std::to_string(counts[g - 2]) + '\n';
    }
  }
  return out.empty() ? "no violations\n" : out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.check();
    switch (config.command) {
      case Command::count:
      case Command::wilf:
        return run_exploration_command(config, out, err);
      case Command::ratios:
        write_output(config.out, emit_ratios(read_input(config.in)), out);
        return kOk;
      case Command::fibonacci:
        write_output(config.out, fibonacci_check(read_input(config.in)), out);
        return kOk;
      case Command::oracle_check:
        return run_oracle_check(config, out, err);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enumerate the tree of numerical semigroups, count nodes per genus and check Wilf's conjecture"};
  app.require_subcommand(1);
  RunConfig config;
  const unsigned hw = std::thread::hardware_concurrency();
  config.workers = hw == 0 ? 1 : static_cast<int>(hw);
  std::string denominator = "none";
  std::string format = "csv";
  std::optional<std::string> out_path;
  std::optional<std::string> in_path;
  std::optional<std::string> checkpoint;
  std::optional<std::string> resume;

  auto add_exploration = [&](CLI::App* sub) {
    sub->add_option("--max-genus", config.max_genus, "Exploration depth")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--bound-genus", config.bound_genus, "Genus bound G used by the trim inequalities (default: --max-genus)");
    sub->add_option("--trim-denominator", denominator, "Denominator d of the e_l/e cuts, or 'none'");
    sub->add_flag("--special-trim", config.special_rule, "Cut subtrees that contain no special semigroup");
    sub->add_flag("--special-trim-strict", config.special_rule_strict,
                  "Like --special-trim, but never cut a special node");
    sub->add_flag("--left-size-trim", config.left_size_rule, "Cut subtrees rooted at |L| >= G/3");
    sub->add_option("--trim-ordinary-embedding", config.trim_ordinary_embedding,
                    "Apply the embedding-dimension cut to ordinary semigroups (default: true)");
    sub->add_option("--workers", config.workers, "Worker threads")->envname("SGFOREST_WORKERS");
    sub->add_option("--frontier-genus", config.frontier_genus, "Genus at which the tree is split into tasks");
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--format", format, "csv, tsv or pretty")->check(CLI::IsMember({"csv", "tsv", "pretty"}));
    sub->add_option("--checkpoint", checkpoint, "Checkpoint file, rewritten periodically");
    sub->add_option("--checkpoint-interval", config.checkpoint_interval_seconds, "Seconds between checkpoints");
    sub->add_option("--resume", resume, "Resume from a checkpoint file");
    sub->add_option("--stop-after-tasks", config.stop_after_tasks, "Stop after this many frontier tasks");
  };

  auto* count = app.add_subcommand("count", "Count semigroups per genus");
  add_exploration(count);
  auto* wilf = app.add_subcommand("wilf", "Check Wilf's conjecture on every retained semigroup");
  add_exploration(wilf);
  auto* ratios = app.add_subcommand("ratios", "Append count[g]/count[g-1] to a counts table");
  ratios->add_option("--in", in_path, "Counts CSV (default: stdin)");
  ratios->add_option("--out", out_path, "Output file (default: stdout)");
  auto* fib = app.add_subcommand("fibonacci", "Report genera where count[g] < count[g-1] + count[g-2]");
  fib->add_option("--in", in_path, "Counts CSV (default: stdin)");
  fib->add_option("--out", out_path, "Output file (default: stdout)");
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare the tree with slow reference enumerations");
  oracle_cmd->add_option("--max-genus", config.max_genus, "Genus bound (gap-set leg capped at 12)")->required();
  oracle_cmd->add_option("--out", out_path, "Output file (default: stdout)");
  oracle_cmd->add_option("--format", format, "csv, tsv or pretty")->check(CLI::IsMember({"csv", "tsv", "pretty"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kOk;
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (count->parsed()) config.command = Command::count;
  if (wilf->parsed()) config.command = Command::wilf;
  if (ratios->parsed()) config.command = Command::ratios;
  if (fib->parsed()) config.command = Command::fibonacci;
  if (oracle_cmd->parsed()) config.command = Command::oracle_check;

  if (denominator != "none") {
    int d = 0;
    const auto [end, ec] = std::from_chars(denominator.data(), denominator.data() + denominator.size(), d);
    if (ec != std::errc{} || end != denominator.data() + denominator.size()) {
      err << "error: --trim-denominator must be 'none' or an integer >= 3\n";
      return kUsage;
    }
    config.denominator = d;
  }
  config.format = format == "tsv" ? Format::tsv : format == "pretty" ? Format::pretty : Format::csv;
  if (out_path) config.out = *out_path;
  if (in_path) config.in = *in_path;
  if (checkpoint) config.checkpoint = *checkpoint;
  if (resume) config.resume = *resume;
  return run(config, out, err);
}

}  // namespace sgforest::cli
