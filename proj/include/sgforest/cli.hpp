#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgforest/explore.hpp"

namespace sgforest::cli {

enum class Command { count, wilf, ratios, fibonacci, oracle_check };
enum class Format { csv, tsv, pretty };

enum ExitCode : int {
  kOk = 0,
  kViolations = 1,  // Wilf violations (or oracle discrepancies for oracle-check)
  kUsage = 2,
  kIo = 3,
  kInterrupted = 4,  // stopped early; checkpoint holds the remaining work
};

struct RunConfig {
  Command command = Command::count;
  int max_genus = 0;
  std::optional<int> bound_genus;  // defaults to max_genus
  std::optional<int> denominator;  // empty = no e_l / e trimming
  bool special_rule = false;
  bool special_rule_strict = false;
  bool left_size_rule = false;
  bool trim_ordinary_embedding = true;
  int workers = 1;
  std::optional<int> frontier_genus;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> in;
  Format format = Format::csv;
  std::optional<std::filesystem::path> checkpoint;
  double checkpoint_interval_seconds = 60.0;
  std::optional<std::filesystem::path> resume;
  std::optional<std::size_t> stop_after_tasks;

  TrimPolicy policy() const;
  // Throws ConfigError on an invalid flag combination.
  void check() const;
};

std::string emit_counts(const ExplorationReport& report, Format format);

// Parses a `g,count` table as written by emit_counts. Throws LoadError.
std::vector<std::uint64_t> parse_counts_csv(const std::string& text);

// Adds a ratio column count[g]/count[g-1], 6 digits, round-half-even.
std::string emit_ratios(const std::string& counts_csv);

// Lists every g >= 2 with count[g] < count[g-1] + count[g-2].
std::string fibonacci_check(const std::string& counts_csv);

// Exact decimal rendering of num/den with `digits` fractional digits.
std::string format_ratio(std::uint64_t num, std::uint64_t den, int digits = 6);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs; returns the process exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sgforest::cli
