#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gwloc::cli {

enum class Command { Gw, Count, Multicover, Series, Conjecture, Graphs, Selfcheck };
enum class OutputFormat { Json, Csv, Text };
enum class MulticoverMode { Graph, Partition, Both };

/// Process exit statuses. Everything except Ok and CheckFailed maps one
/// error kind to one status so scripts can branch on the cause.
enum ExitCode : int {
  Ok = 0,
  CheckFailed = 1,
  InvalidArguments = 2,
  UnsupportedGenus = 3,
  MissingHodgeTable = 4,
  GraphCapExceeded = 5,
  IoFailure = 6,
  InternalError = 7,
};

struct RunConfig {
  Command command = Command::Selfcheck;

  int g = 0;
  int d = 1;
  int r = 1;
  int n = 0;
  std::vector<int> insertions;
  /// Appends this many H^r insertions after `insertions`.
  int points = 0;
  MulticoverMode mode = MulticoverMode::Both;
  /// gamma, gamma-psi, psi, s-beta, manin or all.
  std::string series = "all";
  int order = 10;
  /// conjecture with no --g/--d prints the g = 2..6, d = 1..5 table.
  bool single_conjecture = false;
  bool direct = false;

  std::uint64_t seed = 1;
  int trials = 1;
  std::size_t graph_cap = 10'000'000;
  unsigned workers = 0;
  OutputFormat format = OutputFormat::Json;
  std::string cache_path;
  std::string hodge_table_path;
  bool verbose = false;
  /// Adds elapsed_ms to each record; off by default so output is reproducible.
  bool timing = false;
  /// Adds cache_hits to each record; off by default for the same reason.
  bool stats = false;
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  /// Exit status to use when `config` is empty (help, version, bad flags).
  int exit_code = ExitCode::Ok;
};

/// Parses argv; help and usage errors are written to `out` / `err`.
/// GWLOC_CACHE supplies the cache path when --cache is absent.
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes one configured command, writing records to `out` and warnings
/// to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gwloc::cli
