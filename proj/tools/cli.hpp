#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asymcap/io.hpp"
#include "asymcap/oneshot.hpp"

namespace asymcap::cli {

inline constexpr std::string_view tool_version = "0.1.0";

enum class Command { validate, decompose, classify, capacity, codebook, simulate };
enum class Format { json, csv };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command);
std::optional<Format> parse_format(std::string_view name);
std::optional<EncoderKind> parse_encoder(std::string_view name);

struct JobParams {
  std::optional<std::string> state;  // state file; defaults to the optimal state
  int n = 1;
  double rate = 0.0;
  int trials = 100;
  Seed seed = defaults::seed;
  double tol = defaults::decomp_tol;
  EncoderKind encoder = EncoderKind::symmetric_unitary;
  std::optional<std::string> basis_out;  // decompose: binary dump of B
};

struct JobSpec {
  std::string source;  // file path or "catalog:<group>/<rep>"
  Command command = Command::classify;
  JobParams params;
  std::string output;  // empty means stdout
  Format format = Format::json;
};

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 1 I/O or format error, 2 validation failure
  io::json report;
};

/// Runs one job without writing the report anywhere.
RunOutcome execute(const JobSpec& job);

/// Column order of CSV rows for `command` (excluding "source" and "error").
const std::vector<std::string>& csv_columns(Command command);

std::string render(const RunOutcome& outcome, Command command, Format format);

/// Runs a job and writes its report to job.output (or stdout).
int run(const JobSpec& job);

struct SweepOutcome {
  int exit_code = 0;  // 0 if any row succeeded, 2 if none
  std::string csv;
};

/// One CSV row per job in input order, with a trailing error column. Jobs
/// must share one command.
SweepOutcome sweep(const std::vector<JobSpec>& jobs);

}  // namespace asymcap::cli
