#pragma once

// Config-driven front end: parses a JSON run document, dispatches a command and renders
// the result as JSON or CSV.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/model.hpp"
#include "json.hpp"

namespace chiral_casimir::cli {

enum class Command { derive, ground_state, casimir, response, estimate, sweep, verify };
enum class Format { json, csv };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command c);
std::optional<Format> parse_format(std::string_view name);

/// Schema or range violation in a run document (exit code 2).
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
};

struct RunConfig {
  Command command = Command::derive;
  model::OscillatorParams params = model::ref1();
  std::string params_label = "REF1";
  std::string compound_file;  // resolved against the config file's directory
  std::optional<SweepSpec> sweep;
  Format output_format = Format::json;
  double rel_tol = 1e-8;
  int basis_cutoff = 12;
  double B0_magnitude = 10.0;  // T, applied to compound estimates
};

/// Parameters a sweep may vary.
const std::vector<std::string>& sweep_parameters();

/// `command` (from the command line) wins over a "command" key; the two must agree when
/// both are present. Relative compound paths are resolved against base_dir.
/// Throws ConfigError with the offending key (or line/column for malformed JSON).
RunConfig parse_config(const std::string& text, std::optional<Command> command = std::nullopt,
                       const std::string& base_dir = ".");

/// Result of a command: a JSON document and the rows used for CSV output.
struct Report {
  nlohmann::ordered_json document;
  std::vector<nlohmann::ordered_json> rows;  // flat objects
  int csv_digits = 9;                         // significant digits in CSV
  bool ok = true;                             // false turns into exit code 1 (verify)
};

/// Throws DomainError / ComputationError from the computation modules.
Report execute(const RunConfig& config);

std::string render(const Report& report, Format format);

/// Full pipeline: execute and write; returns the process exit code (0, 1, 2), writing
/// diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Worker count for data-parallel loops: CHIRAL_CASIMIR_THREADS (0 or unset = hardware).
unsigned thread_count();

}  // namespace chiral_casimir::cli
