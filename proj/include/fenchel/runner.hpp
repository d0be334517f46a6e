#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fenchel/instance.hpp"

namespace fenchel {

enum class Command { Transform, Subdiff, Verify, Witnesses, Relax };

std::optional<Command> parse_command(const std::string& s);
std::string to_string(Command c);

/// Command line values that take precedence over instance parameters.
struct Overrides {
  std::optional<int> splits;
  std::optional<double> box_radius;
  std::optional<int> directions;
  std::optional<double> tol;
};

struct ResolvedParams {
  int splits = 32;
  double box_radius = 10.0;
  int directions = 64;
  double tol = 1e-6;
  int steps = 10000;

  [[nodiscard]] CompareParams compare() const { return {splits, box_radius, directions, tol}; }
  [[nodiscard]] nlohmann::json to_json() const;
};

ResolvedParams resolve_params(const Instance& inst, const Overrides& o);

struct RunReport {
  std::string file;  // base name of the instance file
  std::string name;
  Command command = Command::Verify;
  nlohmann::json params;
  nlohmann::json results;
  std::map<std::string, bool> verdicts;
  std::map<std::string, bool> expected;
  std::vector<std::string> mismatches;
  std::string csv;  // optional CSV export of the command
  int exit_code = 0;
  std::string error_kind;  // SchemaError or the library error name
  std::string error_message;
  double wall_seconds = 0.0;

  [[nodiscard]] nlohmann::json to_json(bool timing) const;
};

/// Runs one command on one instance file. Never throws: failures are
/// reported through exit_code (2 schema, 3 library error, 1 verdict mismatch).
RunReport run_instance(const std::string& path, Command command, const Overrides& overrides);

struct CorpusReport {
  Command command = Command::Verify;
  std::vector<RunReport> runs;  // ordered by file name
  int exit_code = 0;
  std::string error_message;

  [[nodiscard]] nlohmann::json to_json(bool timing) const;
};

/// Every *.json file of a directory, in name order. An empty directory is a
/// schema error (exit 2).
CorpusReport corpus_run(const std::string& directory, Command command, const Overrides& overrides);

std::string render_human(const RunReport& r, bool timing);
std::string render_human(const CorpusReport& r, bool timing);
std::string render_machine(const RunReport& r, bool timing);
std::string render_machine(const CorpusReport& r, bool timing);

}  // namespace fenchel
