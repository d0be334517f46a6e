#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fenchel/parallel.hpp"
#include "fenchel/runner.hpp"

namespace {

int threads_from_env() {
  const char* s = std::getenv("FENCHEL_LAB_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const long n = std::strtol(s, &end, 10);
  if (*end != '\0' || n < 1) {
    std::cerr << "warning: ignoring FENCHEL_LAB_THREADS=" << s << " (expected a positive integer)\n";
    return 1;
  }
  return static_cast<int>(std::min(n, 256L));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhedral and grid convex analysis laboratory"};
  app.set_version_flag("--version", "fenchel-lab 0.1.0");

  std::string command_name, path, format = "human", out, csv_out;
  fenchel::Overrides ov;
  bool timing = false;
  app.add_option("command", command_name, "transform | subdiff | verify | witnesses | relax")
      ->required()
      ->check(CLI::IsMember({"transform", "subdiff", "verify", "witnesses", "relax"}));
  app.add_option("path", path, "instance file, or a directory of instance files")->required();
  app.add_option("--splits", ov.splits, "epsilon splits for the sum rule union")->check(CLI::PositiveNumber);
  app.add_option("--box-radius", ov.box_radius, "truncation radius for set comparisons")->check(CLI::PositiveNumber);
  app.add_option("--directions", ov.directions, "support directions tested")->check(CLI::PositiveNumber);
  app.add_option("--tol", ov.tol, "relative comparison tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--out", out, "also write the report to this file");
  app.add_option("--csv", csv_out, "write the CSV export of a single instance run to this file");
  app.add_flag("--timing", timing, "include wall time (breaks byte-identical output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  fenchel::set_max_threads(threads_from_env());
  const auto command = *fenchel::parse_command(command_name);
  const bool machine = format == "machine";

  std::string text;
  int code = 0;
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    const auto rep = fenchel::corpus_run(path, command, ov);
    text = machine ? fenchel::render_machine(rep, timing) : fenchel::render_human(rep, timing);
    code = rep.exit_code;
  } else if (std::filesystem::exists(path, ec)) {
    const auto rep = fenchel::run_instance(path, command, ov);
    text = machine ? fenchel::render_machine(rep, timing) : fenchel::render_human(rep, timing);
    code = rep.exit_code;
    if (!csv_out.empty()) {
      std::ofstream f(csv_out);
      f << rep.csv;
      if (!f) {
        std::cerr << "error: cannot write " << csv_out << "\n";
        return 2;
      }
    }
  } else {
    std::cerr << "error: no such file or directory: " << path << "\n";
    return 2;
  }

  std::cout << text;
  if (!out.empty()) {
    std::ofstream f(out);
    f << text;
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
  }
  return code;
}
