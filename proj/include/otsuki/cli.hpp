#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "otsuki/bounds.hpp"

namespace otsuki::cli {

// Fully resolved invocation. parse_args fills defaults and validates ranges,
// so run() can assume every field it reads is usable.
struct RunConfig {
  std::string command;  // scan | solve | catalog | verify | entropy | profile
  int n = 2;
  std::optional<int> p;
  std::optional<int> s;
  std::optional<double> a_min;
  std::optional<double> a_max;
  int grid_steps = 200;
  int quad_nodes = 128;
  int ode_steps = 4096;
  double tol = 1e-10;
  std::string format = "csv";  // csv | json (row-table commands only)
  std::optional<std::string> output_path;
  std::optional<std::string> theorem;  // verify: "1" | "3" | "4" | "bounds"
  std::optional<int> max_s;            // catalog/entropy/verify breadth
  std::string export_kind = "csv";     // profile: csv | obj
  std::optional<int> copies;           // profile curve copies (default: s)
  int circle_samples = 64;             // profile mesh
  int mesh_steps = 256;                // profile mesh rows per copy
  std::optional<int> precision;        // truncate reals for human reading
};

// Thrown by parse_args when a help flag is seen; carries the text to print.
// Not an error: the caller prints it and exits 0.
struct HelpRequested {
  std::string text;
};

// args excludes the program name. Throws UsageError (exit 2) on unknown
// flags, missing required options, or range violations; HelpRequested on
// --help.
RunConfig parse_args(const std::vector<std::string>& args);

// 1 if any certificate failed, 0 otherwise.
int certificates_exit_code(const std::vector<bounds::CertificateReport>& reports);

// Dispatches a validated config and writes CSV/JSON (or a profile export)
// to `out` or to config.output_path. Returns the exit code for everything
// it handles itself; input and numerical failures propagate as exceptions.
int run(const RunConfig& config, std::ostream& out);

// parse_args + run with the documented exit-code mapping: 0 success or help,
// 1 failed certificate, 2 invalid arguments, 3 numerical failure.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace otsuki::cli
