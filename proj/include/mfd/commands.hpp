#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mfd/config.hpp"
#include "mfd/types.hpp"

namespace mfd {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCapacity = 3;

struct Flags {
  std::optional<int> genus;
  std::string labels;  // "a,b;c,d" : elements separated by ';', coordinates by ','
  bool glued = false;
  bool json = false;
  std::optional<double> tol;
  int max_genus = 3;
};

/// Parses the --labels syntax. An empty string means no labels.
/// Errors: cli.BadLabels.
std::vector<IntVector> parse_labels(const std::string& text);

/// Subcommands: inspect, blocks, torus-rep, lattice, verlinde.
/// Writes the report (text, or JSON with --json) to `out` and diagnostics to
/// `err`; returns the exit code. Never throws for bad input.
int run(const std::string& subcommand, const Config& config, const Flags& flags, std::ostream& out, std::ostream& err);

/// Renders an error the same way `run` does and returns its exit code.
int report_error(const std::exception& e, bool json, std::ostream& out, std::ostream& err);

}  // namespace mfd
