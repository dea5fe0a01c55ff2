// Run orchestration for the CLI subcommands (evolve, validate, report, sweep):
// deterministic CSV/key-value emission, the validation check table, and the
// figure-data export.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dephasure/config.hpp"

namespace dephasure::io {

struct RunOptions {
  std::string out_dir = ".";
  bool enforce_validity = false;
};

// Exit codes: 0 success, 2 config error, 3 numerical-accuracy failure,
// 4 validity-condition failure (with enforce_validity set).
int run_subcommand(const RunConfig& config, const std::string& subcommand,
                   const RunOptions& opts, std::ostream& out, std::ostream& err);

// scientific notation with 12 significant digits (CSV number format)
std::string format_sci12(double v);

struct ValidationRow {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string status;  // "PASS" | "FAIL" | "SKIP"
};

std::vector<ValidationRow> run_validation_checks(const RunConfig& config);

}  // namespace dephasure::io
