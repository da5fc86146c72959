#pragma once

// End-to-end oracle checks behind `ipstele verify`.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ipstele {

struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  bool dense = false;                   // the larger grid
  std::optional<double> tolerance;      // replaces every check's tolerance
};

/// Runs the oracle pairs; never throws for a failed comparison, only for
/// errors in the computations themselves.
std::vector<VerifyCheck> run_verify(const VerifyOptions& options);

/// One line per check; returns true when all pass.
bool print_report(const std::vector<VerifyCheck>& checks, std::ostream& out, int precision = 12);

}  // namespace ipstele
