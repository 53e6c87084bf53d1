#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qslice/io.hpp"

namespace qslice {

/// One row of the verification table.
struct CheckRow {
  std::string name;
  int criterion = 0;            // 1..9, matching the acceptance list
  enum class Cmp { AbsDiff, LessEqual, GreaterEqual } mode = Cmp::AbsDiff;
  double expected = 0;
  double computed = 0;
  double tolerance = 0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckRow> rows;

  bool all_pass() const;
  bool criterion_pass(int criterion) const;
};

/// Runs the full verification suite on the configured grid. Deterministic
/// for a fixed config (grid sizes + seed). Tolerances can be overridden by
/// row name through config.tol_overrides.
VerificationReport run_verification(const io::RunConfig& config);

void print_verification_table(std::ostream& os, const VerificationReport& report);
nlohmann::json verification_json(const VerificationReport& report, const io::RunConfig& config);

}  // namespace qslice
