#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/analysis.hpp"

namespace casimir::cli {

/// fig1, drude-discrepancy, high-T-174, coeffs.
const std::vector<std::string>& study_names();

/// Runs a named study, printing one PASS/FAIL line per check. Returns true when all pass.
/// For fig1 the full curve dataset is stored in *dataset when non-null.
bool run_study(const std::string& name, const QuadratureSpec& quad, std::ostream& out,
               ComparisonReport* dataset = nullptr);

}  // namespace casimir::cli
