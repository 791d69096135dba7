#pragma once

#include <map>
#include <string>
#include <vector>

#include "mafrac/config.hpp"

namespace mafrac {

/// Outcome of one artifact suite: a pass flag, a one-line detail, and the
/// verdicts it contributes to the acceptance summary.
struct SuiteResult {
    std::string name;
    bool ok = true;
    std::string message;
    std::map<std::string, bool> criteria; ///< acceptance id -> pass
};

/// Registered suite names in dependency order (geometry and constants ahead
/// of operator work, verification last).
const std::vector<std::string>& suite_names();

/// Runs one suite, writing its CSV/SVG artifacts under out_dir. Unknown
/// names throw std::invalid_argument; numerical failures propagate as
/// exceptions from the underlying modules.
SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg,
                      const std::string& out_dir);

/// Experiment driver: validates the requested suite names, runs them in
/// dependency order, prints one line per suite, and writes summary.csv with
/// one PASS/FAIL/SKIPPED row per acceptance criterion. Returns the process
/// exit status: 0 when everything passed, 2 for an unknown suite name, 3
/// when a suite failed or a module threw.
int run_experiment(const ExperimentConfig& cfg);

} // namespace mafrac
