#pragma once

#include <string>
#include <vector>

#include "wickflow/propagator.hpp"

namespace wickflow::acceptance {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Names of the built-in verification checks, in run order.
std::vector<std::string> suite_names();

/// Runs "all" or one named check. Throws std::invalid_argument for an
/// unknown suite name.
std::vector<CheckResult> run(const std::string& suite = "all");

/// The small-data stochastic Fujita problem the certificate, truncation and
/// sampling checks share.
ProblemSpec fujita_small_data_spec(int max_order = 4, int steps = 200);

}  // namespace wickflow::acceptance
