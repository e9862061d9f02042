#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace wickflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // verification or bound check failed
inline constexpr int kExitParse = 2;        // spec file malformed or invalid
inline constexpr int kExitBlowUp = 3;       // level-0 blow-up guard tripped
inline constexpr int kExitNumeric = 4;      // non-finite values during the solve
inline constexpr int kExitUsage = 5;        // bad flags or unusable request

struct RunConfig {
    std::string spec_path;
    std::string out_dir = "out";
    int steps = -1;    // override N_t when > 0
    int trunc_K = -1;  // override K when > 0
    int trunc_P = -1;  // override P when >= 0
    std::uint64_t seed = 42;
    int draws = 20000;
    std::string suite = "all";
    bool full_trajectory = true;
};

/// Solves the problem spec and writes trajectory.csv, field_final.csv,
/// sup_norms.csv and norm_report.csv under out_dir. No files are written
/// on failure.
int cmd_run(const RunConfig& config, std::ostream& log);

/// Runs the built-in verification suite, one pass/fail line per check.
int cmd_verify(const RunConfig& config, std::ostream& log);

/// Solves the problem spec and evaluates the a-priori bound certificate
/// plus the growth-bound sweeps; writes certificate.csv, catalan_table.csv,
/// factorial_bound.csv.
int cmd_bounds(const RunConfig& config, std::ostream& log);

/// Solves the problem spec and Monte-Carlo-checks the final-time field; writes
/// mc_report.csv.
int cmd_sample(const RunConfig& config, std::ostream& log);

}  // namespace wickflow::cli
