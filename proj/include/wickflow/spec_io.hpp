#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "wickflow/propagator.hpp"

namespace wickflow::io {

struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpecOverrides {
    int steps = -1;    // N_t when > 0
    int trunc_K = -1;  // K when > 0
    int trunc_P = -1;  // P when >= 0
};

/// Parses the JSON problem-spec file (see README for the schema) and
/// validates the result. Throws SpecParseError on malformed input.
ProblemSpec parse_problem_spec_file(const std::filesystem::path& path,
                                    const SpecOverrides& overrides = {});

ProblemSpec parse_problem_spec_text(const std::string& text, const SpecOverrides& overrides = {});

}  // namespace wickflow::io
