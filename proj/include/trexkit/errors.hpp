#pragma once

#include <stdexcept>
#include <string>

namespace trexkit {

// File could not be read or did not parse as the documented CSV/JSON layout.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Experiment or command configuration is structurally invalid.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A solve that the caller cannot recover from (e.g. every subproblem failed).
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trexkit
