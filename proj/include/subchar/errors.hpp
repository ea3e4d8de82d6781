#pragma once

#include <stdexcept>
#include <string>

namespace subchar {

// Input or validation problem (bad file, bad value). CLI exit code 1.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Computation refused as infeasible (e.g. brute-force cap). CLI exit code 2.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace subchar
