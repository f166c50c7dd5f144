#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "logsp/logkernel.hpp"

namespace logsp {

enum class ValidationLevel { quick, full };

struct ValidationOptions {
    ValidationLevel level = ValidationLevel::quick;
    /// Padding used for the fast convolution under test. `periodic` is the
    /// mutation that the kernel-oracle check must catch.
    Padding padding = Padding::free_space;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the invariant suites of every module: kernel oracle and split,
/// homogeneity, gradient/finite-difference agreement, adjoint exactness,
/// the I - I'[u]/4 identity, the HLS chain, the analytic Nehari roots.
std::vector<CheckResult> run_validation(const ValidationOptions& options);

/// Prints one line per check; returns true iff all passed.
bool print_validation(std::ostream& os, const std::vector<CheckResult>& results);

} // namespace logsp
