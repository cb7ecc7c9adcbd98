#pragma once

// Acceptance suites: exact-oracle and property checks, each with a wall-clock limit.

#include <string>
#include <vector>

namespace circlekit {

struct CheckResult {
    int number = 0;
    std::string suite;
    std::string title;
    bool passed = false;
    std::string detail;
    std::vector<std::string> notes; ///< diagnostic lines with no threshold
    double seconds = 0;
    double limit_seconds = 0;
};

/// crt, orthogonality, series, lower-bound, upper-bound, hensel, moments, gauss-bound,
/// quadrature, pairs, end-to-end, arc-error.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws ArgumentError for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name);

/// "PASS  3 series: ... (0.12 s)"
std::string format_result(const CheckResult& r);

} // namespace circlekit
