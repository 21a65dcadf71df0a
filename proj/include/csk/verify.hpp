#pragma once

#include <csk/config.hpp>

#include <string>
#include <vector>

namespace csk {

struct VerifyCheck {
    std::string suite;     // "exact" or "numeric"
    std::string name;
    std::string identity;  // the identity under test, written as a formula
    bool pass = false;
    double deviation = 0.0;  // measured worst deviation (entry count for exact checks)
    double tolerance = 0.0;  // 0 means exact equality required
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

struct VerifyOptions {
    NumericConfig numeric;
    unsigned order = 12;      // truncation order for the exact suites
    double numeric_tol = 0.0;  // > 0 replaces every numeric suite tolerance
};

// Runs the exact suites (conversion round trips, Catalan and Fuss-Catalan
// extraction, bijection transport, cubic class, variance-function algebra)
// and the numeric suites (transform monotonicity, mean inversion identities,
// pseudo-variance recovery, atomic boolean powers, moment bridging).
VerifyReport verify_all(const VerifyOptions& opts = {});

}  // namespace csk
