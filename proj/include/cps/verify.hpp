#pragma once

#include <string>
#include <vector>

namespace cps {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string details;  // JSON object text with measured values and bounds
};

struct VerifyOptions {
    std::string scheme;        // empty = all; fibonacci | squarefree | period_doubling | lattice
    long long prime_bound{100};
    long long region{0};       // 0 = per-check default
};

// The full cross-validation suite: Poisson summation on lattices, density
// formulas, sieve/oracle equivalence, window transforms against direct
// finite-group sums, covariogram vs empirical autocorrelation, and
// closed-form spectra against sample structure factors. Each entry is one
// acceptance check with its tolerance pinned in code.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

// Deterministic JSON report for a set of check results.
std::string verification_report_json(const std::vector<CheckResult>& results);

}  // namespace cps
