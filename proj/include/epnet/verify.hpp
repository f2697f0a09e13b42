#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace epnet {

/// One self-check: a measured quantity against the bound it must satisfy.
struct CheckResult {
    std::string suite;
    std::string name;
    bool passed;
    double measured;
    std::string bound;
};

/// Suite names accepted by run_verification: procrustean, haar, min2, vidal, dsu, distill.
const std::vector<std::string>& verification_suites();

/// Runs the algebraic and statistical self-checks. `only` restricts to the
/// named suites (empty = all). `inject_fault` corrupts one measurement so the
/// harness itself can be tested.
std::vector<CheckResult> run_verification(const std::vector<std::string>& only, std::uint64_t seed,
                                          bool inject_fault = false);

}  // namespace epnet
