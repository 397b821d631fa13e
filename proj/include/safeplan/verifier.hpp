#pragma once

#include <optional>
#include <string>
#include <vector>

#include "safeplan/model.hpp"

namespace safeplan {

/// Brute-force policy checker, independent of the planner's search. Works on
/// any (spec, policy) pair including externally produced or mutated policies.

struct Counterexample {
    State state;
    std::string message;
};

struct CheckResult {
    std::string id;    // V1..V6
    std::string name;
    bool passed = true;
    long long findings = 0;  // total violations, including those past the cap
    std::vector<Counterexample> counterexamples;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool all_passed() const;
    const CheckResult& check(const std::string& id) const;
};

struct VerifyOptions {
    int counterexample_cap = 10;
};

/// Runs all six checks regardless of earlier failures:
///   V1 completeness, V2 step feasibility, V3 per-effect safety,
///   V4 restoration optimality, V5 goal convergence, V6 unsafe-state
///   action coverage.
/// Counterexamples are selected deterministically (first in canonical state
/// order) and capped per check.
VerificationReport verify_policy(const Specification& spec, const Policy& policy,
                                 const VerifyOptions& options = {});

/// Minimum duration sum over all admissible nonempty steps in s, computed by
/// exhaustive subset enumeration; nullopt when no admissible step exists.
/// Throws std::invalid_argument if s is safe.
std::optional<long long> min_restoration_cost(const State& s, const Specification& spec);

}  // namespace safeplan
