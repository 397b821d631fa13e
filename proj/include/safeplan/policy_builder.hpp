#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "safeplan/model.hpp"
#include "safeplan/planner.hpp"

namespace safeplan {

/// Per-state planning failures explaining why no complete policy exists.
struct UnrealizableReport {
    std::vector<Infeasibility> findings;  // canonical state order
    std::map<std::string, int> category_counts;

    bool empty() const { return findings.empty(); }
};

/// Witness of a closed nominal loop that never reaches its goal target.
struct ConvergenceFailure {
    State start;
    State repeated;
    std::vector<std::pair<State, std::vector<std::string>>> trajectory;
};

struct BuildResult {
    std::optional<Policy> policy;
    std::optional<UnrealizableReport> report;
    std::vector<ConvergenceFailure> convergence_failures;

    bool ok() const { return policy.has_value(); }
};

/// Plans every enumerated state and assembles the complete policy. Returns
/// the full unrealizability report if any state fails; a policy with holes
/// is never produced. A successful policy has already passed
/// check_convergence (failures there are an internal consistency error and
/// are returned instead of a policy).
BuildResult build_policy(const Specification& spec);

/// Follows the nominal closed loop from every state with an active goal
/// until its frozen target holds; reports cycles and non-convergence.
/// Pre: policy covers every state exactly once.
std::vector<ConvergenceFailure> check_convergence(const Specification& spec,
                                                  const Policy& policy);

/// Per-state infeasibility list, deterministic state order; empty for
/// realizable specifications.
UnrealizableReport explain(const Specification& spec);

}  // namespace safeplan
