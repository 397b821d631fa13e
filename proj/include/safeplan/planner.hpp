#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "safeplan/model.hpp"
#include "safeplan/semantics.hpp"

namespace safeplan {

enum class InfeasibilityCategory {
    NoSafeStep,
    SafetyNotRestorable,
    GoalUnreachable,
    ObligationConflict,
};

const char* infeasibility_category_name(InfeasibilityCategory category);

struct Infeasibility {
    State state;
    InfeasibilityCategory category = InfeasibilityCategory::NoSafeStep;
    std::string detail;
};

struct FindPlanResult {
    std::optional<Plan> plan;
    std::optional<Infeasibility> infeasibility;

    bool ok() const { return plan.has_value(); }
};

/// All nonempty action sets admissible in s, ordered by (duration sum,
/// cardinality, sorted action names). The empty step is appended iff s is
/// safe, nothing is required by reaction rules, and include_idle is set.
std::vector<Step> enumerate_feasible_steps(const State& s, const Specification& spec,
                                           bool include_idle = false);

/// Bounded optimal plan search over the full product state space. The
/// instance precomputes the transition structure once, so per-state queries
/// are cheap; construction cost is proportional to (states x feasible steps).
class Planner {
public:
    explicit Planner(const Specification& spec);

    /// Optimal constrained plan from s to its active goal target, minimizing
    /// (restoration cost, length, lexicographic step names). Restoration cost
    /// is the duration sum of step-1 actions and applies only when s is
    /// unsafe; for safe states it is fixed to 0.
    FindPlanResult find_plan(const State& s);

    const std::vector<State>& states() const { return states_; }
    bool state_safe(long long index) const { return safe_[static_cast<size_t>(index)]; }
    const std::vector<Step>& feasible_steps(long long index);

private:
    struct DistTable {
        std::vector<int> dist;  // -1: unreachable
    };

    const DistTable& dist_for_goal(int goal_index);  // -1: trivial target
    void build_adjacency();
    std::vector<std::string> step_names(const Step& step) const;

    const Specification& spec_;
    std::vector<State> states_;
    std::vector<bool> safe_;
    std::vector<std::vector<Step>> steps_;          // per state, enumerate order
    std::vector<std::vector<long long>> succ_;      // successor index per step
    bool adjacency_built_ = false;
    std::vector<std::vector<int>> reverse_;         // dedup predecessor states
    std::map<int, DistTable> dist_;                 // keyed by goal index
};

/// Independent breadth-first oracle for the optimal plan length from s, or
/// nullopt when no plan exists within max_plan_length. Shares only the
/// semantics layer with the planner.
std::optional<int> plan_length_oracle(const State& s, const Specification& spec);

}  // namespace safeplan
