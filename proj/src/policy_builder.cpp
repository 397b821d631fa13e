#include "safeplan/policy_builder.hpp"

#include <algorithm>
#include <set>

#include "safeplan/parser.hpp"
#include "safeplan/semantics.hpp"
#include "safeplan/util.hpp"

namespace safeplan {

BuildResult build_policy(const Specification& spec) {
    BuildResult result;
    Planner planner(spec);
    Policy policy;
    policy.meta.tool_version = kToolVersion;
    policy.meta.spec_digest = sha256_hex(print_canonical(spec));
    UnrealizableReport report;

    for (const State& s : planner.states()) {
        FindPlanResult plan = planner.find_plan(s);
        if (!plan.ok()) {
            report.findings.push_back(*plan.infeasibility);
            report.category_counts[infeasibility_category_name(
                plan.infeasibility->category)]++;
            continue;
        }
        PolicyEntry entry;
        entry.state = s;
        if (!plan.plan->steps.empty()) {
            for (int a : plan.plan->steps.front().actions)
                entry.actions.push_back(spec.actions[a].name);
            std::sort(entry.actions.begin(), entry.actions.end());
        }
        policy.entries.push_back(std::move(entry));
    }

    if (!report.empty()) {
        result.report = std::move(report);
        return result;
    }
    result.convergence_failures = check_convergence(spec, policy);
    if (!result.convergence_failures.empty()) return result;
    result.policy = std::move(policy);
    return result;
}

std::vector<ConvergenceFailure> check_convergence(const Specification& spec,
                                                  const Policy& policy) {
    std::vector<ConvergenceFailure> failures;
    std::vector<const std::vector<std::string>*> entry_at(
        static_cast<size_t>(state_count(spec)), nullptr);
    for (const auto& entry : policy.entries)
        entry_at[static_cast<size_t>(state_index(spec, entry.state))] = &entry.actions;

    for (const auto& entry : policy.entries) {
        auto goal = active_goal(entry.state, spec);
        if (!goal) continue;
        const auto& target = goal->rule->target;

        ConvergenceFailure failure;
        failure.start = entry.state;
        std::set<long long> visited;
        State cur = entry.state;
        bool converged = false;
        while (true) {
            if (target_satisfied(target, cur)) {
                converged = true;
                break;
            }
            long long index = state_index(spec, cur);
            if (!visited.insert(index).second) {
                failure.repeated = cur;
                break;
            }
            const auto* actions = entry_at[static_cast<size_t>(index)];
            if (!actions) {
                failure.repeated = cur;  // hole in the policy, cannot proceed
                break;
            }
            Step step;
            for (const auto& name : *actions) step.actions.push_back(spec.action_index(name));
            std::sort(step.actions.begin(), step.actions.end());
            failure.trajectory.emplace_back(cur, *actions);
            cur = step_successor(cur, step, spec);
        }
        if (!converged) failures.push_back(std::move(failure));
    }
    return failures;
}

UnrealizableReport explain(const Specification& spec) {
    UnrealizableReport report;
    Planner planner(spec);
    for (const State& s : planner.states()) {
        FindPlanResult plan = planner.find_plan(s);
        if (plan.ok()) continue;
        report.findings.push_back(*plan.infeasibility);
        report.category_counts[infeasibility_category_name(plan.infeasibility->category)]++;
    }
    return report;
}

}  // namespace safeplan
