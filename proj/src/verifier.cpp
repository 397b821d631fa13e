#include "safeplan/verifier.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "safeplan/semantics.hpp"

namespace safeplan {

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

const CheckResult& VerificationReport::check(const std::string& id) const {
    for (const auto& c : checks)
        if (c.id == id) return c;
    throw std::out_of_range("no such check: " + id);
}

std::optional<long long> min_restoration_cost(const State& s, const Specification& spec) {
    if (is_state_safe(s, spec))
        throw std::invalid_argument("min_restoration_cost: state is safe");
    std::vector<int> available;
    for (size_t i = 0; i < spec.actions.size(); ++i)
        if (preconditions_hold(spec.actions[i], s)) available.push_back(static_cast<int>(i));
    if (available.size() > 25)
        throw std::runtime_error("min_restoration_cost: too many available actions");
    std::optional<long long> best;
    for (unsigned long mask = 1; mask < (1ul << available.size()); ++mask) {
        Step step;
        for (size_t b = 0; b < available.size(); ++b)
            if (mask & (1ul << b)) step.actions.push_back(available[b]);
        if (!step_feasible(step, s, spec)) continue;
        long long cost = 0;
        for (int a : step.actions) cost += spec.actions[a].duration;
        if (!best || cost < *best) best = cost;
    }
    return best;
}

namespace {

class Checker {
public:
    Checker(const Specification& spec, const Policy& policy, const VerifyOptions& options)
        : spec_(spec), policy_(policy), options_(options) {
        states_ = enumerate_states(spec);
        entry_count_.assign(states_.size(), 0);
        entry_at_.assign(states_.size(), nullptr);
        for (const auto& entry : policy.entries) {
            size_t i = static_cast<size_t>(state_index(spec, entry.state));
            if (i < states_.size()) {
                entry_count_[i]++;
                entry_at_[i] = &entry;
            }
        }
    }

    VerificationReport run() {
        VerificationReport report;
        report.checks.push_back(completeness());
        report.checks.push_back(step_feasibility_check());
        report.checks.push_back(per_effect_safety());
        report.checks.push_back(restoration_optimality());
        report.checks.push_back(goal_convergence());
        report.checks.push_back(unsafe_coverage());
        return report;
    }

private:
    void record(CheckResult& check, const State& s, std::string message) {
        check.passed = false;
        check.findings++;
        if (static_cast<int>(check.counterexamples.size()) < options_.counterexample_cap)
            check.counterexamples.push_back({s, std::move(message)});
    }

    // Entry usable for the per-entry checks: exactly one, all names known.
    std::optional<Step> entry_step(size_t i) const {
        if (entry_count_[i] != 1) return std::nullopt;
        Step step;
        for (const auto& name : entry_at_[i]->actions) {
            int a = spec_.action_index(name);
            if (a < 0) return std::nullopt;
            step.actions.push_back(a);
        }
        std::sort(step.actions.begin(), step.actions.end());
        return step;
    }

    int violated_rule(const State& s) const {
        for (size_t r = 0; r < spec_.state_rules.size(); ++r)
            if (eval_condition(spec_.state_rules[r].antecedent, s) &&
                !eval_condition(spec_.state_rules[r].consequent, s))
                return static_cast<int>(r);
        return -1;
    }

    CheckResult completeness() {
        CheckResult check{"V1", "completeness"};
        for (size_t i = 0; i < states_.size(); ++i) {
            if (entry_count_[i] == 0)
                record(check, states_[i], "no policy entry for this state");
            else if (entry_count_[i] > 1)
                record(check, states_[i],
                       std::to_string(entry_count_[i]) + " policy entries for this state");
        }
        return check;
    }

    CheckResult step_feasibility_check() {
        CheckResult check{"V2", "step feasibility"};
        for (size_t i = 0; i < states_.size(); ++i) {
            if (entry_count_[i] != 1) continue;
            if (entry_at_[i]->actions.empty()) continue;
            auto step = entry_step(i);
            if (!step) {
                record(check, states_[i], "entry names an unknown action");
                continue;
            }
            StepReason reason = step_feasibility(*step, states_[i], spec_);
            if (reason != StepReason::Feasible)
                record(check, states_[i],
                       std::string("entry step is not admissible: ") +
                           step_reason_name(reason));
        }
        return check;
    }

    CheckResult per_effect_safety() {
        CheckResult check{"V3", "per-effect safety"};
        for (size_t i = 0; i < states_.size(); ++i) {
            auto step = entry_step(i);
            if (!step) continue;
            for (int a : step->actions) {
                const ActionDef& action = spec_.actions[a];
                auto effects = possible_effects(action);
                for (size_t e = 0; e < effects.size(); ++e) {
                    State next = apply_effects(states_[i], *effects[e]);
                    if (is_state_safe(next, spec_)) continue;
                    record(check, states_[i],
                           "action '" + action.name + "' effect " +
                               (e == 0 ? std::string("nominal")
                                       : "alternative " + std::to_string(e)) +
                               " lands in unsafe state (" + state_to_string(spec_, next) +
                               "), violating state rule " +
                               std::to_string(violated_rule(next) + 1));
                }
            }
        }
        return check;
    }

    CheckResult restoration_optimality() {
        CheckResult check{"V4", "restoration optimality"};
        for (size_t i = 0; i < states_.size(); ++i) {
            if (is_state_safe(states_[i], spec_)) continue;
            auto step = entry_step(i);
            if (!step) continue;
            auto minimum = min_restoration_cost(states_[i], spec_);
            long long cost = 0;
            for (int a : step->actions) cost += spec_.actions[a].duration;
            if (!minimum) {
                if (!step->actions.empty())
                    record(check, states_[i],
                           "entry acts although no admissible step exists");
                continue;
            }
            if (step->actions.empty()) {
                record(check, states_[i], "unsafe state has an idle entry");
                continue;
            }
            if (cost != *minimum)
                record(check, states_[i],
                       "entry duration sum " + std::to_string(cost) +
                           " exceeds minimal restoration cost " + std::to_string(*minimum));
        }
        return check;
    }

    CheckResult goal_convergence() {
        CheckResult check{"V5", "goal convergence"};
        for (size_t i = 0; i < states_.size(); ++i) {
            auto goal = active_goal(states_[i], spec_);
            if (!goal) continue;
            const auto& target = goal->rule->target;
            std::set<long long> visited;
            State cur = states_[i];
            while (true) {
                if (target_satisfied(target, cur)) break;
                long long index = state_index(spec_, cur);
                if (!visited.insert(index).second) {
                    record(check, states_[i],
                           "nominal closed loop cycles at (" +
                               state_to_string(spec_, cur) + ") before reaching goal " +
                               std::to_string(goal->rule_index + 1));
                    break;
                }
                auto step = entry_step(static_cast<size_t>(index));
                if (!step) {
                    record(check, states_[i],
                           "nominal closed loop reaches a state without a usable entry");
                    break;
                }
                State next = step_successor(cur, *step, spec_);
                if (next == cur) {
                    record(check, states_[i],
                           "nominal closed loop stalls at (" + state_to_string(spec_, cur) +
                               ") before reaching goal " + std::to_string(goal->rule_index + 1));
                    break;
                }
                cur = next;
            }
        }
        return check;
    }

    CheckResult unsafe_coverage() {
        CheckResult check{"V6", "unsafe-state action coverage"};
        for (size_t i = 0; i < states_.size(); ++i) {
            if (is_state_safe(states_[i], spec_)) continue;
            if (entry_count_[i] != 1) continue;  // V1 reports coverage holes
            if (entry_at_[i]->actions.empty())
                record(check, states_[i], "unsafe state has an empty entry");
        }
        return check;
    }

    const Specification& spec_;
    const Policy& policy_;
    VerifyOptions options_;
    std::vector<State> states_;
    std::vector<int> entry_count_;
    std::vector<const PolicyEntry*> entry_at_;
};

}  // namespace

VerificationReport verify_policy(const Specification& spec, const Policy& policy,
                                 const VerifyOptions& options) {
    return Checker(spec, policy, options).run();
}

}  // namespace safeplan
