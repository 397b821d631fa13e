#include "safeplan/planner.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <stdexcept>

namespace safeplan {

const char* infeasibility_category_name(InfeasibilityCategory category) {
    switch (category) {
        case InfeasibilityCategory::NoSafeStep: return "NO_SAFE_STEP";
        case InfeasibilityCategory::SafetyNotRestorable: return "SAFETY_NOT_RESTORABLE";
        case InfeasibilityCategory::GoalUnreachable: return "GOAL_UNREACHABLE";
        case InfeasibilityCategory::ObligationConflict: return "OBLIGATION_CONFLICT";
    }
    return "UNKNOWN";
}

namespace {

long long duration_sum(const Step& step, const Specification& spec) {
    long long sum = 0;
    for (int a : step.actions) sum += spec.actions[a].duration;
    return sum;
}

std::vector<std::string> sorted_names(const Step& step, const Specification& spec) {
    std::vector<std::string> names;
    names.reserve(step.actions.size());
    for (int a : step.actions) names.push_back(spec.actions[a].name);
    std::sort(names.begin(), names.end());
    return names;
}

// Backtracking subset builder over admissible candidate actions, pruning on
// resource and nominal write conflicts as actions are added.
class StepEnumerator {
public:
    StepEnumerator(const State& s, const Specification& spec)
        : s_(s), spec_(spec), writes_(s.values.size(), -1) {}

    std::vector<Step> run() {
        Obligations ob = reaction_obligations(s_, spec_);
        if (ob.conflict()) return {};
        std::set<int> forbidden(ob.forbidden.begin(), ob.forbidden.end());
        for (size_t i = 0; i < spec_.actions.size(); ++i) {
            int a = static_cast<int>(i);
            if (forbidden.count(a)) continue;
            if (!preconditions_hold(spec_.actions[i], s_)) continue;
            if (!is_action_allowed(spec_.actions[i], s_, spec_)) continue;
            candidates_.push_back(a);
        }
        std::set<int> candidate_set(candidates_.begin(), candidates_.end());
        for (int r : ob.required)
            if (!candidate_set.count(r)) return {};  // obligation unsatisfiable
        required_.assign(ob.required.begin(), ob.required.end());
        recurse(0);
        std::stable_sort(out_.begin(), out_.end(), [this](const Step& a, const Step& b) {
            long long da = duration_sum(a, spec_), db = duration_sum(b, spec_);
            if (da != db) return da < db;
            if (a.actions.size() != b.actions.size()) return a.actions.size() < b.actions.size();
            return sorted_names(a, spec_) < sorted_names(b, spec_);
        });
        return std::move(out_);
    }

private:
    bool try_add(int a) {
        const ActionDef& action = spec_.actions[a];
        for (const auto& res : action.resources)
            if (std::find(used_resources_.begin(), used_resources_.end(), res) !=
                used_resources_.end())
                return false;
        for (const auto& asg : action.nominal.assignments)
            if (writes_[asg.var] >= 0 && writes_[asg.var] != asg.val) return false;
        for (const auto& res : action.resources) used_resources_.push_back(res);
        for (const auto& asg : action.nominal.assignments) {
            saved_writes_.emplace_back(asg.var, writes_[asg.var]);
            writes_[asg.var] = asg.val;
        }
        chosen_.push_back(a);
        return true;
    }

    void remove(int a) {
        const ActionDef& action = spec_.actions[a];
        chosen_.pop_back();
        for (size_t i = 0; i < action.nominal.assignments.size(); ++i) {
            auto [var, old] = saved_writes_.back();
            saved_writes_.pop_back();
            writes_[var] = old;
        }
        used_resources_.resize(used_resources_.size() - action.resources.size());
    }

    bool is_required(int a) const {
        return std::binary_search(required_.begin(), required_.end(), a);
    }

    void recurse(size_t idx) {
        if (idx == candidates_.size()) {
            if (!chosen_.empty()) out_.push_back(Step{chosen_});
            return;
        }
        int a = candidates_[idx];
        if (try_add(a)) {
            recurse(idx + 1);
            remove(a);
        } else if (is_required(a)) {
            return;  // required action cannot join this branch
        }
        if (!is_required(a)) recurse(idx + 1);
    }

    const State& s_;
    const Specification& spec_;
    std::vector<int> candidates_;
    std::vector<int> required_;
    std::vector<int> chosen_;
    std::vector<std::string> used_resources_;
    std::vector<int> writes_;
    std::vector<std::pair<int, int>> saved_writes_;
    std::vector<Step> out_;
};

}  // namespace

std::vector<Step> enumerate_feasible_steps(const State& s, const Specification& spec,
                                           bool include_idle) {
    std::vector<Step> steps = StepEnumerator(s, spec).run();
    if (include_idle && is_state_safe(s, spec) &&
        reaction_obligations(s, spec).required.empty())
        steps.push_back(Step{});
    return steps;
}

Planner::Planner(const Specification& spec) : spec_(spec) {
    states_ = enumerate_states(spec);
    safe_.resize(states_.size());
    for (size_t i = 0; i < states_.size(); ++i)
        safe_[i] = is_state_safe(states_[i], spec_.state_rules);
}

void Planner::build_adjacency() {
    if (adjacency_built_) return;
    adjacency_built_ = true;
    size_t n = states_.size();
    steps_.resize(n);
    succ_.resize(n);
    reverse_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        steps_[i] = safeplan::enumerate_feasible_steps(states_[i], spec_);
        succ_[i].reserve(steps_[i].size());
        for (const Step& step : steps_[i]) {
            long long v = state_index(spec_, step_successor(states_[i], step, spec_));
            succ_[i].push_back(v);
            if (safe_[i] && safe_[static_cast<size_t>(v)])
                reverse_[static_cast<size_t>(v)].push_back(static_cast<int>(i));
        }
    }
    for (auto& preds : reverse_) {
        std::sort(preds.begin(), preds.end());
        preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    }
}

const std::vector<Step>& Planner::feasible_steps(long long index) {
    build_adjacency();
    return steps_[static_cast<size_t>(index)];
}

const Planner::DistTable& Planner::dist_for_goal(int goal_index) {
    auto it = dist_.find(goal_index);
    if (it != dist_.end()) return it->second;
    build_adjacency();
    DistTable table;
    table.dist.assign(states_.size(), -1);
    std::deque<int> queue;
    const GoalRule* rule = goal_index >= 0 ? &spec_.goals[goal_index] : nullptr;
    for (size_t v = 0; v < states_.size(); ++v) {
        if (!safe_[v]) continue;
        if (!rule || target_satisfied(rule->target, states_[v])) {
            table.dist[v] = 0;
            queue.push_back(static_cast<int>(v));
        }
    }
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int p : reverse_[static_cast<size_t>(u)]) {
            if (table.dist[p] >= 0) continue;
            table.dist[p] = table.dist[u] + 1;
            queue.push_back(p);
        }
    }
    return dist_.emplace(goal_index, std::move(table)).first->second;
}

std::vector<std::string> Planner::step_names(const Step& step) const {
    return sorted_names(step, spec_);
}

FindPlanResult Planner::find_plan(const State& s) {
    build_adjacency();
    FindPlanResult result;
    auto infeasible = [&](InfeasibilityCategory category, std::string detail) {
        result.infeasibility = Infeasibility{s, category, std::move(detail)};
        return result;
    };

    Obligations ob = reaction_obligations(s, spec_);
    if (ob.conflict()) {
        std::string names;
        for (int a : ob.conflicts)
            names += (names.empty() ? "" : ", ") + spec_.actions[a].name;
        return infeasible(InfeasibilityCategory::ObligationConflict,
                          "reaction rules both require and forbid: " + names);
    }

    auto goal = active_goal(s, spec_);
    auto holds = [&](const State& st) {
        return !goal || target_satisfied(goal->rule->target, st);
    };
    long long si = state_index(spec_, s);
    bool s_safe = safe_[static_cast<size_t>(si)];

    if (s_safe && holds(s) && ob.required.empty()) {
        result.plan = Plan{};  // zero-length: nothing to do, idling is fine
        return result;
    }

    const std::vector<Step>& candidates = steps_[static_cast<size_t>(si)];
    if (candidates.empty()) {
        if (!s_safe)
            return infeasible(InfeasibilityCategory::SafetyNotRestorable,
                              "no admissible step restores safety");
        return infeasible(InfeasibilityCategory::NoSafeStep,
                          ob.required.empty()
                              ? "no admissible step exists"
                              : "a required reaction action is not admissible");
    }

    const DistTable& table = dist_for_goal(goal ? goal->rule_index : -1);
    const int bound = spec_.config.max_plan_length;

    int best = -1;
    long long best_cost = 0;
    int best_len = 0;
    std::vector<std::string> best_names;
    bool any_safe_successor = false;
    for (size_t k = 0; k < candidates.size(); ++k) {
        long long v = succ_[static_cast<size_t>(si)][k];
        if (!safe_[static_cast<size_t>(v)]) continue;
        any_safe_successor = true;
        int len;
        if (holds(states_[static_cast<size_t>(v)]))
            len = 1;
        else if (int d = table.dist[static_cast<size_t>(v)]; d >= 0 && d + 1 <= bound)
            len = d + 1;
        else
            continue;
        long long cost = s_safe ? 0 : duration_sum(candidates[k], spec_);
        std::vector<std::string> names = step_names(candidates[k]);
        if (best < 0 || cost < best_cost ||
            (cost == best_cost && (len < best_len ||
                                   (len == best_len && names < best_names)))) {
            best = static_cast<int>(k);
            best_cost = cost;
            best_len = len;
            best_names = std::move(names);
        }
    }

    if (best < 0) {
        if (!any_safe_successor) {
            if (!s_safe)
                return infeasible(InfeasibilityCategory::SafetyNotRestorable,
                                  "every admissible step has an unsafe joint successor");
            return infeasible(InfeasibilityCategory::NoSafeStep,
                              "every admissible step has an unsafe joint successor");
        }
        return infeasible(InfeasibilityCategory::GoalUnreachable,
                          "goal target not reachable within " +
                              std::to_string(bound) + " steps");
    }

    Plan plan;
    plan.steps.push_back(candidates[static_cast<size_t>(best)]);
    long long cur = succ_[static_cast<size_t>(si)][static_cast<size_t>(best)];
    plan.successors.push_back(states_[static_cast<size_t>(cur)]);
    for (int remaining = best_len - 1; remaining > 0; --remaining) {
        const std::vector<Step>& steps = steps_[static_cast<size_t>(cur)];
        int chosen = -1;
        std::vector<std::string> chosen_names;
        long long chosen_succ = -1;
        for (size_t k = 0; k < steps.size(); ++k) {
            long long v = succ_[static_cast<size_t>(cur)][k];
            if (!safe_[static_cast<size_t>(v)]) continue;
            if (table.dist[static_cast<size_t>(v)] != remaining - 1) continue;
            std::vector<std::string> names = step_names(steps[k]);
            if (chosen < 0 || names < chosen_names) {
                chosen = static_cast<int>(k);
                chosen_names = std::move(names);
                chosen_succ = v;
            }
        }
        assert(chosen >= 0 && "distance table guarantees a continuation");
        plan.steps.push_back(steps[static_cast<size_t>(chosen)]);
        plan.successors.push_back(states_[static_cast<size_t>(chosen_succ)]);
        cur = chosen_succ;
    }
    result.plan = std::move(plan);
    return result;
}

namespace {

// Exhaustive subset enumeration for the oracle; deliberately brute force.
std::vector<Step> oracle_feasible_steps(const State& s, const Specification& spec) {
    std::vector<int> available;
    for (size_t i = 0; i < spec.actions.size(); ++i)
        if (preconditions_hold(spec.actions[i], s)) available.push_back(static_cast<int>(i));
    if (available.size() > 25)
        throw std::runtime_error("plan_length_oracle: too many available actions");
    std::vector<Step> out;
    for (unsigned long mask = 1; mask < (1ul << available.size()); ++mask) {
        Step step;
        for (size_t b = 0; b < available.size(); ++b)
            if (mask & (1ul << b)) step.actions.push_back(available[b]);
        if (step_feasible(step, s, spec)) out.push_back(std::move(step));
    }
    return out;
}

// Shortest number of steps from a safe start to a state satisfying `holds`,
// all intermediate states safe; 0 when the start already satisfies it.
template <typename Holds>
std::optional<int> oracle_bfs(const State& start, const Holds& holds, int max_depth,
                              const Specification& spec) {
    if (holds(start)) return 0;
    std::set<long long> visited{state_index(spec, start)};
    std::vector<State> frontier{start};
    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<State> next;
        for (const State& u : frontier) {
            for (const Step& step : oracle_feasible_steps(u, spec)) {
                State v = step_successor(u, step, spec);
                if (!is_state_safe(v, spec)) continue;
                if (holds(v)) return depth;
                if (visited.insert(state_index(spec, v)).second) next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

}  // namespace

std::optional<int> plan_length_oracle(const State& s, const Specification& spec) {
    Obligations ob = reaction_obligations(s, spec);
    if (ob.conflict()) return std::nullopt;
    auto goal = active_goal(s, spec);
    auto holds = [&](const State& st) {
        return !goal || target_satisfied(goal->rule->target, st);
    };
    bool s_safe = is_state_safe(s, spec);
    if (s_safe && holds(s) && ob.required.empty()) return 0;

    if (s_safe) {
        // Restoration cost is fixed to 0 for safe starts, so the objective
        // reduces to the shortest length. A mandatory first step (required
        // reaction actions with the target already met) still costs >= 1,
        // which the BFS handles because depth 0 was ruled out above.
        std::set<long long> visited{state_index(spec, s)};
        std::vector<State> frontier{s};
        for (int depth = 1; depth <= spec.config.max_plan_length; ++depth) {
            std::vector<State> next;
            for (const State& u : frontier) {
                for (const Step& step : oracle_feasible_steps(u, spec)) {
                    State v = step_successor(u, step, spec);
                    if (!is_state_safe(v, spec)) continue;
                    if (holds(v)) return depth;
                    if (visited.insert(state_index(spec, v)).second) next.push_back(v);
                }
            }
            frontier = std::move(next);
        }
        return std::nullopt;
    }

    // Unsafe start: the objective is lexicographic (step-1 duration sum,
    // total length), so first minimize the restoration cost over step-1
    // choices that can still complete a plan, then the length.
    std::optional<long long> best_cost;
    std::optional<int> best_len;
    for (const Step& step : oracle_feasible_steps(s, spec)) {
        State v = step_successor(s, step, spec);
        if (!is_state_safe(v, spec)) continue;
        auto rest = oracle_bfs(v, holds, spec.config.max_plan_length - 1, spec);
        if (!rest) continue;
        long long cost = 0;
        for (int a : step.actions) cost += spec.actions[a].duration;
        int len = 1 + *rest;
        if (!best_cost || cost < *best_cost || (cost == *best_cost && len < *best_len)) {
            best_cost = cost;
            best_len = len;
        }
    }
    return best_len;
}

}  // namespace safeplan
