#include "safeplan/simulator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "safeplan/semantics.hpp"
#include "safeplan/util.hpp"

namespace safeplan {

namespace {

// Engine output is mapped to doubles and bounded ints by hand so traces do
// not depend on the standard library's distribution implementations.
double next_double(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::uint64_t next_below(std::mt19937_64& eng, std::uint64_t n) {
    return eng() % n;
}

}  // namespace

TraceReport simulate(const Specification& spec, const Policy& policy,
                     const SimParams& params) {
    const long long n_states = state_count(spec);
    std::vector<const PolicyEntry*> entry_at(static_cast<size_t>(n_states), nullptr);
    std::vector<int> counts(static_cast<size_t>(n_states), 0);
    for (const auto& entry : policy.entries) {
        size_t i = static_cast<size_t>(state_index(spec, entry.state));
        entry_at[i] = &entry;
        counts[i]++;
    }
    if (std::any_of(counts.begin(), counts.end(), [](int c) { return c != 1; }))
        throw std::invalid_argument("simulate: policy is not total");

    TraceReport report;
    report.params = params;
    report.rng_id = "mt19937_64+splitmix64";

    for (int run = 0; run < params.runs; ++run) {
        std::mt19937_64 eng(splitmix64(params.seed + static_cast<std::uint64_t>(run)));
        RunTrace trace;
        trace.start = params.start
                          ? *params.start
                          : state_from_index(spec, static_cast<long long>(next_below(
                                                       eng, static_cast<std::uint64_t>(n_states))));
        State cur = trace.start;

        State reference = cur;
        auto goal = active_goal(reference, spec);

        for (int tick = 0; tick < params.max_ticks; ++tick) {
            const PolicyEntry* entry =
                entry_at[static_cast<size_t>(state_index(spec, cur))];
            if (entry->actions.empty()) {
                trace.idled = true;
                break;
            }
            TickRecord record;
            record.before = cur;
            record.commanded = entry->actions;

            const std::string& name =
                entry->actions[next_below(eng, entry->actions.size())];
            const ActionDef& action = *spec.find_action(name);
            record.effectuated = name;

            State next = cur;
            bool applied = false;
            if (next_double(eng) < params.p_stall) {
                record.effect_index = -1;  // no effect this tick
            } else if (action.alternatives.empty() ||
                       next_double(eng) < params.p_nominal) {
                next = apply_effects(cur, action.nominal);
                record.effect_index = 0;
                applied = true;
            } else {
                std::uint64_t alt = next_below(eng, action.alternatives.size());
                next = apply_effects(cur, action.alternatives[alt]);
                record.effect_index = static_cast<int>(alt) + 1;
                applied = true;
            }

            record.after = next;
            record.after_safe = is_state_safe(next, spec);
            record.violation = applied && !record.after_safe;
            if (record.violation) trace.safety_violations++;

            cur = next;
            if (goal && target_satisfied(goal->rule->target, cur)) {
                trace.goal_achievements++;
                if (!trace.ticks_to_first_goal) trace.ticks_to_first_goal = tick + 1;
                reference = cur;
                goal = active_goal(reference, spec);
            } else if (!goal) {
                reference = cur;
                goal = active_goal(reference, spec);
            }
            trace.ticks.push_back(std::move(record));
        }

        report.total_ticks += static_cast<long long>(trace.ticks.size());
        report.total_violations += trace.safety_violations;
        report.total_goal_achievements += trace.goal_achievements;
        if (trace.ticks_to_first_goal) report.runs_with_goal++;
        report.runs.push_back(std::move(trace));
    }
    return report;
}

}  // namespace safeplan
