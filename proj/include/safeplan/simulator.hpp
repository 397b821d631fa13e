#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "safeplan/model.hpp"

namespace safeplan {

struct SimParams {
    std::uint64_t seed = 0;
    int max_ticks = 1;
    double p_nominal = 1.0;  // probability a sampled effect is the nominal one
    double p_stall = 0.0;    // probability an effectuation is skipped entirely
    int runs = 1;
    std::optional<State> start;  // fixed start state; otherwise drawn per run
};

/// One effectuation: a single action from the commanded set takes effect
/// (or stalls), then the policy is consulted again.
struct TickRecord {
    State before;
    std::vector<std::string> commanded;  // entry at `before`
    std::string effectuated;             // drawn action
    int effect_index = -1;               // -1 stall, 0 nominal, i-th alternative
    State after;
    bool after_safe = true;
    bool violation = false;  // an applied effect landed unsafe
};

struct RunTrace {
    State start;
    std::vector<TickRecord> ticks;
    std::optional<int> ticks_to_first_goal;
    int goal_achievements = 0;
    int safety_violations = 0;
    bool idled = false;  // terminated early on an empty entry
};

struct TraceReport {
    SimParams params;
    std::string rng_id;
    std::vector<RunTrace> runs;
    long long total_ticks = 0;
    long long total_violations = 0;
    int runs_with_goal = 0;
    long long total_goal_achievements = 0;
};

/// Seeded closed-loop execution of a policy. Fully deterministic: identical
/// (spec, policy, params) produce identical reports. Throws
/// std::invalid_argument if the policy does not cover every state.
TraceReport simulate(const Specification& spec, const Policy& policy,
                     const SimParams& params);

}  // namespace safeplan
