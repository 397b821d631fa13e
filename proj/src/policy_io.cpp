#include "safeplan/policy_io.hpp"

#include <sstream>

#include "safeplan/parser.hpp"
#include "safeplan/semantics.hpp"
#include "safeplan/util.hpp"

namespace safeplan {

std::string spec_digest(const Specification& spec) {
    return sha256_hex(print_canonical(spec));
}

ordered_json policy_to_json(const Specification& spec, const Policy& policy) {
    ordered_json doc;
    doc["meta"] = {{"tool_version", policy.meta.tool_version},
                   {"spec_digest", policy.meta.spec_digest}};
    ordered_json entries = ordered_json::array();
    for (const auto& entry : policy.entries) {
        ordered_json obj;
        for (size_t v = 0; v < spec.variables.size(); ++v)
            obj[spec.variables[v].name] = spec.variables[v].domain[entry.state.values[v]];
        obj["Actions"] = entry.actions;
        entries.push_back(std::move(obj));
    }
    doc["policy"] = std::move(entries);
    return doc;
}

std::string policy_file_text(const ordered_json& doc) {
    return doc.dump(2) + "\n";
}

namespace {

void io_error(std::vector<Diagnostic>& diags, std::string code, std::string message) {
    diags.push_back({Severity::Error, std::move(code), std::move(message), {}, {}});
}

}  // namespace

PolicyParseResult policy_from_json_text(const Specification& spec, const std::string& text) {
    PolicyParseResult result;
    ordered_json doc = ordered_json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        io_error(result.diagnostics, "BAD_JSON", "policy file is not valid JSON");
        return result;
    }
    if (!doc.is_object() || !doc.contains("policy") || !doc["policy"].is_array()) {
        io_error(result.diagnostics, "BAD_POLICY", "policy file lacks a \"policy\" array");
        return result;
    }
    Policy policy;
    if (doc.contains("meta") && doc["meta"].is_object()) {
        policy.meta.tool_version = doc["meta"].value("tool_version", "");
        policy.meta.spec_digest = doc["meta"].value("spec_digest", "");
    }
    size_t n = 0;
    for (const auto& obj : doc["policy"]) {
        ++n;
        const std::string where = "policy entry " + std::to_string(n);
        if (!obj.is_object()) {
            io_error(result.diagnostics, "BAD_POLICY", where + " is not an object");
            continue;
        }
        PolicyEntry entry;
        entry.state.values.assign(spec.variables.size(), -1);
        bool entry_ok = true;
        for (size_t v = 0; v < spec.variables.size(); ++v) {
            const auto& var = spec.variables[v];
            if (!obj.contains(var.name) || !obj[var.name].is_string()) {
                io_error(result.diagnostics, "BAD_POLICY",
                         where + " lacks a value for variable '" + var.name + "'");
                entry_ok = false;
                continue;
            }
            std::string value = obj[var.name].get<std::string>();
            int val = -1;
            for (size_t d = 0; d < var.domain.size(); ++d)
                if (var.domain[d] == value) val = static_cast<int>(d);
            if (val < 0) {
                io_error(result.diagnostics, "BAD_POLICY",
                         where + " assigns '" + value + "' outside the domain of '" +
                             var.name + "'");
                entry_ok = false;
                continue;
            }
            entry.state.values[v] = val;
        }
        if (!obj.contains("Actions") || !obj["Actions"].is_array()) {
            io_error(result.diagnostics, "BAD_POLICY", where + " lacks an \"Actions\" array");
            entry_ok = false;
        } else {
            for (const auto& name : obj["Actions"]) {
                if (!name.is_string()) {
                    io_error(result.diagnostics, "BAD_POLICY",
                             where + " has a non-string action name");
                    entry_ok = false;
                    break;
                }
                entry.actions.push_back(name.get<std::string>());
            }
        }
        if (entry_ok) policy.entries.push_back(std::move(entry));
    }
    if (has_errors(result.diagnostics)) return result;
    result.policy = std::move(policy);
    return result;
}

ordered_json unrealizable_to_json(const Specification& spec,
                                  const UnrealizableReport& report) {
    ordered_json doc;
    doc["realizable"] = report.empty();
    ordered_json counts = ordered_json::object();
    for (const auto& [category, count] : report.category_counts) counts[category] = count;
    doc["category_counts"] = std::move(counts);
    ordered_json states = ordered_json::array();
    for (const auto& finding : report.findings) {
        ordered_json obj;
        for (size_t v = 0; v < spec.variables.size(); ++v)
            obj[spec.variables[v].name] = spec.variables[v].domain[finding.state.values[v]];
        obj["category"] = infeasibility_category_name(finding.category);
        obj["detail"] = finding.detail;
        states.push_back(std::move(obj));
    }
    doc["states"] = std::move(states);
    return doc;
}

std::string unrealizable_to_text(const Specification& spec,
                                 const UnrealizableReport& report) {
    std::ostringstream out;
    if (report.empty()) {
        out << "realizable: no state lacks a plan\n";
        return out.str();
    }
    out << "unrealizable: " << report.findings.size() << " state(s) lack a plan\n";
    for (const auto& [category, count] : report.category_counts)
        out << "  " << category << ": " << count << "\n";
    for (const auto& finding : report.findings)
        out << "  (" << state_to_string(spec, finding.state) << "): "
            << infeasibility_category_name(finding.category) << " - " << finding.detail
            << "\n";
    return out.str();
}

ordered_json verification_to_json(const Specification& spec,
                                  const VerificationReport& report) {
    ordered_json doc;
    doc["all_passed"] = report.all_passed();
    ordered_json checks = ordered_json::array();
    for (const auto& check : report.checks) {
        ordered_json obj;
        obj["id"] = check.id;
        obj["name"] = check.name;
        obj["passed"] = check.passed;
        obj["findings"] = check.findings;
        ordered_json examples = ordered_json::array();
        for (const auto& cx : check.counterexamples) {
            ordered_json e;
            for (size_t v = 0; v < spec.variables.size(); ++v)
                e[spec.variables[v].name] = spec.variables[v].domain[cx.state.values[v]];
            e["message"] = cx.message;
            examples.push_back(std::move(e));
        }
        obj["counterexamples"] = std::move(examples);
        checks.push_back(std::move(obj));
    }
    doc["checks"] = std::move(checks);
    return doc;
}

std::string verification_to_text(const Specification& spec,
                                 const VerificationReport& report) {
    std::ostringstream out;
    int passed = 0;
    for (const auto& check : report.checks) {
        out << check.id << " " << check.name << ": "
            << (check.passed ? "PASS" : "FAIL");
        if (!check.passed) out << " (" << check.findings << " finding(s))";
        out << "\n";
        for (const auto& cx : check.counterexamples)
            out << "    (" << state_to_string(spec, cx.state) << "): " << cx.message << "\n";
        if (check.passed) ++passed;
    }
    out << passed << "/" << report.checks.size() << " checks passed\n";
    return out.str();
}

namespace {

ordered_json state_object(const Specification& spec, const State& s) {
    ordered_json obj;
    for (size_t v = 0; v < spec.variables.size(); ++v)
        obj[spec.variables[v].name] = spec.variables[v].domain[s.values[v]];
    return obj;
}

}  // namespace

ordered_json trace_to_json(const Specification& spec, const TraceReport& report) {
    ordered_json doc;
    doc["params"] = {{"seed", report.params.seed},
                     {"max_ticks", report.params.max_ticks},
                     {"p_nominal", report.params.p_nominal},
                     {"p_stall", report.params.p_stall},
                     {"runs", report.params.runs}};
    if (report.params.start)
        doc["params"]["start"] = state_object(spec, *report.params.start);
    doc["rng"] = report.rng_id;
    doc["total_ticks"] = report.total_ticks;
    doc["total_violations"] = report.total_violations;
    doc["runs_with_goal"] = report.runs_with_goal;
    doc["total_goal_achievements"] = report.total_goal_achievements;
    ordered_json runs = ordered_json::array();
    for (const auto& run : report.runs) {
        ordered_json r;
        r["start"] = state_object(spec, run.start);
        r["ticks_to_first_goal"] =
            run.ticks_to_first_goal ? ordered_json(*run.ticks_to_first_goal)
                                    : ordered_json(nullptr);
        r["goal_achievements"] = run.goal_achievements;
        r["safety_violations"] = run.safety_violations;
        r["idled"] = run.idled;
        ordered_json ticks = ordered_json::array();
        for (const auto& tick : run.ticks) {
            ordered_json t;
            t["before"] = state_object(spec, tick.before);
            t["commanded"] = tick.commanded;
            t["effectuated"] = tick.effectuated;
            t["effect_index"] = tick.effect_index;
            t["after"] = state_object(spec, tick.after);
            t["after_safe"] = tick.after_safe;
            ticks.push_back(std::move(t));
        }
        r["trajectory"] = std::move(ticks);
        runs.push_back(std::move(r));
    }
    doc["runs"] = std::move(runs);
    return doc;
}

std::string trace_to_text(const Specification& spec, const TraceReport& report) {
    std::ostringstream out;
    out << "runs: " << report.params.runs << ", max ticks: " << report.params.max_ticks
        << ", seed: " << report.params.seed << ", rng: " << report.rng_id << "\n";
    out << "p_nominal: " << report.params.p_nominal
        << ", p_stall: " << report.params.p_stall << "\n";
    out << "total ticks: " << report.total_ticks
        << ", safety violations: " << report.total_violations << "\n";
    out << "runs reaching a goal: " << report.runs_with_goal
        << ", total goal achievements: " << report.total_goal_achievements << "\n";
    for (size_t i = 0; i < report.runs.size(); ++i) {
        const auto& run = report.runs[i];
        out << "run " << i << ": start (" << state_to_string(spec, run.start) << "), "
            << run.ticks.size() << " tick(s), ";
        if (run.ticks_to_first_goal)
            out << "first goal at tick " << *run.ticks_to_first_goal;
        else
            out << "no goal achieved";
        out << ", " << run.safety_violations << " violation(s)";
        if (run.idled) out << ", idled";
        out << "\n";
    }
    return out.str();
}

}  // namespace safeplan
