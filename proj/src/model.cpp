#include "safeplan/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace safeplan {

const VariableDecl* Specification::find_variable(const std::string& name) const {
    for (const auto& v : variables)
        if (v.name == name) return &v;
    return nullptr;
}

const ActionDef* Specification::find_action(const std::string& name) const {
    for (const auto& a : actions)
        if (a.name == name) return &a;
    return nullptr;
}

int Specification::variable_index(const std::string& name) const {
    for (size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return static_cast<int>(i);
    return -1;
}

int Specification::action_index(const std::string& name) const {
    for (size_t i = 0; i < actions.size(); ++i)
        if (actions[i].name == name) return static_cast<int>(i);
    return -1;
}

bool operator==(const VariableDecl& a, const VariableDecl& b) {
    return a.name == b.name && a.domain == b.domain;
}

bool operator==(const Specification& a, const Specification& b) {
    return a.variables == b.variables && a.resources == b.resources &&
           a.actions == b.actions && a.reaction_rules == b.reaction_rules &&
           a.state_rules == b.state_rules && a.goals == b.goals &&
           a.config == b.config;
}

std::string Diagnostic::to_string() const {
    std::ostringstream out;
    out << (severity == Severity::Error ? "error" : "warning");
    if (location) out << " at line " << location->first << ", col " << location->second;
    out << " [" << code << "]: " << message;
    return out.str();
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
        return d.severity == Severity::Error;
    });
}

namespace {

void add_error(std::vector<Diagnostic>& out, std::string code, std::string message) {
    out.push_back({Severity::Error, std::move(code), std::move(message), {}, {}});
}

int domain_index(const VariableDecl& var, const std::string& value) {
    for (size_t i = 0; i < var.domain.size(); ++i)
        if (var.domain[i] == value) return static_cast<int>(i);
    return -1;
}

void check_literal(const Specification& spec, const Literal& lit,
                   const std::string& context, std::vector<Diagnostic>& out) {
    const VariableDecl* var = spec.find_variable(lit.variable);
    if (!var) {
        add_error(out, "UNDECLARED_VARIABLE",
                  context + " references undeclared variable '" + lit.variable + "'");
        return;
    }
    if (domain_index(*var, lit.value) < 0)
        add_error(out, "UNDECLARED_VALUE",
                  context + " references value '" + lit.value +
                      "' which is not in the domain of '" + lit.variable + "'");
}

void check_condition(const Specification& spec, const Condition& cond,
                     const std::string& context, std::vector<Diagnostic>& out) {
    if (cond.kind == Condition::Kind::Literal) {
        check_literal(spec, cond.lit, context, out);
        return;
    }
    if (cond.children.empty())
        add_error(out, "EMPTY_CONDITION", context + " has an empty condition node");
    for (const auto& child : cond.children) check_condition(spec, child, context, out);
}

void check_effects(const Specification& spec, const EffectSet& effects,
                   const std::string& context, std::vector<Diagnostic>& out) {
    if (effects.assignments.empty()) {
        add_error(out, "EMPTY_EFFECTS", context + " has an empty effect set");
        return;
    }
    std::set<std::string> seen;
    for (const auto& asg : effects.assignments) {
        const VariableDecl* var = spec.find_variable(asg.variable);
        if (!var) {
            add_error(out, "UNDECLARED_VARIABLE",
                      context + " assigns undeclared variable '" + asg.variable + "'");
            continue;
        }
        if (domain_index(*var, asg.value) < 0)
            add_error(out, "UNDECLARED_VALUE",
                      context + " assigns value '" + asg.value +
                          "' which is not in the domain of '" + asg.variable + "'");
        if (!seen.insert(asg.variable).second)
            add_error(out, "DUPLICATE_ASSIGNMENT",
                      context + " assigns variable '" + asg.variable + "' more than once");
    }
}

}  // namespace

std::vector<Diagnostic> validate_specification(const Specification& spec) {
    std::vector<Diagnostic> out;

    if (spec.variables.empty())
        add_error(out, "NO_VARIABLES", "specification declares no state variables");

    std::set<std::string> var_names;
    for (const auto& var : spec.variables) {
        if (!var_names.insert(var.name).second)
            add_error(out, "DUPLICATE_VARIABLE",
                      "variable '" + var.name + "' is declared more than once");
        if (var.domain.empty())
            add_error(out, "EMPTY_DOMAIN", "variable '" + var.name + "' has no values");
        std::set<std::string> values;
        for (const auto& value : var.domain)
            if (!values.insert(value).second)
                add_error(out, "DUPLICATE_VALUE", "variable '" + var.name +
                                                      "' lists value '" + value +
                                                      "' more than once");
    }

    std::set<std::string> resource_names;
    for (const auto& res : spec.resources)
        if (!resource_names.insert(res).second)
            add_error(out, "DUPLICATE_RESOURCE",
                      "resource '" + res + "' is declared more than once");

    std::set<std::string> action_names;
    for (const auto& action : spec.actions) {
        const std::string ctx = "action '" + action.name + "'";
        if (!action_names.insert(action.name).second)
            add_error(out, "DUPLICATE_ACTION",
                      "action '" + action.name + "' is declared more than once");
        if (action.duration < 0)
            add_error(out, "NEGATIVE_DURATION", ctx + " has a negative duration");
        for (const auto& res : action.resources)
            if (!resource_names.count(res))
                add_error(out, "UNDECLARED_RESOURCE",
                          ctx + " controls undeclared resource '" + res + "'");
        for (const auto& lit : action.preconditions)
            check_literal(spec, lit, ctx + " precondition", out);
        check_effects(spec, action.nominal, ctx + " nominal effects", out);
        for (const auto& alt : action.alternatives)
            check_effects(spec, alt, ctx + " alternative effects", out);
    }

    for (size_t i = 0; i < spec.reaction_rules.size(); ++i) {
        const auto& rule = spec.reaction_rules[i];
        const std::string ctx = "reaction rule " + std::to_string(i + 1);
        check_condition(spec, rule.condition, ctx, out);
        if (rule.consequents.empty())
            add_error(out, "EMPTY_RULE", ctx + " has no consequents");
        for (const auto& con : rule.consequents)
            if (!action_names.count(con.action))
                add_error(out, "UNDECLARED_ACTION",
                          ctx + " references undeclared action '" + con.action + "'");
    }

    for (size_t i = 0; i < spec.state_rules.size(); ++i) {
        const auto& rule = spec.state_rules[i];
        const std::string ctx = "state rule " + std::to_string(i + 1);
        check_condition(spec, rule.antecedent, ctx + " antecedent", out);
        check_condition(spec, rule.consequent, ctx + " consequent", out);
    }

    for (size_t i = 0; i < spec.goals.size(); ++i) {
        const auto& goal = spec.goals[i];
        const std::string ctx = "goal " + std::to_string(i + 1);
        check_condition(spec, goal.when, ctx + " condition", out);
        if (goal.target.empty())
            add_error(out, "EMPTY_GOAL", ctx + " has no target literals");
        for (const auto& lit : goal.target) {
            if (lit.negated)
                add_error(out, "NEGATED_GOAL", ctx + " target may not be negated");
            check_literal(spec, lit, ctx + " target", out);
        }
    }

    if (spec.config.max_plan_length < 1)
        add_error(out, "INVALID_CONFIG", "max_plan_length must be positive");

    return out;
}

namespace {

void resolve_literal(const Specification& spec, Literal& lit) {
    lit.var = spec.variable_index(lit.variable);
    lit.val = domain_index(spec.variables[lit.var], lit.value);
}

void resolve_condition(const Specification& spec, Condition& cond) {
    if (cond.kind == Condition::Kind::Literal) {
        resolve_literal(spec, cond.lit);
        return;
    }
    for (auto& child : cond.children) resolve_condition(spec, child);
}

void resolve_effects(const Specification& spec, EffectSet& effects) {
    for (auto& asg : effects.assignments) {
        asg.var = spec.variable_index(asg.variable);
        asg.val = domain_index(spec.variables[asg.var], asg.value);
    }
}

}  // namespace

void resolve_references(Specification& spec) {
    for (auto& action : spec.actions) {
        for (auto& lit : action.preconditions) resolve_literal(spec, lit);
        resolve_effects(spec, action.nominal);
        for (auto& alt : action.alternatives) resolve_effects(spec, alt);
    }
    for (auto& rule : spec.reaction_rules) {
        resolve_condition(spec, rule.condition);
        for (auto& con : rule.consequents) con.action_idx = spec.action_index(con.action);
    }
    for (auto& rule : spec.state_rules) {
        resolve_condition(spec, rule.antecedent);
        resolve_condition(spec, rule.consequent);
    }
    for (auto& goal : spec.goals) {
        resolve_condition(spec, goal.when);
        for (auto& lit : goal.target) resolve_literal(spec, lit);
    }
}

}  // namespace safeplan
