#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace safeplan {

/// One discrete state variable with its ordered value domain.
struct VariableDecl {
    std::string name;
    std::vector<std::string> domain;  // declaration order preserved
};

/// A full assignment: one value index per declared variable, aligned with
/// Specification::variables.
struct State {
    std::vector<int> values;

    bool operator==(const State&) const = default;
    auto operator<=>(const State&) const = default;
};

/// `[NOT] <variable> is <value>`. Indices are filled by resolve_references
/// and are -1 until then.
struct Literal {
    bool negated = false;
    std::string variable;
    std::string value;
    int var = -1;
    int val = -1;

    bool operator==(const Literal& o) const {
        return negated == o.negated && variable == o.variable && value == o.value;
    }
};

/// Boolean expression tree over literals. NOT appears only on literals.
/// And/Or nodes have >= 2 children; nested nodes of the same kind are
/// flattened by the parser.
struct Condition {
    enum class Kind { Literal, And, Or };

    Kind kind = Kind::Literal;
    Literal lit;
    std::vector<Condition> children;

    static Condition literal(Literal l) {
        Condition c;
        c.lit = std::move(l);
        return c;
    }
    static Condition node(Kind k, std::vector<Condition> kids) {
        Condition c;
        c.kind = k;
        c.children = std::move(kids);
        return c;
    }

    bool operator==(const Condition& o) const {
        if (kind != o.kind) return false;
        if (kind == Kind::Literal) return lit == o.lit;
        return children == o.children;
    }
};

/// One assignment inside an effect set.
struct Assignment {
    std::string variable;
    std::string value;
    int var = -1;
    int val = -1;

    bool operator==(const Assignment& o) const {
        return variable == o.variable && value == o.value;
    }
};

/// Variables not mentioned are unchanged.
struct EffectSet {
    std::vector<Assignment> assignments;

    bool operator==(const EffectSet&) const = default;
};

struct ActionDef {
    std::string name;
    int duration = 0;  // dimensionless cost units
    std::vector<std::string> resources;
    std::vector<Literal> preconditions;  // conjunction
    EffectSet nominal;
    std::vector<EffectSet> alternatives;

    bool operator==(const ActionDef&) const = default;
};

struct ReactionRule {
    struct Consequent {
        bool forbid = false;  // false: action must execute; true: must not
        std::string action;
        int action_idx = -1;

        bool operator==(const Consequent& o) const {
            return forbid == o.forbid && action == o.action;
        }
    };

    Condition condition;
    std::vector<Consequent> consequents;

    bool operator==(const ReactionRule&) const = default;
};

struct StateRule {
    Condition antecedent;
    Condition consequent;

    bool operator==(const StateRule&) const = default;
};

/// Rank (priority) is the position in declaration order; lower = higher.
struct GoalRule {
    Condition when;
    std::vector<Literal> target;  // conjunction, no negation

    bool operator==(const GoalRule&) const = default;
};

struct PlannerConfig {
    int max_plan_length = 1;

    bool operator==(const PlannerConfig&) const = default;
};

struct Specification {
    std::vector<VariableDecl> variables;
    std::vector<std::string> resources;
    std::vector<ActionDef> actions;
    std::vector<ReactionRule> reaction_rules;
    std::vector<StateRule> state_rules;
    std::vector<GoalRule> goals;
    PlannerConfig config;

    const VariableDecl* find_variable(const std::string& name) const;
    const ActionDef* find_action(const std::string& name) const;
    int variable_index(const std::string& name) const;
    int action_index(const std::string& name) const;
};

bool operator==(const VariableDecl& a, const VariableDecl& b);
bool operator==(const Specification& a, const Specification& b);

/// One set of concurrently executed actions (indices into spec.actions).
struct Step {
    std::vector<int> actions;  // ascending indices

    bool operator==(const Step&) const = default;
};

struct Plan {
    std::vector<Step> steps;
    std::vector<State> successors;  // nominal state after each step
};

struct PolicyEntry {
    State state;
    std::vector<std::string> actions;  // sorted lexicographically
};

struct PolicyMeta {
    std::string tool_version;
    std::string spec_digest;
};

struct Policy {
    PolicyMeta meta;
    std::vector<PolicyEntry> entries;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    std::optional<std::pair<int, int>> location;  // (line, column), 1-based
    std::optional<State> state;                   // planning-time diagnostics

    std::string to_string() const;
};

bool has_errors(const std::vector<Diagnostic>& diags);

/// Checks every structural invariant of the model. Returns one diagnostic
/// per violation, in declaration order. An empty result means the spec is
/// internally consistent and safe to resolve.
std::vector<Diagnostic> validate_specification(const Specification& spec);

/// Fills the integer indices in literals, assignments and rule consequents.
/// Pre: validate_specification returned no errors.
void resolve_references(Specification& spec);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace safeplan
