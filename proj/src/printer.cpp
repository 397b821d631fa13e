#include <sstream>

#include "safeplan/parser.hpp"

namespace safeplan {

namespace {

std::string literal_text(const Literal& lit) {
    std::string out;
    if (lit.negated) out += "NOT ";
    out += lit.variable + " is " + lit.value;
    return out;
}

std::string condition_text(const Condition& cond);

std::string operand_text(const Condition& cond, Condition::Kind parent) {
    // An OR under an AND needs parentheses; AND binds tighter.
    if (cond.kind == Condition::Kind::Or && parent == Condition::Kind::And)
        return "(" + condition_text(cond) + ")";
    return condition_text(cond);
}

std::string condition_text(const Condition& cond) {
    switch (cond.kind) {
        case Condition::Kind::Literal:
            return literal_text(cond.lit);
        case Condition::Kind::And: {
            std::string out;
            for (const auto& child : cond.children) {
                if (!out.empty()) out += " AND ";
                out += operand_text(child, Condition::Kind::And);
            }
            return out;
        }
        case Condition::Kind::Or: {
            std::string out;
            for (const auto& child : cond.children) {
                if (!out.empty()) out += " OR ";
                out += operand_text(child, Condition::Kind::Or);
            }
            return out;
        }
    }
    return {};
}

std::string effects_text(const EffectSet& effects) {
    std::string out;
    for (const auto& asg : effects.assignments) {
        if (!out.empty()) out += ", ";
        out += asg.variable + " is " + asg.value;
    }
    return out;
}

}  // namespace

std::string print_canonical(const Specification& spec) {
    std::ostringstream out;

    out << "BEGIN STATE VECTOR\n";
    for (const auto& var : spec.variables) {
        out << "state " << var.name << " can be ";
        for (size_t i = 0; i < var.domain.size(); ++i)
            out << (i ? ", " : "") << var.domain[i];
        out << "\n";
    }
    out << "END STATE VECTOR\n";

    if (!spec.resources.empty()) {
        out << "\nBEGIN RESOURCES\n";
        for (const auto& res : spec.resources) out << "resource " << res << "\n";
        out << "END RESOURCES\n";
    }

    if (!spec.actions.empty()) {
        out << "\nBEGIN ACTIONS\n";
        bool first = true;
        for (const auto& action : spec.actions) {
            if (!first) out << "\n";
            first = false;
            out << "action " << action.name << "\n";
            if (action.duration != 0) out << "duration: " << action.duration << "\n";
            if (!action.resources.empty()) {
                out << "controlled resources: ";
                for (size_t i = 0; i < action.resources.size(); ++i)
                    out << (i ? ", " : "") << action.resources[i];
                out << "\n";
            }
            if (!action.preconditions.empty()) {
                out << "preconditions: ";
                for (size_t i = 0; i < action.preconditions.size(); ++i)
                    out << (i ? ", " : "") << literal_text(action.preconditions[i]);
                out << "\n";
            }
            out << "nominal effects: " << effects_text(action.nominal) << "\n";
            for (const auto& alt : action.alternatives)
                out << "alternative effects: " << effects_text(alt) << "\n";
        }
        out << "END ACTIONS\n";
    }

    if (!spec.reaction_rules.empty()) {
        out << "\nBEGIN REACTION RULES\n";
        for (const auto& rule : spec.reaction_rules) {
            out << "rule: IF " << condition_text(rule.condition) << " THEN ";
            for (size_t i = 0; i < rule.consequents.size(); ++i) {
                if (i) out << " AND ";
                if (rule.consequents[i].forbid) out << "NOT ";
                out << "executing " << rule.consequents[i].action;
            }
            out << "\n";
        }
        out << "END REACTION RULES\n";
    }

    if (!spec.state_rules.empty()) {
        out << "\nBEGIN STATE RULES\n";
        for (const auto& rule : spec.state_rules)
            out << "rule: IF " << condition_text(rule.antecedent) << " THEN "
                << condition_text(rule.consequent) << "\n";
        out << "END STATE RULES\n";
    }

    if (!spec.goals.empty()) {
        out << "\nBEGIN GOALS\n";
        out << "goal type: priority\n";
        for (const auto& goal : spec.goals) {
            out << "when " << condition_text(goal.when) << " then goal: ";
            for (size_t i = 0; i < goal.target.size(); ++i) {
                if (i) out << ", ";
                out << goal.target[i].variable << " is " << goal.target[i].value;
            }
            out << "\n";
        }
        out << "END GOALS\n";
    }

    out << "\nBEGIN CONFIG\n";
    out << "max_plan_length: " << spec.config.max_plan_length << "\n";
    out << "END CONFIG\n";

    return out.str();
}

}  // namespace safeplan
