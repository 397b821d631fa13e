#include "safeplan/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace safeplan {

namespace {

struct Token {
    enum Kind { Ident, Int, LParen, RParen, Comma, Colon, End };
    Kind kind = End;
    std::string text;
    int col = 0;  // 1-based
};

struct ParseError {
    Diagnostic diag;
};

[[noreturn]] void fail(std::string code, std::string message, int line, int col) {
    throw ParseError{{Severity::Error, std::move(code), std::move(message),
                      std::make_pair(line, col), {}}};
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Tokens of one logical line (statements never span lines).
class TokenStream {
public:
    TokenStream(const std::string& line, int line_no) : line_no_(line_no) {
        size_t i = 0;
        while (i < line.size()) {
            char c = line[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            int col = static_cast<int>(i) + 1;
            if (is_ident_start(c)) {
                size_t j = i;
                while (j < line.size() && is_ident_char(line[j])) ++j;
                tokens_.push_back({Token::Ident, line.substr(i, j - i), col});
                i = j;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t j = i;
                while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
                if (j < line.size() && is_ident_start(line[j]))
                    fail("BAD_TOKEN", "identifiers may not start with a digit", line_no_, col);
                tokens_.push_back({Token::Int, line.substr(i, j - i), col});
                i = j;
            } else if (c == '(') {
                tokens_.push_back({Token::LParen, "(", col});
                ++i;
            } else if (c == ')') {
                tokens_.push_back({Token::RParen, ")", col});
                ++i;
            } else if (c == ',') {
                tokens_.push_back({Token::Comma, ",", col});
                ++i;
            } else if (c == ':') {
                tokens_.push_back({Token::Colon, ":", col});
                ++i;
            } else {
                fail("BAD_CHARACTER", std::string("unexpected character '") + c + "'",
                     line_no_, col);
            }
        }
    }

    const Token& peek(size_t ahead = 0) const {
        static const Token end_token;
        size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : end_token;
    }
    bool at_end() const { return pos_ >= tokens_.size(); }
    int line() const { return line_no_; }
    int col() const { return at_end() ? end_col() : peek().col; }

    bool accept(Token::Kind kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }
    bool accept_word(const std::string& word) {
        if (peek().kind != Token::Ident || peek().text != word) return false;
        ++pos_;
        return true;
    }
    Token expect(Token::Kind kind, const std::string& what) {
        if (peek().kind != kind)
            fail("SYNTAX", "expected " + what, line_no_, col());
        return tokens_[pos_++];
    }
    void expect_word(const std::string& word) {
        if (!accept_word(word))
            fail("SYNTAX", "expected keyword '" + word + "'", line_no_, col());
    }
    std::string expect_ident(const std::string& what) {
        return expect(Token::Ident, what).text;
    }
    int expect_int(const std::string& what) {
        Token t = expect(Token::Int, what);
        try {
            return std::stoi(t.text);
        } catch (const std::exception&) {
            fail("BAD_INTEGER", what + " is out of range", line_no_, t.col);
        }
    }
    void expect_end() {
        if (!at_end())
            fail("SYNTAX", "unexpected trailing input '" + peek().text + "'",
                 line_no_, col());
    }

private:
    int end_col() const {
        return tokens_.empty() ? 1 : tokens_.back().col + static_cast<int>(tokens_.back().text.size());
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
    int line_no_;
};

Literal parse_literal(TokenStream& ts) {
    Literal lit;
    lit.negated = ts.accept_word("NOT");
    lit.variable = ts.expect_ident("variable name");
    ts.expect_word("is");
    lit.value = ts.expect_ident("value name");
    return lit;
}

Condition parse_or(TokenStream& ts);

Condition parse_primary(TokenStream& ts) {
    if (ts.accept(Token::LParen)) {
        Condition inner = parse_or(ts);
        ts.expect(Token::RParen, "')'");
        return inner;
    }
    return Condition::literal(parse_literal(ts));
}

// Same-kind nodes are flattened so the tree shape is canonical.
Condition parse_and(TokenStream& ts) {
    Condition first = parse_primary(ts);
    if (ts.peek().kind != Token::Ident || ts.peek().text != "AND") return first;
    std::vector<Condition> kids;
    auto append = [&kids](Condition&& c) {
        if (c.kind == Condition::Kind::And)
            for (auto& k : c.children) kids.push_back(std::move(k));
        else
            kids.push_back(std::move(c));
    };
    append(std::move(first));
    while (ts.accept_word("AND")) append(parse_primary(ts));
    return Condition::node(Condition::Kind::And, std::move(kids));
}

Condition parse_or(TokenStream& ts) {
    Condition first = parse_and(ts);
    if (ts.peek().kind != Token::Ident || ts.peek().text != "OR") return first;
    std::vector<Condition> kids;
    auto append = [&kids](Condition&& c) {
        if (c.kind == Condition::Kind::Or)
            for (auto& k : c.children) kids.push_back(std::move(k));
        else
            kids.push_back(std::move(c));
    };
    append(std::move(first));
    while (ts.accept_word("OR")) append(parse_and(ts));
    return Condition::node(Condition::Kind::Or, std::move(kids));
}

struct Section {
    std::vector<std::string> words;
    std::string name;
};

const std::vector<Section> kSections = {
    {{"STATE", "VECTOR"}, "STATE VECTOR"},
    {{"RESOURCES"}, "RESOURCES"},
    {{"ACTIONS"}, "ACTIONS"},
    {{"REACTION", "RULES"}, "REACTION RULES"},
    {{"STATE", "RULES"}, "STATE RULES"},
    {{"GOALS"}, "GOALS"},
    {{"CONFIG"}, "CONFIG"},
};

class SpecParser {
public:
    explicit SpecParser(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (auto cut = line.find("//"); cut != std::string::npos) line.resize(cut);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines_.push_back(line);
        }
    }

    ParseResult run() {
        int min_section = 0;
        while (true) {
            if (!skip_blank()) break;
            int header_line = current_line_no();
            std::optional<int> section;
            try {
                section = parse_section_header(min_section);
            } catch (const ParseError& e) {
                diags_.push_back(e.diag);
                ++pos_;
                continue;
            }
            if (!section) continue;
            min_section = *section + 1;
            parse_section_body(*section, header_line);
        }
        if (!seen_config_ && !has_errors(diags_))
            diags_.push_back({Severity::Error, "MISSING_SECTION",
                              "specification has no CONFIG section", {}, {}});
        ParseResult result;
        result.diagnostics = diags_;
        if (!has_errors(diags_)) result.spec = std::move(spec_);
        return result;
    }

private:
    bool skip_blank() {
        while (pos_ < lines_.size() && is_blank(lines_[pos_])) ++pos_;
        return pos_ < lines_.size();
    }
    static bool is_blank(const std::string& line) {
        return line.find_first_not_of(" \t") == std::string::npos;
    }
    int current_line_no() const { return static_cast<int>(pos_) + 1; }

    // Returns the section index, or nullopt after reporting an error.
    std::optional<int> parse_section_header(int min_section) {
        TokenStream ts(lines_[pos_], current_line_no());
        ts.expect_word("BEGIN");
        std::vector<std::string> words;
        while (ts.peek().kind == Token::Ident) words.push_back(ts.expect_ident("section name"));
        ts.expect_end();
        for (size_t i = 0; i < kSections.size(); ++i) {
            if (kSections[i].words != words) continue;
            if (static_cast<int>(i) < min_section)
                fail("SECTION_ORDER",
                     "section " + kSections[i].name + " is out of order or repeated",
                     current_line_no(), 1);
            ++pos_;
            return static_cast<int>(i);
        }
        std::string name;
        for (const auto& w : words) name += (name.empty() ? "" : " ") + w;
        fail("UNKNOWN_SECTION", "unknown section '" + name + "'", current_line_no(), 1);
    }

    // Collects body lines up to the matching END, reporting an unterminated
    // block when EOF or another BEGIN is reached first.
    std::vector<std::pair<int, std::string>> body_lines(int section, int header_line) {
        std::vector<std::pair<int, std::string>> body;
        while (pos_ < lines_.size()) {
            const std::string& line = lines_[pos_];
            if (is_blank(line)) {
                ++pos_;
                continue;
            }
            std::string first = first_word(line);
            if (first == "END") {
                TokenStream ts(line, current_line_no());
                ts.expect_word("END");
                for (const auto& w : kSections[section].words) ts.expect_word(w);
                ts.expect_end();
                ++pos_;
                return body;
            }
            if (first == "BEGIN") break;
            body.emplace_back(current_line_no(), line);
            ++pos_;
        }
        diags_.push_back({Severity::Error, "UNTERMINATED_BLOCK",
                          "section " + kSections[section].name + " beginning at line " +
                              std::to_string(header_line) + " has no END " +
                              kSections[section].name,
                          std::make_pair(header_line, 1),
                          {}});
        return body;
    }

    static std::string first_word(const std::string& line) {
        size_t i = line.find_first_not_of(" \t");
        if (i == std::string::npos || !is_ident_start(line[i])) return "";
        size_t j = i;
        while (j < line.size() && is_ident_char(line[j])) ++j;
        return line.substr(i, j - i);
    }

    void parse_section_body(int section, int header_line) {
        auto body = body_lines(section, header_line);
        const std::string& name = kSections[section].name;
        for (size_t i = 0; i < body.size(); ++i) {
            try {
                TokenStream ts(body[i].second, body[i].first);
                if (name == "STATE VECTOR")
                    parse_variable(ts);
                else if (name == "RESOURCES")
                    parse_resource(ts);
                else if (name == "ACTIONS")
                    parse_action_line(ts);
                else if (name == "REACTION RULES")
                    parse_reaction_rule(ts);
                else if (name == "STATE RULES")
                    parse_state_rule(ts);
                else if (name == "GOALS")
                    parse_goal_line(ts, i == 0);
                else if (name == "CONFIG")
                    parse_config(ts);
            } catch (const ParseError& e) {
                diags_.push_back(e.diag);
            }
        }
        if (name == "ACTIONS") finish_action();
        if (name == "CONFIG") seen_config_ = true;
    }

    void parse_variable(TokenStream& ts) {
        ts.expect_word("state");
        VariableDecl var;
        var.name = ts.expect_ident("variable name");
        ts.expect_word("can");
        ts.expect_word("be");
        var.domain.push_back(ts.expect_ident("value name"));
        while (ts.accept(Token::Comma)) var.domain.push_back(ts.expect_ident("value name"));
        ts.expect_end();
        spec_.variables.push_back(std::move(var));
    }

    void parse_resource(TokenStream& ts) {
        ts.expect_word("resource");
        spec_.resources.push_back(ts.expect_ident("resource name"));
        ts.expect_end();
    }

    void finish_action() {
        if (!current_action_) return;
        if (!have_nominal_)
            diags_.push_back({Severity::Error, "MISSING_EFFECTS",
                              "action '" + current_action_->name + "' has no nominal effects",
                              std::make_pair(action_line_, 1),
                              {}});
        spec_.actions.push_back(std::move(*current_action_));
        current_action_.reset();
    }

    void parse_action_line(TokenStream& ts) {
        if (ts.peek().text == "action") {
            finish_action();
            ts.expect_word("action");
            current_action_.emplace();
            current_action_->name = ts.expect_ident("action name");
            action_line_ = ts.line();
            have_nominal_ = false;
            ts.expect_end();
            return;
        }
        if (!current_action_)
            fail("SYNTAX", "expected 'action <name>'", ts.line(), ts.col());
        if (ts.accept_word("duration")) {
            ts.expect(Token::Colon, "':'");
            current_action_->duration = ts.expect_int("duration");
            ts.expect_end();
        } else if (ts.peek().text == "controlled") {
            ts.expect_word("controlled");
            ts.expect_word("resources");
            ts.expect(Token::Colon, "':'");
            current_action_->resources.push_back(ts.expect_ident("resource name"));
            while (ts.accept(Token::Comma))
                current_action_->resources.push_back(ts.expect_ident("resource name"));
            ts.expect_end();
        } else if (ts.accept_word("preconditions")) {
            ts.expect(Token::Colon, "':'");
            current_action_->preconditions.push_back(parse_literal(ts));
            while (ts.accept(Token::Comma))
                current_action_->preconditions.push_back(parse_literal(ts));
            ts.expect_end();
        } else if (ts.peek().text == "nominal") {
            ts.expect_word("nominal");
            ts.expect_word("effects");
            ts.expect(Token::Colon, "':'");
            current_action_->nominal = parse_effects(ts);
            have_nominal_ = true;
        } else if (ts.peek().text == "alternative") {
            ts.expect_word("alternative");
            ts.expect_word("effects");
            ts.expect(Token::Colon, "':'");
            current_action_->alternatives.push_back(parse_effects(ts));
        } else {
            fail("SYNTAX", "unknown action property '" + ts.peek().text + "'",
                 ts.line(), ts.col());
        }
    }

    EffectSet parse_effects(TokenStream& ts) {
        EffectSet effects;
        do {
            Assignment asg;
            asg.variable = ts.expect_ident("variable name");
            ts.expect_word("is");
            asg.value = ts.expect_ident("value name");
            effects.assignments.push_back(std::move(asg));
        } while (ts.accept(Token::Comma));
        ts.expect_end();
        return effects;
    }

    void parse_reaction_rule(TokenStream& ts) {
        ts.expect_word("rule");
        ts.expect(Token::Colon, "':'");
        ts.expect_word("IF");
        ReactionRule rule;
        rule.condition = parse_or(ts);
        ts.expect_word("THEN");
        do {
            ReactionRule::Consequent con;
            con.forbid = ts.accept_word("NOT");
            ts.expect_word("executing");
            con.action = ts.expect_ident("action name");
            rule.consequents.push_back(std::move(con));
        } while (ts.accept_word("AND"));
        ts.expect_end();
        spec_.reaction_rules.push_back(std::move(rule));
    }

    void parse_state_rule(TokenStream& ts) {
        ts.expect_word("rule");
        ts.expect(Token::Colon, "':'");
        ts.expect_word("IF");
        StateRule rule;
        rule.antecedent = parse_or(ts);
        ts.expect_word("THEN");
        rule.consequent = parse_or(ts);
        ts.expect_end();
        spec_.state_rules.push_back(std::move(rule));
    }

    void parse_goal_line(TokenStream& ts, bool first) {
        if (ts.peek().text == "goal") {
            ts.expect_word("goal");
            ts.expect_word("type");
            ts.expect(Token::Colon, "':'");
            std::string type = ts.expect_ident("goal type");
            if (type != "priority")
                fail("UNSUPPORTED_GOAL_TYPE", "unsupported goal type '" + type + "'",
                     ts.line(), 1);
            ts.expect_end();
            return;
        }
        if (first)
            fail("SYNTAX", "GOALS section must start with 'goal type: priority'",
                 ts.line(), 1);
        ts.expect_word("when");
        GoalRule goal;
        goal.when = parse_or(ts);
        ts.expect_word("then");
        ts.expect_word("goal");
        ts.expect(Token::Colon, "':'");
        do {
            if (ts.peek().text == "NOT")
                fail("NEGATED_GOAL", "goal targets may not be negated", ts.line(), ts.col());
            Literal lit;
            lit.variable = ts.expect_ident("variable name");
            ts.expect_word("is");
            lit.value = ts.expect_ident("value name");
            goal.target.push_back(std::move(lit));
        } while (ts.accept(Token::Comma));
        ts.expect_end();
        spec_.goals.push_back(std::move(goal));
    }

    void parse_config(TokenStream& ts) {
        ts.expect_word("max_plan_length");
        ts.expect(Token::Colon, "':'");
        spec_.config.max_plan_length = ts.expect_int("max_plan_length");
        ts.expect_end();
    }

    std::vector<std::string> lines_;
    size_t pos_ = 0;
    std::vector<Diagnostic> diags_;
    Specification spec_;
    std::optional<ActionDef> current_action_;
    int action_line_ = 0;
    bool have_nominal_ = false;
    bool seen_config_ = false;
};

}  // namespace

ParseResult parse_specification(const std::string& text) {
    return SpecParser(text).run();
}

ParseResult load_specification(const std::string& text) {
    ParseResult result = parse_specification(text);
    if (!result.ok()) return result;
    auto validation = validate_specification(*result.spec);
    if (has_errors(validation)) {
        result.spec.reset();
        result.diagnostics.insert(result.diagnostics.end(), validation.begin(),
                                  validation.end());
        return result;
    }
    resolve_references(*result.spec);
    return result;
}

StateParseResult parse_state_literals(const Specification& spec, const std::string& text) {
    StateParseResult result;
    try {
        TokenStream ts(text, 1);
        std::vector<int> values(spec.variables.size(), -1);
        do {
            std::string var_name = ts.expect_ident("variable name");
            ts.expect_word("is");
            std::string value = ts.expect_ident("value name");
            int var = spec.variable_index(var_name);
            if (var < 0)
                fail("UNDECLARED_VARIABLE", "unknown variable '" + var_name + "'", 1, 1);
            int val = -1;
            for (size_t i = 0; i < spec.variables[var].domain.size(); ++i)
                if (spec.variables[var].domain[i] == value) val = static_cast<int>(i);
            if (val < 0)
                fail("UNDECLARED_VALUE",
                     "value '" + value + "' is not in the domain of '" + var_name + "'", 1, 1);
            if (values[var] >= 0)
                fail("DUPLICATE_ASSIGNMENT", "variable '" + var_name + "' assigned twice", 1, 1);
            values[var] = val;
        } while (ts.accept(Token::Comma));
        ts.expect_end();
        for (size_t i = 0; i < values.size(); ++i)
            if (values[i] < 0)
                fail("INCOMPLETE_STATE",
                     "no value given for variable '" + spec.variables[i].name + "'", 1, 1);
        result.state = State{std::move(values)};
    } catch (const ParseError& e) {
        result.diagnostics.push_back(e.diag);
    }
    return result;
}

}  // namespace safeplan
