#pragma once

#include <optional>
#include <string>
#include <vector>

#include "safeplan/model.hpp"

namespace safeplan {

/// Outcome of parsing: exactly one of `spec` or a nonempty error list.
struct ParseResult {
    std::optional<Specification> spec;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return spec.has_value(); }
};

/// Parses the block-structured specification language (conventionally the
/// `.tmt` file format). Structural errors are reported with line/column
/// positions; cross-reference checks are left to validate_specification.
ParseResult parse_specification(const std::string& text);

/// Parse + validate + resolve in one call. On success the returned spec has
/// all integer indices filled in.
ParseResult load_specification(const std::string& text);

/// Deterministic canonical form in the surface syntax. Guaranteed to parse
/// back to a structurally equal Specification.
std::string print_canonical(const Specification& spec);

/// Parses a comma separated list of `<variable> is <value>` covering every
/// declared variable, e.g. for the simulator's --start flag.
/// Pre: spec is resolved.
struct StateParseResult {
    std::optional<State> state;
    std::vector<Diagnostic> diagnostics;
};
StateParseResult parse_state_literals(const Specification& spec, const std::string& text);

}  // namespace safeplan
