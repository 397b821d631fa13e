#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "safeplan/model.hpp"
#include "safeplan/policy_builder.hpp"
#include "safeplan/simulator.hpp"
#include "safeplan/verifier.hpp"

namespace safeplan {

using ordered_json = nlohmann::ordered_json;

/// SHA-256 of the canonical spec text; recorded in policy metadata.
std::string spec_digest(const Specification& spec);

/// {"meta": {...}, "policy": [ {<var>: <value>, ..., "Actions": [...]} ]}
/// Variables appear in declaration order, entries in the order stored in the
/// policy (canonical state order when produced by build_policy).
ordered_json policy_to_json(const Specification& spec, const Policy& policy);
std::string policy_file_text(const ordered_json& doc);

struct PolicyParseResult {
    std::optional<Policy> policy;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return policy.has_value(); }
};
PolicyParseResult policy_from_json_text(const Specification& spec, const std::string& text);

ordered_json unrealizable_to_json(const Specification& spec, const UnrealizableReport& report);
std::string unrealizable_to_text(const Specification& spec, const UnrealizableReport& report);

ordered_json verification_to_json(const Specification& spec, const VerificationReport& report);
std::string verification_to_text(const Specification& spec, const VerificationReport& report);

ordered_json trace_to_json(const Specification& spec, const TraceReport& report);
std::string trace_to_text(const Specification& spec, const TraceReport& report);

}  // namespace safeplan
