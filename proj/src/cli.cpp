#include "safeplan/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "safeplan/parser.hpp"
#include "safeplan/policy_builder.hpp"
#include "safeplan/policy_io.hpp"
#include "safeplan/semantics.hpp"
#include "safeplan/simulator.hpp"
#include "safeplan/verifier.hpp"

namespace safeplan {

namespace {

std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot read '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const auto& d : diags) err << d.to_string() << "\n";
}

std::optional<Specification> load_spec_file(const std::string& path, std::ostream& err) {
    auto text = read_file(path, err);
    if (!text) return std::nullopt;
    ParseResult result = load_specification(*text);
    print_diagnostics(result.diagnostics, err);
    if (!result.ok()) return std::nullopt;
    return std::move(result.spec);
}

std::optional<Policy> load_policy_file(const Specification& spec, const std::string& path,
                                       std::ostream& err) {
    auto text = read_file(path, err);
    if (!text) return std::nullopt;
    PolicyParseResult result = policy_from_json_text(spec, *text);
    print_diagnostics(result.diagnostics, err);
    if (!result.ok()) return std::nullopt;
    return std::move(result.policy);
}

std::string default_policy_path(const std::string& spec_path) {
    const std::string ext = ".tmt";
    if (spec_path.size() > ext.size() &&
        spec_path.compare(spec_path.size() - ext.size(), ext.size(), ext) == 0)
        return spec_path.substr(0, spec_path.size() - ext.size()) + ".policy.json";
    return spec_path + ".policy.json";
}

int cmd_plan(const std::string& spec_path, const std::string& out_path, bool as_json,
             bool with_explain, std::ostream& out, std::ostream& err) {
    auto spec = load_spec_file(spec_path, err);
    if (!spec) return 2;

    BuildResult result = build_policy(*spec);
    if (result.report) {
        if (as_json)
            err << unrealizable_to_json(*spec, *result.report).dump(2) << "\n";
        else
            err << unrealizable_to_text(*spec, *result.report);
        return 1;
    }
    if (!result.convergence_failures.empty()) {
        err << "internal error: generated policy fails convergence for "
            << result.convergence_failures.size() << " state(s)\n";
        for (const auto& failure : result.convergence_failures)
            err << "  start (" << state_to_string(*spec, failure.start) << ") cycles at ("
                << state_to_string(*spec, failure.repeated) << ")\n";
        return 1;
    }
    if (with_explain) {
        UnrealizableReport report = explain(*spec);
        err << unrealizable_to_text(*spec, report);
    }

    std::string path = out_path.empty() ? default_policy_path(spec_path) : out_path;
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot write '" << path << "'\n";
        return 2;
    }
    file << policy_file_text(policy_to_json(*spec, *result.policy));
    out << "policy with " << result.policy->entries.size() << " entries written to "
        << path << "\n";
    return 0;
}

int cmd_verify(const std::string& spec_path, const std::string& policy_path, bool as_json,
               std::ostream& out, std::ostream& err) {
    auto spec = load_spec_file(spec_path, err);
    if (!spec) return 2;
    auto policy = load_policy_file(*spec, policy_path, err);
    if (!policy) return 2;

    if (!policy->meta.spec_digest.empty() && policy->meta.spec_digest != spec_digest(*spec))
        err << "warning: policy spec_digest does not match this specification; "
               "verifying anyway\n";

    VerificationReport report = verify_policy(*spec, *policy);
    if (as_json)
        out << verification_to_json(*spec, report).dump(2) << "\n";
    else
        out << verification_to_text(*spec, report);
    return report.all_passed() ? 0 : 1;
}

int cmd_simulate(const std::string& spec_path, const std::string& policy_path,
                 const SimParams& base_params, const std::string& start_text,
                 bool as_json, std::ostream& out, std::ostream& err) {
    auto spec = load_spec_file(spec_path, err);
    if (!spec) return 2;
    auto policy = load_policy_file(*spec, policy_path, err);
    if (!policy) return 2;

    SimParams params = base_params;
    if (!start_text.empty()) {
        StateParseResult start = parse_state_literals(*spec, start_text);
        if (!start.state) {
            print_diagnostics(start.diagnostics, err);
            return 2;
        }
        params.start = start.state;
    }
    if (params.p_nominal < 0 || params.p_nominal > 1 || params.p_stall < 0 ||
        params.p_stall > 1) {
        err << "error: probabilities must lie in [0, 1]\n";
        return 2;
    }

    TraceReport report;
    try {
        report = simulate(*spec, *policy, params);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (as_json)
        out << trace_to_json(*spec, report).dump(2) << "\n";
    else
        out << trace_to_text(*spec, report);
    return report.total_violations == 0 ? 0 : 1;
}

int cmd_explain(const std::string& spec_path, bool as_json, std::ostream& out,
                std::ostream& err) {
    auto spec = load_spec_file(spec_path, err);
    if (!spec) return 2;
    UnrealizableReport report = explain(*spec);
    if (as_json)
        out << unrealizable_to_json(*spec, report).dump(2) << "\n";
    else
        out << unrealizable_to_text(*spec, report);
    return report.empty() ? 0 : 1;
}

int cmd_lint(const std::string& spec_path, std::ostream& err) {
    auto text = read_file(spec_path, err);
    if (!text) return 2;
    ParseResult result = load_specification(*text);
    print_diagnostics(result.diagnostics, err);
    return result.ok() ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"policy synthesizer, verifier and simulator for robot behavior "
                 "specifications"};
    app.require_subcommand(1);

    std::string spec_path, policy_path, out_path, start_text;
    bool as_json = false, with_explain = false;
    SimParams params;
    params.max_ticks = 50;

    CLI::App* plan = app.add_subcommand("plan", "synthesize a complete policy");
    plan->add_option("spec", spec_path, "specification file (.tmt)")->required();
    plan->add_option("-o,--out", out_path, "output policy path");
    plan->add_flag("--json", as_json, "machine-readable diagnostics");
    plan->add_flag("--explain", with_explain, "also print the per-state report");

    CLI::App* verify = app.add_subcommand("verify", "check a policy against a spec");
    verify->add_option("spec", spec_path, "specification file (.tmt)")->required();
    verify->add_option("policy", policy_path, "policy file (.policy.json)")->required();
    verify->add_flag("--json", as_json, "machine-readable report");

    CLI::App* simulate = app.add_subcommand("simulate", "run a seeded closed-loop simulation");
    simulate->add_option("spec", spec_path, "specification file (.tmt)")->required();
    simulate->add_option("policy", policy_path, "policy file (.policy.json)")->required();
    simulate->add_option("--seed", params.seed, "RNG seed");
    simulate->add_option("--ticks", params.max_ticks, "ticks per run")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--p-nominal", params.p_nominal, "probability of the nominal effect");
    simulate->add_option("--p-stall", params.p_stall, "probability of no effect");
    simulate->add_option("--runs", params.runs, "number of runs")->check(CLI::PositiveNumber);
    simulate->add_option("--start", start_text, "start state as '<var> is <value>, ...'");
    simulate->add_flag("--json", as_json, "machine-readable report");

    CLI::App* explain = app.add_subcommand("explain", "report states without a plan");
    explain->add_option("spec", spec_path, "specification file (.tmt)")->required();
    explain->add_flag("--json", as_json, "machine-readable report");

    CLI::App* lint = app.add_subcommand("lint", "parse and validate only");
    lint->add_option("spec", spec_path, "specification file (.tmt)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (plan->parsed()) return cmd_plan(spec_path, out_path, as_json, with_explain, out, err);
    if (verify->parsed()) return cmd_verify(spec_path, policy_path, as_json, out, err);
    if (simulate->parsed())
        return cmd_simulate(spec_path, policy_path, params, start_text, as_json, out, err);
    if (explain->parsed()) return cmd_explain(spec_path, as_json, out, err);
    if (lint->parsed()) return cmd_lint(spec_path, err);
    return 2;
}

}  // namespace safeplan
