#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "safeplan/cli.hpp"
#include "safeplan/parser.hpp"
#include "safeplan/policy_io.hpp"
#include "test_support.hpp"

using namespace safeplan;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "safeplan_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    file << text;
}

}  // namespace

TEST_CASE("plan writes the policy file and reports the entry count") {
    fs::path out_path = temp_dir() / "amr.policy.json";
    fs::remove(out_path);

    CliRun run = cli({"plan", test_support::spec_path("amr.tmt"), "-o", out_path.string()});
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("32 entries") != std::string::npos);
    REQUIRE(fs::exists(out_path));

    // The file round-trips byte-identically through parse + re-serialize.
    Specification spec = test_support::load_spec("amr.tmt");
    std::string text = test_support::read_file(out_path.string());
    PolicyParseResult parsed = policy_from_json_text(spec, text);
    REQUIRE(parsed.ok());
    CHECK(policy_file_text(policy_to_json(spec, *parsed.policy)) == text);
    CHECK(parsed.policy->meta.spec_digest == spec_digest(spec));
}

TEST_CASE("plan derives the default output path from the spec path") {
    fs::path dir = temp_dir();
    fs::path spec_copy = dir / "copy.tmt";
    write_text(spec_copy, test_support::read_file(test_support::spec_path("amr.tmt")));
    fs::path expected = dir / "copy.policy.json";
    fs::remove(expected);

    CliRun run = cli({"plan", spec_copy.string()});
    CHECK(run.exit_code == 0);
    CHECK(fs::exists(expected));
}

TEST_CASE("plan on an unrealizable spec reports findings and exits 1") {
    CliRun run = cli({"plan", test_support::spec_path("grid5.tmt")});
    CHECK(run.exit_code == 1);
    CHECK(run.err.find("unrealizable") != std::string::npos);
    CHECK(run.err.find("NO_SAFE_STEP") != std::string::npos);
}

TEST_CASE("verify prints the six-check report and exits by outcome") {
    fs::path policy_path = temp_dir() / "verify.policy.json";
    REQUIRE(cli({"plan", test_support::spec_path("amr.tmt"), "-o",
                 policy_path.string()}).exit_code == 0);

    CliRun ok = cli({"verify", test_support::spec_path("amr.tmt"), policy_path.string()});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("6/6 checks passed") != std::string::npos);

    // Mutate one entry on disk: verification fails with exit 1.
    std::string text = test_support::read_file(policy_path.string());
    auto pos = text.find("\"stop_conveyor\"");
    REQUIRE(pos != std::string::npos);
    fs::path mutated_path = temp_dir() / "mutated.policy.json";
    write_text(mutated_path,
               text.replace(pos, 15, "\"move_to_corridor\""));
    CliRun bad =
        cli({"verify", test_support::spec_path("amr.tmt"), mutated_path.string()});
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify warns when the policy was built from a different spec") {
    fs::path policy_path = temp_dir() / "grid3.policy.json";
    REQUIRE(cli({"plan", test_support::spec_path("grid3.tmt"), "-o",
                 policy_path.string()}).exit_code == 0);

    // Tamper with the recorded digest only; the policy itself stays valid.
    std::string text = test_support::read_file(policy_path.string());
    auto pos = text.find("\"spec_digest\": \"");
    REQUIRE(pos != std::string::npos);
    text[pos + 16] = text[pos + 16] == '0' ? '1' : '0';
    write_text(policy_path, text);

    CliRun run = cli({"verify", test_support::spec_path("grid3.tmt"), policy_path.string()});
    CHECK(run.exit_code == 0);  // digest mismatch is advisory, checks still pass
    CHECK(run.err.find("warning") != std::string::npos);
    CHECK(run.err.find("spec_digest") != std::string::npos);
}

TEST_CASE("simulate honors seed, runs and probability flags") {
    fs::path policy_path = temp_dir() / "sim.policy.json";
    REQUIRE(cli({"plan", test_support::spec_path("amr.tmt"), "-o",
                 policy_path.string()}).exit_code == 0);

    std::vector<std::string> args = {
        "simulate", test_support::spec_path("amr.tmt"), policy_path.string(),
        "--seed", "7", "--ticks", "20", "--runs", "10",
        "--p-nominal", "0.8", "--p-stall", "0.05"};
    CliRun first = cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out.find("safety violations: 0") != std::string::npos);

    CliRun second = cli(args);
    CHECK(second.out == first.out);  // same seed, same report

    CliRun bad_prob = cli({"simulate", test_support::spec_path("amr.tmt"),
                           policy_path.string(), "--p-nominal", "1.5"});
    CHECK(bad_prob.exit_code == 2);
}

TEST_CASE("simulate accepts a fixed start state") {
    fs::path policy_path = temp_dir() / "sim2.policy.json";
    REQUIRE(cli({"plan", test_support::spec_path("amr.tmt"), "-o",
                 policy_path.string()}).exit_code == 0);

    CliRun run = cli({"simulate", test_support::spec_path("amr.tmt"),
                      policy_path.string(), "--ticks", "4", "--start",
                      "S_Location is corridor, S_Battery is ok, S_Load is free, "
                      "S_Conveyor is off"});
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("first goal at tick 2") != std::string::npos);

    CliRun bad = cli({"simulate", test_support::spec_path("amr.tmt"),
                      policy_path.string(), "--start", "S_Location is corridor"});
    CHECK(bad.exit_code == 2);
}

TEST_CASE("explain and lint report through exit codes") {
    CHECK(cli({"explain", test_support::spec_path("amr.tmt")}).exit_code == 0);
    CHECK(cli({"explain", test_support::spec_path("grid5.tmt")}).exit_code == 1);
    CHECK(cli({"lint", test_support::spec_path("amr.tmt")}).exit_code == 0);

    fs::path broken = temp_dir() / "broken.tmt";
    write_text(broken, "BEGIN STATE VECTOR\nstate a can be t, f\n");
    CliRun run = cli({"lint", broken.string()});
    CHECK(run.exit_code == 2);
    CHECK(run.err.find("UNTERMINATED_BLOCK") != std::string::npos);
}

TEST_CASE("usage errors exit 2; help exits 0") {
    CHECK(cli({}).exit_code == 2);
    CHECK(cli({"frobnicate"}).exit_code == 2);
    CHECK(cli({"plan"}).exit_code == 2);  // missing spec argument
    CHECK(cli({"plan", "/nonexistent/path.tmt"}).exit_code == 2);
    CliRun help = cli({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("plan") != std::string::npos);
}

TEST_CASE("json output modes emit valid JSON") {
    fs::path policy_path = temp_dir() / "json.policy.json";
    REQUIRE(cli({"plan", test_support::spec_path("amr.tmt"), "-o",
                 policy_path.string()}).exit_code == 0);

    CliRun verify = cli({"verify", test_support::spec_path("amr.tmt"),
                         policy_path.string(), "--json"});
    CHECK(verify.exit_code == 0);
    auto verify_doc = ordered_json::parse(verify.out, nullptr, false);
    REQUIRE_FALSE(verify_doc.is_discarded());
    CHECK(verify_doc["all_passed"] == true);

    CliRun sim = cli({"simulate", test_support::spec_path("amr.tmt"),
                      policy_path.string(), "--ticks", "5", "--json"});
    CHECK(sim.exit_code == 0);
    auto sim_doc = ordered_json::parse(sim.out, nullptr, false);
    REQUIRE_FALSE(sim_doc.is_discarded());
    CHECK(sim_doc["total_violations"] == 0);

    CliRun explain = cli({"explain", test_support::spec_path("grid5.tmt"), "--json"});
    CHECK(explain.exit_code == 1);
    auto explain_doc = ordered_json::parse(explain.out, nullptr, false);
    REQUIRE_FALSE(explain_doc.is_discarded());
    CHECK(explain_doc["realizable"] == false);
}
