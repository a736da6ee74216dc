#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bkcoh/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace bkcoh;

namespace {

const std::string kRoot = BKCOH_SOURCE_DIR;

Report single(const ScenarioResult& r) { return Report{"run", {r}}; }

const CheckResult& find(const ScenarioResult& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    FAIL("no check " << name);
    throw std::logic_error("unreachable");
}

std::string detail(const CheckResult& c, const std::string& key) {
    for (const auto& [k, v] : c.details)
        if (k == key) return v;
    return "<missing>";
}

void every_fail_has_witness(const ScenarioResult& r) {
    for (const auto& c : r.checks)
        if (c.status == Status::fail) CHECK_FALSE(c.witness.empty());
}

const char* kBkScenario = R"(scenario bk-c2
group G
  standard C2
end
subgroup H of G
  elements 0
end
coefficients A
  orders 2
end
check structure
  kind verify-bk
  group G
  subgroup H
  coefficients A
end
check bogomolov
  kind b0
  group G
  subgroup H
  coefficients A
end
)";

}  // namespace

TEST_CASE("conformance vectors") {
    std::ifstream list(kRoot + "/docs/conformance/expected.txt");
    REQUIRE(list);
    std::string line;
    int vectors = 0;
    while (std::getline(list, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string file, outcome;
        int number = 0;
        ls >> file >> outcome >> number;
        INFO(file);
        std::string path = kRoot + "/docs/conformance/" + file;
        ++vectors;
        if (outcome == "ok") {
            Scenario s = load_scenario(path);
            CHECK(static_cast<int>(s.checks.size()) == number);
        } else {
            try {
                load_scenario(path);
                FAIL("expected a diagnostic");
            } catch (const ScenarioError& e) {
                CHECK(e.line == number);
                CHECK(std::string(e.what()).find(path + ":" + std::to_string(number) + ":") == 0);
            }
        }
    }
    CHECK(vectors >= 15);
}

TEST_CASE("the induced-module example over C2") {
    ScenarioResult r = run_scenario(parse_scenario(kBkScenario));
    REQUIRE(r.checks.size() == 2);
    const auto& s = find(r, "structure");
    CHECK(s.status == Status::pass);
    CHECK(detail(s, "center-equals-derived-equals-Z") == "yes");
    CHECK(detail(s, "F-order") == "128");
    const auto& b = find(r, "bogomolov");
    CHECK(b.status == Status::pass);
    CHECK(detail(b, "b0") == "0");
    CHECK(exit_code(single(r)) == 0);
}

TEST_CASE("empty check list") {
    ScenarioResult r = run_scenario(parse_scenario("scenario nothing\n"));
    CHECK(r.checks.empty());
    Report rep = single(r);
    CHECK(exit_code(rep) == 0);
    CHECK(render_body(rep).find("total pass=0 fail=0 skipped=0 undecided=0") != std::string::npos);
}

TEST_CASE("non-associative table names the failing triple") {
    const char* text = "scenario bad\ngroup T\n  table\n    0 1 2\n    1 2 0\n    2 0 2\n  end\nend\n";
    try {
        parse_scenario(text, "bad.scn");
        FAIL("expected a diagnostic");
    } catch (const ScenarioError& e) {
        std::string msg = e.what();
        CHECK(msg.find("bad.scn:5:") == 0);
        CHECK(msg.find("associativity") != std::string::npos);
        CHECK(msg.find("(1, 1, 2)") != std::string::npos);
    }
}

TEST_CASE("bound zero skips heavy checks") {
    Scenario s;
    for (const auto& f : builtin_fixtures())
        if (f.name == "bk") s = parse_scenario(f.text, f.name);
    REQUIRE(!s.checks.empty());
    ScenarioResult r = run_scenario(s, {.bound = 0});
    std::size_t skipped = 0;
    for (const auto& c : r.checks) {
        if (is_heavy(c.kind)) {
            CHECK(c.status == Status::skipped);
            ++skipped;
        } else {
            CHECK(c.status == Status::pass);
        }
    }
    CHECK(skipped > 0);
    CHECK(exit_code(single(r)) == 3);
}

TEST_CASE("a small bound skips only what exceeds it") {
    const char* text = R"(scenario small
bound 16
group G
  standard C3
end
coefficients A
  orders 3
end
check h1
  kind cohomology
  group G
  coefficients A
  degree 1
end
check h3
  kind cohomology
  group G
  coefficients A
  degree 3
end
)";
    ScenarioResult r = run_scenario(parse_scenario(text));
    CHECK(find(r, "h1").status == Status::pass);  // 3^2 rows
    CHECK(find(r, "h3").status == Status::skipped);  // 3^4 rows
    CHECK(r.bound == 16);
    CHECK(default_bound() == 4096);
}

TEST_CASE("report body is deterministic across thread counts") {
    Scenario s = parse_scenario(kBkScenario);
    ScenarioResult a = run_scenario(s, {.jobs = 1});
    ScenarioResult b = run_scenario(s, {.jobs = 4});
    CHECK(render_body(single(a)) == render_body(single(b)));
    CHECK(body_digest(single(a)) == body_digest(single(b)));
    ScenarioResult c = run_scenario(s, {.seed = 99});
    CHECK(c.seed == 99);
    CHECK(a.scenario_digest == c.scenario_digest);
    // layout changes do not move the scenario digest
    std::string spaced = "# comment\n\n" + std::string(kBkScenario);
    CHECK(run_scenario(parse_scenario(spaced)).scenario_digest == a.scenario_digest);
}

TEST_CASE("mutated scenarios fail with a witness") {
    for (const char* file : {"cup-sign.scn", "phi-transpose.scn"}) {
        INFO(file);
        ScenarioResult r = run_scenario(load_scenario(kRoot + "/fixtures/nonpassing/" + file));
        REQUIRE(r.checks.size() == 1);
        CHECK(r.checks[0].status == Status::fail);
        every_fail_has_witness(r);
        CHECK(exit_code(single(r)) == 1);
    }
    CHECK(current_mutation() == Mutation::none);
}

TEST_CASE("expectations replace the default claim") {
    std::string text = std::string(kBkScenario) + R"(check wrong
  kind b0
  group G
  subgroup H
  coefficients A
  expect b0 Z/2
end
check missing
  kind b0
  group G
  expect nonsense 1
end
)";
    ScenarioResult r = run_scenario(parse_scenario(text));
    const auto& w = find(r, "wrong");
    CHECK(w.status == Status::fail);
    CHECK(w.witness == "expected b0 = Z/2, got 0");
    CHECK(find(r, "missing").status == Status::fail);
    every_fail_has_witness(r);
    CHECK(exit_code(single(r)) == 1);
}

TEST_CASE("undecided neutrality search") {
    ScenarioResult r = run_scenario(load_scenario(kRoot + "/fixtures/nonpassing/undecided.scn"));
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].status == Status::undecided);
    CHECK(exit_code(single(r)) == 3);
}

TEST_CASE("structured report carries the same body") {
    ScenarioResult r = run_scenario(parse_scenario(kBkScenario));
    Report rep = single(r);
    auto j = nlohmann::json::parse(render_structured(rep));
    CHECK(j["format"] == "bkcoh-report");
    CHECK(j["version"] == kReportVersion);
    CHECK(j["digest"] == body_digest(rep));
    CHECK(j["exit_code"] == 0);
    CHECK(j["scenarios"][0]["checks"].size() == 2);
    CHECK(j["scenarios"][0]["checks"][1]["status"] == "pass");
    CHECK(j.contains("timing"));
    CHECK_FALSE(nlohmann::json::parse(render_structured(rep, false)).contains("timing"));
    std::string text = render_text(rep);
    CHECK(text.find("digest " + body_digest(rep)) != std::string::npos);
}

TEST_CASE("exit codes combine statuses") {
    auto with = [](std::vector<Status> ss) {
        ScenarioResult r;
        for (auto s : ss) r.checks.push_back(CheckResult{"c", CheckKind::b0, s, {}, "w", 0});
        return exit_code(single(r));
    };
    CHECK(with({}) == 0);
    CHECK(with({Status::pass}) == 0);
    CHECK(with({Status::pass, Status::skipped}) == 3);
    CHECK(with({Status::undecided}) == 3);
    CHECK(with({Status::skipped, Status::fail}) == 1);
}

TEST_CASE("environment bound") {
    ::setenv("BKCOH_BOUND", "123", 1);
    CHECK(environment_bound() == 123);
    ScenarioResult r = run_scenario(parse_scenario("scenario e\n"));
    CHECK(r.bound == 123);
    ::setenv("BKCOH_BOUND", "lots", 1);
    CHECK_THROWS_AS(environment_bound(), PreconditionError);
    ::unsetenv("BKCOH_BOUND");
    CHECK(environment_bound() == 4096);
}

TEST_CASE("built-in fixtures parse") {
    CHECK(builtin_fixtures().size() >= 4);
    for (const auto& f : builtin_fixtures()) {
        INFO(f.name);
        Scenario s = parse_scenario(f.text, f.name);
        CHECK(s.name == f.name);
        CHECK_FALSE(s.checks.empty());
    }
}
