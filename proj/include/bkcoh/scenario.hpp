#pragma once
// Scenario files: parsing, validation and execution of the requested checks.
// The grammar is documented in docs/scenario.md.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkcoh/brauer.hpp"

namespace bkcoh {

// Parse or validation failure at a source location.
struct ScenarioError : std::runtime_error {
    std::string source;
    int line = 0;
    std::string message;
    ScenarioError(std::string src, int ln, std::string msg);
};

enum class CheckKind {
    cohomology,
    bk_build,
    b0,
    br_nr,
    sha,
    verify_shapiro,
    verify_bk,
    q_relevable,
    neutrality,
    span_detect,
    simple_module,
};
std::string to_string(CheckKind k);
std::optional<CheckKind> check_kind_from(const std::string& s);
// Light checks still run when the bound is zero.
bool is_heavy(CheckKind k);

enum class ModuleKind { trivial, induced, dual_induced, norm_quotient };
std::string to_string(ModuleKind k);

struct GroupDecl {
    std::string id;
    int line = 0;
    GroupPtr group;
};
struct SubgroupDecl {
    std::string id, group;
    int line = 0;
    std::vector<int> members;  // sorted
};
struct CoefficientsDecl {
    std::string id;
    int line = 0;
    FinAbGroup A;
};

struct CheckSpec {
    std::string name;
    CheckKind kind = CheckKind::cohomology;
    int line = 0;
    // resolved references; empty pointers when absent
    GroupPtr group, quotient;
    std::optional<std::vector<int>> subgroup;
    std::optional<FinAbGroup> coefficients;
    std::vector<std::vector<int>> decompositions;
    ModuleKind module = ModuleKind::trivial;
    bool module_given = false;
    int degree = 1;
    std::vector<int> projection;        // pi: quotient -> group
    std::optional<std::vector<Int>> twist;  // flattened 1-cochain in M (+) M over the quotient
    std::vector<int> sigma;
    std::vector<int> q;
    Int modulus = 0;
    std::size_t samples = 20;
    std::size_t budget = std::size_t{1} << 16;
    std::vector<std::pair<std::string, std::string>> expect;
};

struct Scenario {
    std::string source;  // file name or label, used in diagnostics
    std::string name;
    std::uint64_t seed = 1;
    std::optional<Int> bound;
    Mutation mutation = Mutation::none;
    std::vector<GroupDecl> groups;
    std::vector<SubgroupDecl> subgroups;
    std::vector<CoefficientsDecl> coefficients;
    std::vector<CheckSpec> checks;
    std::string canonical;  // normalised source text, input to the digest
};

// Throws ScenarioError with the offending line.
Scenario parse_scenario(const std::string& text, const std::string& source = "<input>");
Scenario load_scenario(const std::string& path);

enum class Status { pass, fail, skipped, undecided };
std::string to_string(Status s);

struct CheckResult {
    std::string name;
    CheckKind kind = CheckKind::cohomology;
    Status status = Status::pass;
    std::vector<std::pair<std::string, std::string>> details;  // declaration order
    std::string witness;  // nonempty whenever status is fail
    double seconds = 0;
};

struct ScenarioResult {
    std::string name, source;
    std::uint64_t seed = 1;
    Int bound = 0;
    Mutation mutation = Mutation::none;
    std::string scenario_digest;
    std::vector<CheckResult> checks;
    double seconds = 0;
};

struct RunOptions {
    std::optional<std::uint64_t> seed;  // overrides the scenario seed
    std::optional<Int> bound;           // overrides the scenario bound
    unsigned jobs = 0;                  // 0: hardware concurrency
};

// Default bound: the BKCOH_BOUND environment variable, else 4096.
Int environment_bound();

// Checks run in a thread pool; results keep declaration order. The mutation
// and bound are process-wide, so scenarios must not run concurrently.
ScenarioResult run_scenario(const Scenario& s, const RunOptions& opt = {});
CheckResult run_check(const CheckSpec& c, std::uint64_t seed, Int bound);

// Built-in fixture battery, one scenario text per module.
struct Fixture {
    std::string name;
    std::string description;
    std::string text;
};
const std::vector<Fixture>& builtin_fixtures();

std::string fnv1a_hex(const std::string& data);

}  // namespace bkcoh
