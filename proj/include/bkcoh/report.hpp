#pragma once
// Report rendering. The body (everything except timing and the environment
// stamp) is a pure function of the scenario, seed, bound and tool version.

#include <string>
#include <vector>

#include "bkcoh/scenario.hpp"

namespace bkcoh {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportVersion = 1;

struct Report {
    std::string command;  // "run" or "suite"
    std::vector<ScenarioResult> scenarios;
};

// 0 all pass, 1 some fail, 3 some skipped or undecided and none failed.
int exit_code(const Report& r);

struct Tally {
    std::size_t pass = 0, fail = 0, skipped = 0, undecided = 0;
};
Tally tally(const Report& r);

// Canonical body text; the digest line is computed over it.
std::string render_body(const Report& r);
std::string body_digest(const Report& r);
std::string render_text(const Report& r, bool with_timing = true);
std::string render_structured(const Report& r, bool with_timing = true);

}  // namespace bkcoh
