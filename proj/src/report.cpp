#include "bkcoh/report.hpp"

#include <cstdio>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace bkcoh {

namespace {

std::string mutation_name(Mutation m) {
    switch (m) {
        case Mutation::none: return "none";
        case Mutation::cup_sign: return "cup-sign";
        case Mutation::phi_transpose: return "phi-transpose";
    }
    return "?";
}

Tally tally_of(const std::vector<CheckResult>& cs) {
    Tally t;
    for (const auto& c : cs) {
        switch (c.status) {
            case Status::pass: ++t.pass; break;
            case Status::fail: ++t.fail; break;
            case Status::skipped: ++t.skipped; break;
            case Status::undecided: ++t.undecided; break;
        }
    }
    return t;
}

std::string tally_text(const Tally& t) {
    return "pass=" + std::to_string(t.pass) + " fail=" + std::to_string(t.fail) +
           " skipped=" + std::to_string(t.skipped) + " undecided=" + std::to_string(t.undecided);
}

std::string seconds_text(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
}

std::string environment_text() {
    std::ostringstream os;
    os << "tool bkcoh " << kToolVersion << "\n";
#ifdef __VERSION__
    os << "compiler " << __VERSION__ << "\n";
#endif
    os << "hardware-threads " << std::thread::hardware_concurrency() << "\n";
    return os.str();
}

nlohmann::ordered_json tally_json(const Tally& t) {
    return {{"pass", t.pass}, {"fail", t.fail}, {"skipped", t.skipped}, {"undecided", t.undecided}};
}

}  // namespace

Tally tally(const Report& r) {
    Tally t;
    for (const auto& s : r.scenarios) {
        Tally u = tally_of(s.checks);
        t.pass += u.pass;
        t.fail += u.fail;
        t.skipped += u.skipped;
        t.undecided += u.undecided;
    }
    return t;
}

int exit_code(const Report& r) {
    Tally t = tally(r);
    if (t.fail) return 1;
    if (t.skipped || t.undecided) return 3;
    return 0;
}

std::string render_body(const Report& r) {
    std::ostringstream os;
    os << "bkcoh-report " << kReportVersion << "\n";
    os << "tool " << kToolVersion << "\n";
    os << "command " << r.command << "\n";
    for (const auto& s : r.scenarios) {
        os << "scenario " << s.name << "\n";
        os << "  scenario-digest " << s.scenario_digest << "\n";
        os << "  seed " << s.seed << "\n";
        os << "  bound " << s.bound << "\n";
        os << "  mutation " << mutation_name(s.mutation) << "\n";
        for (const auto& c : s.checks) {
            os << "  check " << c.name << "\n";
            os << "    kind " << to_string(c.kind) << "\n";
            os << "    status " << to_string(c.status) << "\n";
            for (const auto& [k, v] : c.details) os << "    detail " << k << ": " << v << "\n";
            if (!c.witness.empty()) os << "    witness " << c.witness << "\n";
            os << "  end\n";
        }
        os << "  summary " << tally_text(tally_of(s.checks)) << "\n";
        os << "end\n";
    }
    os << "total " << tally_text(tally(r)) << "\n";
    os << "exit " << exit_code(r) << "\n";
    return os.str();
}

std::string body_digest(const Report& r) { return fnv1a_hex(render_body(r)); }

std::string render_text(const Report& r, bool with_timing) {
    std::string body = render_body(r);
    std::string out = body + "digest " + fnv1a_hex(body) + "\n";
    if (!with_timing) return out;
    out += "--- timing (not covered by the digest)\n";
    for (const auto& s : r.scenarios) {
        out += s.name + " " + seconds_text(s.seconds) + " s\n";
        for (const auto& c : s.checks) out += s.name + "/" + c.name + " " + seconds_text(c.seconds) + " s\n";
    }
    out += "--- environment\n" + environment_text();
    return out;
}

std::string render_structured(const Report& r, bool with_timing) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["format"] = "bkcoh-report";
    j["version"] = kReportVersion;
    j["tool"] = kToolVersion;
    j["command"] = r.command;
    ordered_json scenarios = ordered_json::array();
    for (const auto& s : r.scenarios) {
        ordered_json sj;
        sj["name"] = s.name;
        sj["scenario_digest"] = s.scenario_digest;
        sj["seed"] = s.seed;
        sj["bound"] = s.bound;
        sj["mutation"] = mutation_name(s.mutation);
        ordered_json checks = ordered_json::array();
        for (const auto& c : s.checks) {
            ordered_json cj;
            cj["name"] = c.name;
            cj["kind"] = to_string(c.kind);
            cj["status"] = to_string(c.status);
            ordered_json details = ordered_json::array();
            for (const auto& [k, v] : c.details) details.push_back({{"key", k}, {"value", v}});
            cj["details"] = details;
            if (!c.witness.empty()) cj["witness"] = c.witness;
            checks.push_back(cj);
        }
        sj["checks"] = checks;
        sj["summary"] = tally_json(tally_of(s.checks));
        scenarios.push_back(sj);
    }
    j["scenarios"] = scenarios;
    j["summary"] = tally_json(tally(r));
    j["exit_code"] = exit_code(r);
    j["digest"] = body_digest(r);
    if (with_timing) {
        ordered_json timing = ordered_json::array();
        for (const auto& s : r.scenarios)
            for (const auto& c : s.checks)
                timing.push_back({{"scenario", s.name}, {"check", c.name}, {"seconds", c.seconds}});
        j["timing"] = timing;
        ordered_json env;
        env["tool"] = std::string("bkcoh ") + kToolVersion;
#ifdef __VERSION__
        env["compiler"] = __VERSION__;
#endif
        env["hardware_threads"] = std::thread::hardware_concurrency();
        j["environment"] = env;
    }
    return j.dump(2) + "\n";
}

}  // namespace bkcoh
