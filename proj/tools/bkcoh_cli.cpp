// bkcoh: run scenario files and the built-in fixture battery.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bkcoh/report.hpp"

namespace fs = std::filesystem;
using namespace bkcoh;

namespace {

constexpr int kUsageError = 2;

struct Options {
    std::optional<std::uint64_t> seed;
    std::optional<Int> bound;
    std::string out;
    std::string format = "text";
    unsigned jobs = 0;
};

RunOptions run_options(const Options& o) { return {o.seed, o.bound, o.jobs}; }

int emit(const Report& r, const Options& o) {
    std::string text = o.format == "structured" ? render_structured(r) : render_text(r);
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "error: cannot write " << o.out << "\n";
            return kUsageError;
        }
        f << text;
        Tally t = tally(r);
        std::cout << r.command << ": pass=" << t.pass << " fail=" << t.fail << " skipped=" << t.skipped
                  << " undecided=" << t.undecided << " -> " << o.out << "\n";
    }
    return exit_code(r);
}

std::vector<fs::path> scenario_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".scn") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact finite-group cohomology checks for crossed products of induced modules"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--seed", o.seed, "Seed for randomized checks (overrides the scenario)");
    app.add_option("--bound", o.bound, "Cap on |G|^(r+1)*rank for cochain spaces; 0 skips heavy checks")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", o.out, "Write the report to this path instead of stdout");
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--jobs", o.jobs, "Worker threads (default: hardware concurrency)");

    std::string file;
    auto* run = app.add_subcommand("run", "Run one scenario file");
    run->add_option("file", file, "Scenario file")->required();

    std::string dir;
    auto* suite = app.add_subcommand("suite", "Run the built-in battery and every .scn file in an optional directory");
    suite->add_option("dir", dir, "Directory of extra scenario files")->check(CLI::ExistingDirectory);

    std::string show;
    auto* list = app.add_subcommand("list-fixtures", "List the built-in fixtures");
    list->add_option("--show", show, "Print the scenario text of one fixture");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*list) {
            for (const auto& f : builtin_fixtures()) {
                if (!show.empty() && f.name != show) continue;
                if (show.empty()) std::cout << f.name << "  " << f.description << "\n";
                else std::cout << f.text;
            }
            if (!show.empty() && std::none_of(builtin_fixtures().begin(), builtin_fixtures().end(),
                                              [&](const Fixture& f) { return f.name == show; })) {
                std::cerr << "error: no fixture named " << show << "\n";
                return kUsageError;
            }
            return 0;
        }
        // parse everything up front so a bad file stops the run before any work
        std::vector<Scenario> scenarios;
        Report report;
        if (*run) {
            report.command = "run";
            scenarios.push_back(load_scenario(file));
        } else {
            report.command = "suite";
            for (const auto& f : builtin_fixtures()) scenarios.push_back(parse_scenario(f.text, "builtin:" + f.name));
            if (!dir.empty())
                for (const auto& p : scenario_files(dir)) scenarios.push_back(load_scenario(p.string()));
        }
        RunOptions ro = run_options(o);
        for (const auto& s : scenarios) report.scenarios.push_back(run_scenario(s, ro));
        return emit(report, o);
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
}
