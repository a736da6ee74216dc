#include "bkcoh/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace bkcoh {

ScenarioError::ScenarioError(std::string src, int ln, std::string msg)
    : std::runtime_error(src + ":" + std::to_string(ln) + ": " + msg), source(std::move(src)), line(ln),
      message(std::move(msg)) {}

namespace {

const std::vector<std::pair<CheckKind, std::string>>& kind_names() {
    static const std::vector<std::pair<CheckKind, std::string>> names{
        {CheckKind::cohomology, "cohomology"},         {CheckKind::bk_build, "bk-build"},
        {CheckKind::b0, "b0"},                         {CheckKind::br_nr, "br-nr"},
        {CheckKind::sha, "sha"},                       {CheckKind::verify_shapiro, "verify-shapiro"},
        {CheckKind::verify_bk, "verify-bk"},           {CheckKind::q_relevable, "q-relevable"},
        {CheckKind::neutrality, "neutrality"},         {CheckKind::span_detect, "span-detect"},
        {CheckKind::simple_module, "simple-module"},
    };
    return names;
}

}  // namespace

std::string to_string(CheckKind k) {
    for (const auto& [kind, name] : kind_names())
        if (kind == k) return name;
    return "?";
}

std::optional<CheckKind> check_kind_from(const std::string& s) {
    for (const auto& [kind, name] : kind_names())
        if (name == s) return kind;
    return std::nullopt;
}

bool is_heavy(CheckKind k) { return k != CheckKind::bk_build && k != CheckKind::simple_module; }

std::string to_string(ModuleKind k) {
    switch (k) {
        case ModuleKind::trivial: return "trivial";
        case ModuleKind::induced: return "induced";
        case ModuleKind::dual_induced: return "dual-induced";
        case ModuleKind::norm_quotient: return "norm-quotient";
    }
    return "?";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
        case Status::undecided: return "undecided";
    }
    return "?";
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line l{n, {}};
        for (std::string tok; ls >> tok;) l.tokens.push_back(tok);
        if (!l.tokens.empty()) out.push_back(std::move(l));
    }
    return out;
}

class Parser {
public:
    Parser(const std::string& text, std::string source) : lines_(tokenize(text)), source_(std::move(source)) {}

    Scenario parse() {
        Scenario s;
        s.source = source_;
        for (const auto& l : lines_) {
            std::string joined;
            for (const auto& t : l.tokens) joined += (joined.empty() ? "" : " ") + t;
            s.canonical += joined + "\n";
        }
        bool named = false, seeded = false, bounded = false, mutated = false;
        while (pos_ < lines_.size()) {
            const Line& l = lines_[pos_++];
            const std::string& kw = l.tokens[0];
            if (!named && kw != "scenario") fail(l.number, "the first statement must be 'scenario <name>'");
            if (kw == "scenario") {
                if (named) fail(l.number, "duplicate 'scenario' statement");
                arity(l, 2);
                s.name = l.tokens[1];
                named = true;
            } else if (kw == "seed") {
                if (seeded) fail(l.number, "duplicate 'seed'");
                arity(l, 2);
                s.seed = static_cast<std::uint64_t>(integer(l, 1, 0));
                seeded = true;
            } else if (kw == "bound") {
                if (bounded) fail(l.number, "duplicate 'bound'");
                arity(l, 2);
                s.bound = integer(l, 1, 0);
                bounded = true;
            } else if (kw == "mutation") {
                if (mutated) fail(l.number, "duplicate 'mutation'");
                arity(l, 2);
                const auto& m = l.tokens[1];
                if (m == "none") s.mutation = Mutation::none;
                else if (m == "cup-sign") s.mutation = Mutation::cup_sign;
                else if (m == "phi-transpose") s.mutation = Mutation::phi_transpose;
                else fail(l.number, "unknown mutation '" + m + "' (none, cup-sign, phi-transpose)");
                mutated = true;
            } else if (kw == "group") {
                parse_group(s, l);
            } else if (kw == "subgroup") {
                parse_subgroup(s, l);
            } else if (kw == "coefficients") {
                parse_coefficients(s, l);
            } else if (kw == "check") {
                parse_check(s, l);
            } else {
                fail(l.number, "unknown statement '" + kw + "'");
            }
        }
        if (!named) fail(1, "empty scenario: expected 'scenario <name>'");
        return s;
    }

private:
    std::vector<Line> lines_;
    std::string source_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(int line, const std::string& msg) const { throw ScenarioError(source_, line, msg); }

    void arity(const Line& l, std::size_t n) const {
        if (l.tokens.size() != n)
            fail(l.number, "'" + l.tokens[0] + "' takes " + std::to_string(n - 1) + " argument" + (n == 2 ? "" : "s"));
    }

    Int integer(const Line& l, std::size_t i, Int min) const {
        const std::string& t = l.tokens.at(i);
        Int v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size()) fail(l.number, "expected an integer, got '" + t + "'");
        if (v < min) fail(l.number, "value " + t + " is below the minimum " + std::to_string(min));
        return v;
    }

    std::vector<Int> integers(const Line& l, std::size_t from, Int min) const {
        std::vector<Int> v;
        for (std::size_t i = from; i < l.tokens.size(); ++i) v.push_back(integer(l, i, min));
        return v;
    }

    const Line& next(int opened_at, const std::string& what) {
        if (pos_ >= lines_.size()) fail(opened_at, what + " is not closed by 'end'");
        return lines_[pos_++];
    }

    void unique_id(const Scenario& s, const Line& l, const std::string& id) const {
        auto clash = [&](const auto& v) {
            return std::any_of(v.begin(), v.end(), [&](const auto& d) { return d.id == id; });
        };
        if (clash(s.groups) || clash(s.subgroups) || clash(s.coefficients))
            fail(l.number, "identifier '" + id + "' is already declared");
    }

    void parse_group(Scenario& s, const Line& head) {
        arity(head, 2);
        GroupDecl g{head.tokens[1], head.number, nullptr};
        unique_id(s, head, g.id);
        for (;;) {
            const Line& l = next(head.number, "group " + g.id);
            if (l.tokens[0] == "end") break;
            if (g.group) fail(l.number, "group " + g.id + " is already defined");
            if (l.tokens[0] == "standard") {
                arity(l, 2);
                try {
                    g.group = standard_group(l.tokens[1]);
                } catch (const std::exception&) {
                    fail(l.number, "unknown standard group '" + l.tokens[1] + "'");
                }
            } else if (l.tokens[0] == "table") {
                arity(l, 1);
                std::vector<std::vector<int>> rows;
                std::vector<int> row_lines;
                for (;;) {
                    const Line& r = next(l.number, "table");
                    if (r.tokens[0] == "end") break;
                    std::vector<int> row;
                    for (Int v : integers(r, 0, 0)) row.push_back(static_cast<int>(v));
                    rows.push_back(std::move(row));
                    row_lines.push_back(r.number);
                }
                try {
                    g.group = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(rows, g.id));
                } catch (const TableError& e) {
                    int at = l.number;
                    if (e.witness[0] >= 0 && e.witness[0] < static_cast<int>(row_lines.size()))
                        at = row_lines[e.witness[0]];
                    std::string msg = "group " + g.id + ": " + e.kind + " check failed";
                    if (e.kind == "associativity")
                        msg += " at the triple (" + std::to_string(e.witness[0]) + ", " + std::to_string(e.witness[1]) +
                               ", " + std::to_string(e.witness[2]) + ")";
                    fail(at, msg + ": " + e.what());
                } catch (const PreconditionError& e) {
                    fail(l.number, "group " + g.id + ": " + e.what());
                }
            } else {
                fail(l.number, "expected 'standard' or 'table' in group " + g.id);
            }
        }
        if (!g.group) fail(head.number, "group " + g.id + " has no definition");
        s.groups.push_back(std::move(g));
    }

    const GroupDecl& find_group(const Scenario& s, const Line& l, const std::string& id) const {
        for (const auto& g : s.groups)
            if (g.id == id) return g;
        fail(l.number, "unknown group '" + id + "'");
    }

    void parse_subgroup(Scenario& s, const Line& head) {
        if (head.tokens.size() != 4 || head.tokens[2] != "of") fail(head.number, "expected 'subgroup <id> of <group>'");
        SubgroupDecl d{head.tokens[1], head.tokens[3], head.number, {}};
        unique_id(s, head, d.id);
        const auto& G = *find_group(s, head, d.group).group;
        bool defined = false;
        for (;;) {
            const Line& l = next(head.number, "subgroup " + d.id);
            if (l.tokens[0] == "end") break;
            if (defined) fail(l.number, "subgroup " + d.id + " is already defined");
            std::vector<int> xs;
            for (Int v : integers(l, 1, 0)) {
                if (v >= G.order()) fail(l.number, "element " + std::to_string(v) + " is outside " + d.group);
                xs.push_back(static_cast<int>(v));
            }
            if (l.tokens[0] == "generators") {
                d.members = generated_subgroup(G, xs);
            } else if (l.tokens[0] == "elements") {
                std::sort(xs.begin(), xs.end());
                xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
                if (!is_subgroup(G, xs)) fail(l.number, "elements of " + d.id + " do not form a subgroup");
                d.members = xs;
            } else {
                fail(l.number, "expected 'elements' or 'generators' in subgroup " + d.id);
            }
            std::sort(d.members.begin(), d.members.end());
            defined = true;
        }
        if (!defined) fail(head.number, "subgroup " + d.id + " has no definition");
        s.subgroups.push_back(std::move(d));
    }

    void parse_coefficients(Scenario& s, const Line& head) {
        arity(head, 2);
        CoefficientsDecl c{head.tokens[1], head.number, {}};
        unique_id(s, head, c.id);
        bool defined = false;
        for (;;) {
            const Line& l = next(head.number, "coefficients " + c.id);
            if (l.tokens[0] == "end") break;
            if (l.tokens[0] != "orders") fail(l.number, "expected 'orders' in coefficients " + c.id);
            if (defined) fail(l.number, "coefficients " + c.id + " are already defined");
            if (l.tokens.size() < 2) fail(l.number, "'orders' needs at least one value");
            c.A = FinAbGroup(integers(l, 1, 1));
            defined = true;
        }
        if (!defined) fail(head.number, "coefficients " + c.id + " have no definition");
        s.coefficients.push_back(std::move(c));
    }

    const SubgroupDecl& find_subgroup(const Scenario& s, const Line& l, const std::string& id) const {
        for (const auto& d : s.subgroups)
            if (d.id == id) return d;
        fail(l.number, "unknown subgroup '" + id + "'");
    }

    void parse_check(Scenario& s, const Line& head) {
        arity(head, 2);
        CheckSpec c;
        c.name = head.tokens[1];
        c.line = head.number;
        for (const auto& o : s.checks)
            if (o.name == c.name) fail(head.number, "duplicate check name '" + c.name + "'");
        bool kinded = false, degree_given = false;
        std::string group_id, subgroup_id, quotient_id;
        std::vector<std::pair<std::string, int>> decomposition_groups;
        int subgroup_line = 0, projection_line = 0;
        for (;;) {
            const Line& l = next(head.number, "check " + c.name);
            const std::string& key = l.tokens[0];
            if (key == "end") break;
            if (key == "kind") {
                arity(l, 2);
                auto k = check_kind_from(l.tokens[1]);
                if (!k) fail(l.number, "unknown check kind '" + l.tokens[1] + "'");
                c.kind = *k;
                kinded = true;
            } else if (key == "group") {
                arity(l, 2);
                group_id = l.tokens[1];
                c.group = find_group(s, l, group_id).group;
            } else if (key == "subgroup") {
                arity(l, 2);
                const auto& d = find_subgroup(s, l, l.tokens[1]);
                subgroup_id = d.group;
                subgroup_line = l.number;
                c.subgroup = d.members;
            } else if (key == "coefficients") {
                arity(l, 2);
                bool found = false;
                for (const auto& a : s.coefficients)
                    if (a.id == l.tokens[1]) c.coefficients = a.A, found = true;
                if (!found) fail(l.number, "unknown coefficients '" + l.tokens[1] + "'");
            } else if (key == "module") {
                arity(l, 2);
                const auto& m = l.tokens[1];
                if (m == "trivial") c.module = ModuleKind::trivial;
                else if (m == "induced") c.module = ModuleKind::induced;
                else if (m == "dual-induced") c.module = ModuleKind::dual_induced;
                else if (m == "norm-quotient") c.module = ModuleKind::norm_quotient;
                else fail(l.number, "unknown module '" + m + "' (trivial, induced, dual-induced, norm-quotient)");
                c.module_given = true;
            } else if (key == "degree") {
                arity(l, 2);
                c.degree = static_cast<int>(integer(l, 1, 0));
                if (c.degree > 4) fail(l.number, "degree above 4 is not supported");
                degree_given = true;
            } else if (key == "quotient") {
                arity(l, 2);
                quotient_id = l.tokens[1];
                c.quotient = find_group(s, l, quotient_id).group;
            } else if (key == "projection") {
                for (Int v : integers(l, 1, 0)) c.projection.push_back(static_cast<int>(v));
                projection_line = l.number;
            } else if (key == "twist") {
                c.twist = integers(l, 1, 0);
            } else if (key == "decomposition") {
                arity(l, 2);
                const auto& d = find_subgroup(s, l, l.tokens[1]);
                c.decompositions.push_back(d.members);
                decomposition_groups.emplace_back(d.group, l.number);
            } else if (key == "sigma") {
                for (Int v : integers(l, 1, 0)) c.sigma.push_back(static_cast<int>(v));
            } else if (key == "q") {
                for (Int v : integers(l, 1, 1)) {
                    if (v % 2 == 0) fail(l.number, "q must be odd");
                    c.q.push_back(static_cast<int>(v));
                }
            } else if (key == "modulus") {
                arity(l, 2);
                c.modulus = integer(l, 1, 1);
            } else if (key == "samples") {
                arity(l, 2);
                c.samples = static_cast<std::size_t>(integer(l, 1, 0));
            } else if (key == "budget") {
                arity(l, 2);
                c.budget = static_cast<std::size_t>(integer(l, 1, 1));
            } else if (key == "expect") {
                if (l.tokens.size() < 3) fail(l.number, "'expect' needs a key and a value");
                std::string value;
                for (std::size_t i = 2; i < l.tokens.size(); ++i) value += (i > 2 ? " " : "") + l.tokens[i];
                c.expect.emplace_back(l.tokens[1], value);
            } else {
                fail(l.number, "unknown check field '" + key + "'");
            }
        }
        if (!kinded) fail(head.number, "check " + c.name + " has no 'kind'");
        for (const auto& [gid, ln] : decomposition_groups)
            if (gid != group_id) fail(ln, "decomposition subgroup is not declared in group '" + group_id + "'");
        validate(c, head, group_id, subgroup_id, subgroup_line, quotient_id, projection_line, degree_given);
        s.checks.push_back(std::move(c));
    }

    void validate(CheckSpec& c, const Line& head, const std::string& group_id, const std::string& subgroup_group,
                  int subgroup_line, const std::string& quotient_id, int projection_line, bool degree_given) const {
        auto need = [&](bool ok, const std::string& what) {
            if (!ok) fail(head.number, "check " + c.name + " (" + to_string(c.kind) + ") needs " + what);
        };
        if (c.subgroup && subgroup_group != group_id)
            fail(subgroup_line, "subgroup is not declared in group '" + group_id + "'");
        auto needs_normal = [&] {
            need(c.group && c.subgroup && c.coefficients, "'group', 'subgroup' and 'coefficients'");
            if (!is_normal(*c.group, *c.subgroup))
                fail(subgroup_line, "the subgroup must be normal for the induced module");
        };
        switch (c.kind) {
            case CheckKind::cohomology:
            case CheckKind::sha:
            case CheckKind::simple_module:
                if (c.kind == CheckKind::sha && !c.module_given) c.module = ModuleKind::dual_induced;
                if (c.module == ModuleKind::norm_quotient) break;
                if (c.module == ModuleKind::trivial) need(c.group && c.coefficients, "'group' and 'coefficients'");
                else needs_normal();
                if (c.kind == CheckKind::cohomology) need(degree_given, "'degree'");
                break;
            case CheckKind::bk_build:
            case CheckKind::verify_bk:
            case CheckKind::br_nr:
            case CheckKind::q_relevable:
            case CheckKind::neutrality:
            case CheckKind::verify_shapiro:
                needs_normal();
                break;
            case CheckKind::b0:
                need(c.group != nullptr, "'group'");
                if (c.subgroup || c.coefficients) needs_normal();
                break;
            case CheckKind::span_detect:
                need(c.coefficients.has_value(), "'coefficients'");
                if (c.modulus == 0) c.modulus = c.coefficients->exponent();
                if (c.modulus % c.coefficients->exponent() != 0)
                    fail(head.number, "modulus must be a multiple of the exponent of the coefficients");
                break;
        }
        if (c.quotient || !c.projection.empty()) {
            need(c.quotient && c.group, "'quotient' together with 'group'");
            if (c.projection.empty()) fail(head.number, "'quotient' " + quotient_id + " needs a 'projection'");
            if (static_cast<int>(c.projection.size()) != c.quotient->order())
                fail(projection_line, "projection needs one image per element of " + quotient_id);
            for (int x : c.projection)
                if (x >= c.group->order()) fail(projection_line, "projection image outside " + group_id);
            if (!is_homomorphism(*c.quotient, *c.group, c.projection))
                fail(projection_line, "projection is not a homomorphism");
            std::set<int> img(c.projection.begin(), c.projection.end());
            if (static_cast<int>(img.size()) != c.group->order()) fail(projection_line, "projection is not surjective");
        }
        if (c.twist) need(c.kind == CheckKind::verify_bk, "no 'twist' (only verify-bk takes one)");
        for (int x : c.sigma)
            if (!c.group || x >= c.group->order()) fail(head.number, "sigma outside the group");
    }
};

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) { return Parser(text, source).parse(); }

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

// ---------------------------------------------------------------- execution

namespace {

using Details = std::vector<std::pair<std::string, std::string>>;

struct Outcome {
    Details details;
    bool broken = false;        // an identity that must hold failed
    std::optional<bool> claim;  // the default expected value, if the kind has one
    bool undecided = false;
    std::string witness;

    // keys are single tokens so that 'expect' lines can name them
    void add(std::string k, std::string v) {
        std::replace(k.begin(), k.end(), ' ', '-');
        details.emplace_back(std::move(k), std::move(v));
    }
    void add(std::string k, Int v) { add(std::move(k), std::to_string(v)); }
    void add_flag(std::string k, bool v) { add(std::move(k), std::string(v ? "yes" : "no")); }
    void breaks(const std::string& w) {
        if (!broken) witness = w;
        broken = true;
    }
};

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

AbElement random_element(const FinAbGroup& g, std::mt19937_64& rng) {
    AbElement v(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) v[i] = static_cast<Int>(rng() % static_cast<std::uint64_t>(g.orders[i]));
    return v;
}

GModule build_module(const CheckSpec& c) {
    switch (c.module) {
        case ModuleKind::trivial: return trivial_module(c.group, *c.coefficients);
        case ModuleKind::induced: return induced_module(c.group, *c.subgroup, *c.coefficients);
        case ModuleKind::dual_induced: return dual_module(induced_module(c.group, *c.subgroup, *c.coefficients));
        case ModuleKind::norm_quotient: return norm_quotient_module();
    }
    throw std::logic_error("unhandled module kind");
}

BKDatum build_datum(const CheckSpec& c) { return build_bk(c.group, *c.subgroup, *c.coefficients); }

std::vector<int> identity_projection(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

TwistModel twist_model_for(const CheckSpec& c, const CrossedProduct& f) {
    if (c.quotient) return make_twist_model(f, c.quotient, c.projection);
    return make_twist_model(f, c.group, identity_projection(c.group->order()));
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

void check_cohomology(const CheckSpec& c, std::mt19937_64& rng, Outcome& o) {
    GModule m = build_module(c);
    o.add("module", to_string(c.module));
    o.add("degree", c.degree);
    Cohomology h(m, c.degree);
    o.add("H", describe(h.group()));
    o.add("order", h.order());
    // d o d = 0 on random cochains one degree down
    if (c.degree >= 1) {
        FinAbGroup cg = cochain_group(m, c.degree - 1);
        for (int k = 0; k < 8; ++k) {
            Cochain x = unflatten(m, c.degree - 1, random_element(cg, rng));
            Cochain dd = differential(m, differential(m, x));
            if (dd != zero_cochain(m, c.degree + 1)) {
                o.breaks("d(d(x)) != 0 for a random cochain of degree " + std::to_string(c.degree - 1));
                return;
            }
        }
    }
    // class_of inverts representative
    auto classes = enumerate(h.group(), 1024);
    for (const auto& cls : classes) {
        Cochain rep = h.representative(cls);
        if (!is_cocycle(m, rep) || h.class_of(rep) != h.group().reduce(cls)) {
            o.breaks("representative of class index " + std::to_string(h.group().index_of(cls)) +
                     " does not map back to its class");
            return;
        }
    }
}

void check_bk_build(const CheckSpec& c, Outcome& o) {
    BKDatum d = build_datum(c);
    o.add("M", describe(d.F.M().ab));
    o.add("Z", describe(d.F.Z().ab));
    o.add("F-order", d.F.order());
    o.add_flag("nondegenerate", is_nondegenerate(d.F.M().ab, d.F.phi()));
    auto failures = bk_invariant_failures(d);
    if (!failures.empty()) o.breaks(join(failures, "; "));
}

void check_verify_bk(const CheckSpec& c, std::uint64_t seed, Outcome& o) {
    BKDatum d = build_datum(c);
    if (auto f = bk_invariant_failures(d); !f.empty()) {
        o.breaks(join(f, "; "));
        return;
    }
    const auto& F = d.F;
    CenterDerived cd = center_and_derived(F);
    o.add("F-order", F.order());
    o.add("Z-order", cd.z_order);
    o.add("center-order", static_cast<Int>(cd.center.size()));
    o.add("derived-order", static_cast<Int>(cd.derived.size()));
    bool structure = cd.center_is_z && cd.derived_is_z;
    o.add_flag("center-equals-derived-equals-Z", structure);
    o.claim = structure;
    if (!structure)
        o.witness = "|Z(F)| = " + std::to_string(cd.center.size()) + ", |[F,F]| = " + std::to_string(cd.derived.size()) +
                    ", |Z| = " + std::to_string(cd.z_order);

    LambdaData ld = lambda_map(F.black_box());
    if (auto w = lambda_check(ld, seed); !w.empty()) o.breaks("commutator pairing: " + w);

    TwistModel t = twist_model_for(c, F);
    auto cocycles = t.h1_pair->cocycles();
    std::vector<Cochain> twists;
    if (c.twist) {
        FinAbGroup cg = cochain_group(t.pair, 1);
        if (c.twist->size() != cg.rank()) {
            o.breaks("twist has " + std::to_string(c.twist->size()) + " values, expected " + std::to_string(cg.rank()));
            return;
        }
        Cochain tw = unflatten(t.pair, 1, cg.reduce(*c.twist));
        if (!is_cocycle(t.pair, tw)) {
            o.breaks("twist is not a 1-cocycle");
            return;
        }
        twists.push_back(tw);
    } else {
        twists.push_back(zero_cochain(t.pair, 1));
        for (const auto& z : cocycles)
            if (twists.size() < 16 && z != twists.front()) twists.push_back(z);
    }
    std::size_t cases = 0;
    for (const auto& tw : twists) {
        DeltaComparison cmp = compare_delta_paths(t, tw, cocycles);
        cases += cmp.cases;
        if (!cmp.classes_agree || !cmp.cochains_agree) o.breaks("connecting map: " + cmp.witness);
    }
    o.add("twists", static_cast<Int>(twists.size()));
    o.add("delta-cases", static_cast<Int>(cases));

    std::mt19937_64 rng(seed);
    auto zs = enumerate(t.Z.ab);
    auto as = enumerate(t.pair.ab);
    std::size_t verified = 0;
    for (std::size_t k = 0; k < c.samples && !o.broken; ++k) {
        const Cochain& tw = twists[rng() % twists.size()];
        const Cochain& a = cocycles[rng() % cocycles.size()];
        auto z = twisted_lift(t, tw, a);
        if (!z) continue;  // obstruction class nonzero for this twist
        Cochain z2, a2;
        const AbElement& alpha = as[rng() % as.size()];
        conjugate_twisted_cocycle(t, tw, *z, a, zs[rng() % zs.size()], alpha, z2, a2);
        WitnessCheck w = cohomologous_witness(t, tw, *z, a, z2, a2, alpha);
        bool ok = w.c_is_cocycle && w.c_is_coboundary && w.conjugation_verified &&
                  (!w.connecting_identity || *w.connecting_identity);
        if (!ok) o.breaks("witness lemma: " + w.witness);
        ++verified;
    }
    o.add("witness-pairs", static_cast<Int>(verified));
}

void check_b0(const CheckSpec& c, Outcome& o) {
    BlackBoxGroup f = c.subgroup ? build_datum(c).F.black_box() : BlackBoxGroup::from_table(c.group);
    o.add("F-order", f.order);
    B0Result r = b0_oracle(f);
    o.add("route", r.route);
    if (r.multiplier) o.add("multiplier", describe(*r.multiplier));
    o.add("b0", describe(r.b0));
    std::optional<FinAbGroup> closed;
    try {
        LambdaData ld = lambda_map(f);
        if (ld.abelian || ld.center_is_derived) closed = b0_closed_form(ld);
    } catch (const PreconditionError&) {
    }
    o.add("closed-form", closed ? describe(*closed) : std::string("n/a"));
    if (closed && !isomorphic(*closed, r.b0))
        o.breaks("closed form " + describe(*closed) + " differs from the oracle " + describe(r.b0));
}

void check_br_nr(const CheckSpec& c, Outcome& o) {
    BKDatum d = build_datum(c);
    BrNr r = br_nr_bk(d);
    o.add("kernel", describe(r.kernel.group));
    o.add("pure-subgroup", describe(r.pure.group));
    o.add("quotient", describe(r.quotient));
    o.add_flag("kernel-equals-pure", r.kernel_equals_pure);
    if (r.kernel_equals_pure != (r.quotient.cardinality() == 1))
        o.breaks("element-wise comparison disagrees with the quotient " + describe(r.quotient));
    o.claim = r.kernel_equals_pure;
    if (!r.kernel_equals_pure) o.witness = "Ker phi / H = " + describe(r.quotient);
}

void check_sha(const CheckSpec& c, Outcome& o) {
    GModule m = build_module(c);
    ShaReport r = sha_cyclic(m, c.degree);
    o.add("module", to_string(c.module));
    o.add("degree", c.degree);
    o.add("H-order", r.h_order);
    o.add("cyclic-subgroups", static_cast<Int>(r.cyclic.size()));
    o.add("kernel", describe(r.kernel));
    if (!r.reverified) o.breaks("a kernel class does not restrict to a coboundary on some cyclic subgroup");
    o.claim = r.kernel.cardinality() == 1;
    if (!*o.claim) o.witness = "cyclic-restriction kernel " + describe(r.kernel);
}

void check_verify_shapiro(const CheckSpec& c, std::uint64_t seed, Outcome& o) {
    ShapiroSetup s = make_shapiro(c.group, *c.subgroup, *c.coefficients);
    auto rs = verify_shapiro_isomorphisms(s);
    auto ds = c.decompositions.empty() ? all_subgroups(*c.group) : c.decompositions;
    auto sq = verify_shapiro_squares(s, ds, seed);
    rs.insert(rs.end(), sq.begin(), sq.end());
    for (const auto& r : rs) {
        o.add(r.name, (r.ok ? "ok " : "FAILED ") + std::to_string(r.cases));
        if (!r.ok) o.breaks(r.name + ": " + r.witness);
    }
}

void check_q_relevable(const CheckSpec& c, Outcome& o) {
    BKDatum d = build_datum(c);
    std::vector<int> sigmas = c.sigma;
    if (sigmas.empty())
        for (int s = 0; s < c.group->order(); ++s)
            if (s != c.group->id()) sigmas.push_back(s);
    std::vector<int> qs = c.q.empty() ? std::vector<int>{3, 5, 7} : c.q;
    bool all_generated = true;
    std::string first_gap;
    for (int s : sigmas)
        for (int q : qs) {
            QRelevance r = q_relevance(d.F, s, q);
            std::string key = "sigma-" + std::to_string(s) + "-q-" + std::to_string(q);
            o.add(key, "eigen " + std::to_string(r.eigen_size) + " relevable " + std::to_string(r.relevable) +
                           " generated " + (r.generated ? "yes" : "no"));
            if (!r.power_identity || !r.conjugators_ok) o.breaks(key + ": " + r.witness);
            if (!r.generated && first_gap.empty()) first_gap = key + ": " + r.witness;
            all_generated = all_generated && r.generated;
        }
    o.claim = all_generated;
    if (!all_generated) o.witness = first_gap;
}

void check_neutrality(const CheckSpec& c, Outcome& o) {
    BKDatum d = build_datum(c);
    TwistModel t = twist_model_for(c, d.F);
    BlackBoxGroup f = d.F.black_box();
    NonabTwoCocycle base = standard_cocycle(t, f);
    std::string why;
    if (!validate_nonab(f, base, &why)) {
        o.breaks("standard cocycle rejected: " + why);
        return;
    }
    Cohomology h2(t.Z, 2);
    std::size_t neutral = 0, agreed = 0, undecided = 0;
    auto classes = enumerate(h2.group(), 4096);
    for (const auto& cls : classes) {
        Cochain beta = h2.representative(cls);
        NonabTwoCocycle moved = act_h2z(t, beta, base);
        if (!validate_nonab(f, moved, &why)) {
            o.breaks("moved cocycle rejected: " + why);
            return;
        }
        bool via_delta = neutrality_via_delta(t, beta).has_value();
        neutral += via_delta;
        Neutrality n = is_neutral_bruteforce(f, moved, c.budget);
        if (n.verdict == Verdict::undecided) {
            ++undecided;
            continue;
        }
        if ((n.verdict == Verdict::yes) != via_delta) {
            o.breaks("class index " + std::to_string(h2.group().index_of(cls)) + ": search says " +
                     to_string(n.verdict) + ", connecting map says " + (via_delta ? "yes" : "no"));
            return;
        }
        ++agreed;
    }
    o.add("classes", static_cast<Int>(classes.size()));
    o.add("neutral", static_cast<Int>(neutral));
    o.add("agreed", static_cast<Int>(agreed));
    o.add("undecided", static_cast<Int>(undecided));
    o.undecided = undecided > 0;
}

void check_span_detect(const CheckSpec& c, Outcome& o) {
    const FinAbGroup& g = *c.coefficients;
    auto chars = characters(g, c.modulus);
    // families of rank(G) characters reach every span; tiny duals get every subset
    std::vector<std::vector<AbElement>> families;
    Int count = 1;
    for (std::size_t i = 0; i < g.rank(); ++i) count = checked_mul(count, static_cast<Int>(chars.size()));
    if (checked_mul(count, static_cast<Int>(chars.size())) > (Int{1} << 22))
        throw BoundError("span-detect: too many families");
    if (chars.size() <= 9) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << chars.size()); ++mask) {
            std::vector<AbElement> f;
            for (std::size_t i = 0; i < chars.size(); ++i)
                if (mask >> i & 1) f.push_back(chars[i]);
            families.push_back(std::move(f));
        }
    } else {
        std::vector<std::size_t> idx(g.rank(), 0);
        for (;;) {
            std::vector<AbElement> f;
            for (auto i : idx) f.push_back(chars[i]);
            families.push_back(std::move(f));
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == chars.size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    std::size_t cases = 0, contained = 0;
    for (const auto& fam : families)
        for (const auto& a : chars) {
            bool local = cyclic_span_detect(g, c.modulus, fam, a);
            bool global = span_contains(g, c.modulus, fam, a);
            ++cases;
            contained += global;
            if (local != global) {
                o.breaks("family of " + std::to_string(fam.size()) + " characters: local " +
                         (local ? "yes" : "no") + ", global " + (global ? "yes" : "no"));
                return;
            }
        }
    o.add("G", describe(g));
    o.add("modulus", c.modulus);
    o.add("families", static_cast<Int>(families.size()));
    o.add("cases", static_cast<Int>(cases));
    o.add("contained", static_cast<Int>(contained));
}

void check_simple_module(const CheckSpec& c, Outcome& o) {
    GModule m = build_module(c);
    SupersolvableProbe p = not_supersolvable_probe(m);
    o.add("module", to_string(c.module));
    o.add_flag("simple", p.simple);
    o.add_flag("cyclic", p.cyclic);
    o.add("order", p.order);
}

}  // namespace

CheckResult run_check(const CheckSpec& c, std::uint64_t seed, Int bound) {
    CheckResult res;
    res.name = c.name;
    res.kind = c.kind;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        if (bound == 0 && is_heavy(c.kind)) throw BoundError("bound is zero");
        std::mt19937_64 rng(seed);
        switch (c.kind) {
            case CheckKind::cohomology: check_cohomology(c, rng, o); break;
            case CheckKind::bk_build: check_bk_build(c, o); break;
            case CheckKind::b0: check_b0(c, o); break;
            case CheckKind::br_nr: check_br_nr(c, o); break;
            case CheckKind::sha: check_sha(c, o); break;
            case CheckKind::verify_shapiro: check_verify_shapiro(c, seed, o); break;
            case CheckKind::verify_bk: check_verify_bk(c, seed, o); break;
            case CheckKind::q_relevable: check_q_relevable(c, o); break;
            case CheckKind::neutrality: check_neutrality(c, o); break;
            case CheckKind::span_detect: check_span_detect(c, o); break;
            case CheckKind::simple_module: check_simple_module(c, o); break;
        }
        res.details = o.details;
        if (o.broken) {
            res.status = Status::fail;
            res.witness = o.witness;
        } else if (!c.expect.empty()) {
            for (const auto& [key, want] : c.expect) {
                auto it = std::find_if(res.details.begin(), res.details.end(),
                                       [&](const auto& kv) { return kv.first == key; });
                if (it == res.details.end()) {
                    res.status = Status::fail;
                    res.witness = "expected " + key + " = " + want + ", but the check reports no '" + key + "'";
                    break;
                }
                if (it->second != want) {
                    res.status = Status::fail;
                    res.witness = "expected " + key + " = " + want + ", got " + it->second;
                    break;
                }
            }
            if (res.status == Status::pass && o.undecided) res.status = Status::undecided;
        } else if (o.claim && !*o.claim) {
            res.status = Status::fail;
            res.witness = o.witness.empty() ? std::string("default claim does not hold") : o.witness;
        } else if (o.undecided) {
            res.status = Status::undecided;
        }
    } catch (const BoundError& e) {
        res.status = Status::skipped;
        res.details = {{"reason", e.what()}};
    } catch (const std::exception& e) {
        res.status = Status::fail;
        res.details = o.details;
        res.witness = std::string("error: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

Int environment_bound() {
    if (const char* v = std::getenv("BKCOH_BOUND")) {
        Int b = 0;
        std::string s(v);
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), b);
        if (ec == std::errc() && p == s.data() + s.size() && b >= 0) return b;
        throw PreconditionError("BKCOH_BOUND must be a nonnegative integer, got '" + s + "'");
    }
    return 4096;
}

ScenarioResult run_scenario(const Scenario& s, const RunOptions& opt) {
    ScenarioResult out;
    out.name = s.name;
    out.source = s.source;
    out.seed = opt.seed.value_or(s.seed);
    out.bound = opt.bound ? *opt.bound : s.bound ? *s.bound : environment_bound();
    out.mutation = s.mutation;
    out.scenario_digest = fnv1a_hex(s.canonical);
    auto t0 = std::chrono::steady_clock::now();

    Int previous = default_bound();
    if (out.bound > 0) set_default_bound(out.bound);
    ScopedMutation mutation(s.mutation);

    std::size_t n = s.checks.size();
    out.checks.resize(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;)
            out.checks[i] = run_check(s.checks[i], mix(out.seed ^ mix(i)), out.bound);
    };
    unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    }
    set_default_bound(previous);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// ---------------------------------------------------------------- fixtures

const std::vector<Fixture>& builtin_fixtures() {
    static const std::vector<Fixture> fixtures{
        {"cohomology", "bar-complex cohomology of small groups and the F2[C3] module", R"(scenario cohomology
group C2
  standard C2
end
group C4
  standard C4
end
group C3
  standard C3
end
group V4
  standard C2xC2
end
group S3
  standard S3
end
subgroup trivial3 of C3
  elements 0
end
coefficients Z2
  orders 2
end
coefficients Z4
  orders 4
end
coefficients Z3
  orders 3
end
check h1-c2
  kind cohomology
  group C2
  coefficients Z2
  degree 1
  expect H Z/2
end
check h2-c4
  kind cohomology
  group C4
  coefficients Z4
  degree 2
  expect H Z/4
end
check h3-c3
  kind cohomology
  group C3
  coefficients Z3
  degree 3
  expect H Z/3
end
check h1-v4
  kind cohomology
  group V4
  coefficients Z2
  degree 1
  expect H Z/2 x Z/2
end
check h1-s3
  kind cohomology
  group S3
  coefficients Z2
  degree 1
  expect H Z/2
end
check h2-induced
  kind cohomology
  group C3
  module induced
  subgroup trivial3
  coefficients Z2
  degree 2
  expect H 0
end
check norm-quotient
  kind simple-module
  module norm-quotient
  expect simple yes
  expect cyclic no
  expect order 4
end
check trivial-simple
  kind simple-module
  group C3
  coefficients Z2
  expect simple yes
  expect cyclic yes
end
)"},
        {"shapiro", "Shapiro isomorphisms and the compatibility squares on the fixture family", R"(scenario shapiro
group C2
  standard C2
end
group C4
  standard C4
end
group V4
  standard C2xC2
end
group S3
  standard S3
end
group C3
  standard C3
end
subgroup one2 of C2
  elements 0
end
subgroup half of C4
  generators 2
end
subgroup diag of V4
  generators 3
end
subgroup a3 of S3
  generators 2
end
subgroup one3 of C3
  elements 0
end
coefficients Z2
  orders 2
end
coefficients Z3
  orders 3
end
check c2-z2
  kind verify-shapiro
  group C2
  subgroup one2
  coefficients Z2
end
check c2-z3
  kind verify-shapiro
  group C2
  subgroup one2
  coefficients Z3
end
check c4-z2
  kind verify-shapiro
  group C4
  subgroup half
  coefficients Z2
end
check v4-z2
  kind verify-shapiro
  group V4
  subgroup diag
  coefficients Z2
end
check s3-z2
  kind verify-shapiro
  group S3
  subgroup a3
  coefficients Z2
end
check c3-z3
  kind verify-shapiro
  group C3
  subgroup one3
  coefficients Z3
end
check c3-z2
  kind verify-shapiro
  group C3
  subgroup one3
  coefficients Z2
end
)"},
        {"bk", "crossed products of the induced-module family", R"(scenario bk
group C2
  standard C2
end
group C3
  standard C3
end
subgroup one2 of C2
  elements 0
end
subgroup one3 of C3
  elements 0
end
coefficients Z2
  orders 2
end
coefficients Z3
  orders 3
end
check build-2-2
  kind bk-build
  group C2
  subgroup one2
  coefficients Z2
  expect F-order 128
end
check build-2-3
  kind bk-build
  group C3
  subgroup one3
  coefficients Z2
  expect F-order 16384
end
check build-3-2
  kind bk-build
  group C2
  subgroup one2
  coefficients Z3
  expect F-order 2187
end
check structure-2-2
  kind verify-bk
  group C2
  subgroup one2
  coefficients Z2
end
check structure-2-3
  kind verify-bk
  group C3
  subgroup one3
  coefficients Z2
end
check structure-3-2
  kind verify-bk
  group C2
  subgroup one2
  coefficients Z3
end
check brnr-2-2
  kind br-nr
  group C2
  subgroup one2
  coefficients Z2
end
check brnr-2-3
  kind br-nr
  group C3
  subgroup one3
  coefficients Z2
end
check brnr-3-2
  kind br-nr
  group C2
  subgroup one2
  coefficients Z3
end
check b0-2-2
  kind b0
  group C2
  subgroup one2
  coefficients Z2
  expect b0 0
end
check b0-2-3
  kind b0
  group C3
  subgroup one3
  coefficients Z2
  expect b0 0
end
check b0-3-2
  kind b0
  group C2
  subgroup one2
  coefficients Z3
  expect b0 0
end
check qrel-2-2
  kind q-relevable
  group C2
  subgroup one2
  coefficients Z2
end
check qrel-2-3
  kind q-relevable
  group C3
  subgroup one3
  coefficients Z2
end
check neutral-2-2
  kind neutrality
  group C2
  subgroup one2
  coefficients Z2
end
)"},
        {"brauer", "Bogomolov multipliers, cyclic kernels and character detection", R"(scenario brauer
group D8
  standard D8
end
group Q8
  standard Q8
end
group Heis3
  standard Heis3
end
group V4
  standard C2xC2
end
group C4
  standard C4
end
group C2
  standard C2
end
group C3
  standard C3
end
group S3
  standard S3
end
subgroup one4 of V4
  elements 0
end
subgroup one2 of C2
  elements 0
end
subgroup one3 of C3
  elements 0
end
subgroup a3 of S3
  generators 2
end
coefficients Z2
  orders 2
end
coefficients Z3
  orders 3
end
coefficients V
  orders 2 2
end
coefficients Z4
  orders 4
end
coefficients Z2Z4
  orders 2 4
end
check b0-d8
  kind b0
  group D8
  expect b0 0
end
check b0-q8
  kind b0
  group Q8
  expect b0 0
end
check b0-heis3
  kind b0
  group Heis3
  expect b0 0
end
check b0-v4
  kind b0
  group V4
  expect b0 0
end
check b0-c4
  kind b0
  group C4
  expect b0 0
end
check sha-c2
  kind sha
  group C2
  subgroup one2
  coefficients Z2
end
check sha-c3
  kind sha
  group C3
  subgroup one3
  coefficients Z2
end
check sha-v4
  kind sha
  group V4
  subgroup one4
  coefficients Z3
end
check sha-s3
  kind sha
  group S3
  subgroup a3
  coefficients Z2
end
check sha-trivial-v4
  kind sha
  group V4
  module trivial
  coefficients Z2
end
check span-v
  kind span-detect
  coefficients V
  modulus 2
end
check span-z4
  kind span-detect
  coefficients Z4
end
check span-z2z4
  kind span-detect
  coefficients Z2Z4
end
)"},
    };
    return fixtures;
}

}  // namespace bkcoh
