#include "bkcoh/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace bkcoh {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string name) {
    int n = static_cast<int>(table.size());
    if (n == 0) throw TableError("empty", {-1, -1, -1}, "group table is empty");
    if (n > 4096) throw PreconditionError("group table too large to validate");
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n)
            throw TableError("shape", {a, -1, -1}, "row " + std::to_string(a) + " has wrong length");
        for (int b = 0; b < n; ++b)
            if (table[a][b] < 0 || table[a][b] >= n)
                throw TableError("closure", {a, b, -1},
                                 "product " + std::to_string(a) + "*" + std::to_string(b) + " out of range");
    }
    int id = -1;
    for (int e = 0; e < n && id < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
        if (ok) id = e;
    }
    if (id < 0) throw TableError("identity", {-1, -1, -1}, "no identity element");
    FiniteGroup g;
    g.n_ = n;
    g.id_ = id;
    g.name_ = std::move(name);
    g.table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.table_[static_cast<std::size_t>(a) * n + b] = table[a][b];
    g.inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table[a][b] == id && table[b][a] == id) g.inv_[a] = b;
    for (int a = 0; a < n; ++a)
        if (g.inv_[a] < 0) throw TableError("inverse", {a, -1, -1}, "element " + std::to_string(a) + " has no inverse");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ab = g.mul(a, b);
            for (int c = 0; c < n; ++c)
                if (g.mul(ab, c) != g.mul(a, g.mul(b, c)))
                    throw TableError("associativity", {a, b, c},
                                     "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                         std::to_string(c) + ")");
        }
    return g;
}

int FiniteGroup::pow(int a, long long k) const {
    int o = element_order(a);
    k %= o;
    if (k < 0) k += o;
    int r = id_;
    for (long long i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

int FiniteGroup::element_order(int a) const {
    int x = a, k = 1;
    while (x != id_) x = mul(x, a), ++k;
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
}

GroupPtr cyclic_group(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(t, "C" + std::to_string(n)));
}

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    int n = a.order(), m = b.order();
    std::vector<std::vector<int>> t(n * m, std::vector<int>(n * m));
    for (int x = 0; x < n * m; ++x)
        for (int y = 0; y < n * m; ++y) t[x][y] = a.mul(x / m, y / m) * m + b.mul(x % m, y % m);
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(t, a.name() + "x" + b.name()));
}

GroupPtr group_from_permutations(const std::vector<std::vector<int>>& gens, std::string name) {
    std::size_t deg = gens.empty() ? 1 : gens[0].size();
    std::vector<int> idp(deg);
    std::iota(idp.begin(), idp.end(), 0);
    std::vector<std::vector<int>> elems{idp};
    std::map<std::vector<int>, int> index{{idp, 0}};
    auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(deg);
        for (std::size_t x = 0; x < deg; ++x) r[x] = p[q[x]];
        return r;
    };
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            auto e = compose(elems[i], g);
            if (!index.count(e)) {
                index[e] = static_cast<int>(elems.size());
                elems.push_back(e);
            }
        }
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(t, std::move(name)));
}

GroupPtr symmetric_group3() { return group_from_permutations({{1, 0, 2}, {1, 2, 0}}, "S3"); }

GroupPtr dihedral_group8() { return group_from_permutations({{1, 2, 3, 0}, {0, 3, 2, 1}}, "D8"); }

GroupPtr quaternion_group8() {
    // units 1,i,j,k with signs; index = 4*sign + unit
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a % 4, ub = b % 4;
            int s = (a / 4 + b / 4 + sign[ua][ub]) % 2;
            t[a][b] = 4 * s + unit[ua][ub];
        }
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(t, "Q8"));
}

GroupPtr heisenberg_group(int p) {
    int n = p * p * p;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int a = x / (p * p), b = (x / p) % p, c = x % p;
            int a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
            t[x][y] = ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
        }
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(t, "Heis" + std::to_string(p)));
}

GroupPtr standard_group(const std::string& name) {
    if (name == "S3") return symmetric_group3();
    if (name == "D8") return dihedral_group8();
    if (name == "Q8") return quaternion_group8();
    if (name.rfind("Heis", 0) == 0) return heisenberg_group(std::stoi(name.substr(4)));
    // products of cyclic groups: C2xC2, C4, C1
    GroupPtr g;
    std::size_t pos = 0;
    while (pos < name.size()) {
        if (name[pos] != 'C') throw PreconditionError("unknown group name: " + name);
        std::size_t end = name.find('x', pos);
        int n = std::stoi(name.substr(pos + 1, end == std::string::npos ? std::string::npos : end - pos - 1));
        if (n < 1) throw PreconditionError("unknown group name: " + name);
        auto c = cyclic_group(n);
        g = g ? direct_product(*g, *c) : c;
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    if (!g) throw PreconditionError("unknown group name: " + name);
    return g;
}

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> members{g.id()};
    in[g.id()] = 1;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (int s : gens) {
            int x = g.mul(members[i], s);
            if (!in[x]) in[x] = 1, members.push_back(x);
        }
    std::sort(members.begin(), members.end());
    return members;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& members) {
    std::set<int> s(members.begin(), members.end());
    if (!s.count(g.id())) return false;
    for (int a : s)
        for (int b : s)
            if (!s.count(g.mul(a, g.inv(b)))) return false;
    return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<int>& members) {
    std::set<int> s(members.begin(), members.end());
    for (int x = 0; x < g.order(); ++x)
        for (int h : members)
            if (!s.count(g.conj(x, h))) return false;
    return true;
}

std::vector<std::vector<int>> cyclic_subgroups(const FiniteGroup& g) {
    std::set<std::vector<int>> out;
    for (int x = 0; x < g.order(); ++x) out.insert(generated_subgroup(g, {x}));
    return {out.begin(), out.end()};
}

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g) {
    auto cyc = cyclic_subgroups(g);
    std::set<std::vector<int>> all(cyc.begin(), cyc.end());
    std::vector<std::vector<int>> frontier(all.begin(), all.end());
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier)
            for (const auto& c : cyc) {
                std::vector<int> gens = s;
                gens.insert(gens.end(), c.begin(), c.end());
                auto j = generated_subgroup(g, gens);
                if (all.insert(j).second) next.push_back(j);
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> v(all.begin(), all.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return v;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

std::vector<int> center(const FiniteGroup& g) {
    std::vector<int> z;
    for (int x = 0; x < g.order(); ++x) {
        bool central = true;
        for (int y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
        if (central) z.push_back(x);
    }
    return z;
}

Embedded embed_subgroup(const FiniteGroup& g, const std::vector<int>& members) {
    if (!is_subgroup(g, members)) throw PreconditionError("not a subgroup");
    Embedded e;
    e.members = members;
    std::sort(e.members.begin(), e.members.end());
    // identity first so local index 0 is the identity
    auto it = std::find(e.members.begin(), e.members.end(), g.id());
    std::rotate(e.members.begin(), it, it + 1);
    e.local_index.assign(g.order(), -1);
    for (std::size_t i = 0; i < e.members.size(); ++i) e.local_index[e.members[i]] = static_cast<int>(i);
    int n = static_cast<int>(e.members.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = e.local_index[g.mul(e.members[a], e.members[b])];
    e.group = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(t, g.name() + "-sub"));
    return e;
}

CosetData coset_data(const FiniteGroup& g, const std::vector<int>& normal_subgroup) {
    if (!is_subgroup(g, normal_subgroup) || !is_normal(g, normal_subgroup))
        throw PreconditionError("coset data needs a normal subgroup");
    CosetData d;
    d.subgroup = normal_subgroup;
    std::sort(d.subgroup.begin(), d.subgroup.end());
    d.coset_of.assign(g.order(), -1);
    auto add_coset = [&](int x) {
        std::vector<int> c;
        for (int h : d.subgroup) c.push_back(g.mul(x, h));
        std::sort(c.begin(), c.end());
        int idx = static_cast<int>(d.cosets.size());
        for (int y : c) d.coset_of[y] = idx;
        d.section.push_back(x == g.id() ? g.id() : c.front());
        d.cosets.push_back(std::move(c));
    };
    add_coset(g.id());
    for (int x = 0; x < g.order(); ++x)
        if (d.coset_of[x] < 0) add_coset(x);
    int m = static_cast<int>(d.cosets.size());
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t[a][b] = d.coset_of[g.mul(d.section[a], d.section[b])];
    d.quotient = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(t, g.name() + "-quot"));
    return d;
}

bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != src.order()) return false;
    for (int a = 0; a < src.order(); ++a)
        for (int b = 0; b < src.order(); ++b)
            if (map[src.mul(a, b)] != dst.mul(map[a], map[b])) return false;
    return true;
}

}  // namespace bkcoh
