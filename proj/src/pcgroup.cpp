#include "bkcoh/pcgroup.hpp"

#include <algorithm>
#include <deque>

namespace bkcoh {

BlackBoxGroup BlackBoxGroup::from_table(GroupPtr g) {
    BlackBoxGroup b;
    b.order = g->order();
    b.id = g->id();
    b.mul = [g](int x, int y) { return g->mul(x, y); };
    b.inv = [g](int x) { return g->inv(x); };
    b.name = g->name();
    // every element is a generator; generating_set trims this when needed
    std::vector<int> all(b.order);
    for (int x = 0; x < b.order; ++x) all[x] = x;
    b.generators = all;
    b.generators = generating_set(b, closure(b, all));
    return b;
}

int BlackBoxGroup::pow(int x, long long k) const {
    int r = id, base = x;
    if (k < 0) {
        base = inv(x);
        k = -k;
    }
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

int BlackBoxGroup::element_order(int x) const {
    int k = 1;
    for (int y = x; y != id; y = mul(y, x)) ++k;
    return k;
}

GroupPtr to_table(const BlackBoxGroup& g, int cap) {
    if (g.order > cap) throw BoundError(g.name + ": too large for a multiplication table");
    std::vector<std::vector<int>> t(g.order, std::vector<int>(g.order));
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y) t[x][y] = g.mul(x, y);
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(std::move(t), g.name));
}

ElementSet closure(const BlackBoxGroup& g, const std::vector<int>& gens) {
    ElementSet s;
    s.mask.assign(g.order, 0);
    s.mask[g.id] = 1;
    s.members.push_back(g.id);
    for (std::size_t i = 0; i < s.members.size(); ++i)
        for (int h : gens) {
            int y = g.mul(s.members[i], h);
            if (!s.mask[y]) {
                s.mask[y] = 1;
                s.members.push_back(y);
            }
        }
    return s;
}

ElementSet normal_closure(const BlackBoxGroup& g, std::vector<int>& gens) {
    ElementSet s = closure(g, gens);
    bool grown = true;
    while (grown) {
        grown = false;
        for (std::size_t i = 0; i < gens.size() && !grown; ++i)
            for (int t : g.generators) {
                int c = g.mul(g.mul(t, gens[i]), g.inv(t));
                if (!s.contains(c)) {
                    gens.push_back(c);
                    s = closure(g, gens);
                    grown = true;
                    break;
                }
            }
    }
    return s;
}

ElementSet center(const BlackBoxGroup& g) {
    std::vector<int> zs;
    for (int x = 0; x < g.order; ++x) {
        bool central = true;
        for (int t : g.generators)
            if (!g.commute(x, t)) {
                central = false;
                break;
            }
        if (central) zs.push_back(x);
    }
    ElementSet s;
    s.mask.assign(g.order, 0);
    s.members.push_back(g.id);
    s.mask[g.id] = 1;
    for (int x : zs)
        if (!s.mask[x]) {
            s.mask[x] = 1;
            s.members.push_back(x);
        }
    return s;
}

ElementSet centralizer(const BlackBoxGroup& g, int x) {
    ElementSet s;
    s.mask.assign(g.order, 0);
    s.members.push_back(g.id);
    s.mask[g.id] = 1;
    for (int y = 0; y < g.order; ++y)
        if (y != g.id && g.commute(x, y)) {
            s.mask[y] = 1;
            s.members.push_back(y);
        }
    return s;
}

ElementSet derived_subgroup(const BlackBoxGroup& g) {
    // normal closure of the commutators of generators
    std::vector<int> gens;
    for (int a : g.generators)
        for (int b : g.generators) {
            int c = g.commutator(a, b);
            if (c != g.id) gens.push_back(c);
        }
    return normal_closure(g, gens);
}

std::vector<int> generating_set(const BlackBoxGroup& g, const ElementSet& s, std::vector<int> seed) {
    ElementSet cur = closure(g, seed);
    for (int x : s.members) {
        if (cur.contains(x)) continue;
        seed.push_back(x);
        cur = closure(g, seed);
    }
    return seed;
}

int prime_of_p_group(const BlackBoxGroup& g) {
    int n = g.order;
    if (n == 1) return 1;
    int p = 2;
    while (n % p != 0) ++p;
    while (n % p == 0) n /= p;
    return n == 1 ? p : 0;
}

int PcPresentation::element(const std::vector<int>& e) const {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(e[i]);
    return element_of_index[idx];
}

PcPresentation pc_presentation(const BlackBoxGroup& g) {
    PcPresentation pc;
    pc.p = prime_of_p_group(g);
    if (pc.p == 0) throw PreconditionError("pc presentation: " + g.name + " is not a p-group");
    if (g.order == 1) {
        pc.exps.assign(1, {});
        pc.element_of_index = {g.id};
        return pc;
    }
    const int p = pc.p;
    // lower exponent-p central series, one layer at a time
    std::vector<int> layer_gens = g.generators;
    ElementSet layer = closure(g, layer_gens);
    while (layer.size() > 1) {
        std::vector<int> next;
        for (int x : layer_gens) {
            int xp = g.pow(x, p);
            if (xp != g.id) next.push_back(xp);
            for (int t : g.generators) {
                int c = g.commutator(x, t);
                if (c != g.id) next.push_back(c);
            }
        }
        ElementSet below = normal_closure(g, next);
        if (below.size() == layer.size()) throw PreconditionError("pc presentation: series does not descend");
        std::vector<int> basis_gens = next;
        ElementSet cur = below;
        for (int x : layer_gens) {
            if (cur.contains(x)) continue;
            pc.pcgs.push_back(x);
            basis_gens.push_back(x);
            cur = closure(g, basis_gens);
        }
        layer_gens = next;
        layer = below;
    }
    pc.n = static_cast<int>(pc.pcgs.size());
    const int n = pc.n;
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(p);
    if (total != static_cast<std::size_t>(g.order)) throw PreconditionError("pc presentation: wrong composition length");

    // normal forms of every element
    std::vector<std::vector<int>> powers(n, std::vector<int>(p));
    for (int i = 0; i < n; ++i) {
        powers[i][0] = g.id;
        for (int e = 1; e < p; ++e) powers[i][e] = g.mul(powers[i][e - 1], pc.pcgs[i]);
    }
    pc.exps.assign(g.order, {});
    pc.element_of_index.assign(total, -1);
    std::vector<int> e(n, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        for (int i = n - 1; i >= 0; --i) {
            e[i] = static_cast<int>(r % p);
            r /= p;
        }
        int x = g.id;
        for (int i = 0; i < n; ++i) x = g.mul(x, powers[i][e[i]]);
        if (!pc.exps[x].empty()) throw PreconditionError("pc presentation: normal forms collide");
        pc.exps[x] = e;
        pc.element_of_index[idx] = x;
    }
    auto check_tail = [&](const std::vector<int>& w, int upto) {
        for (int l = 0; l <= upto; ++l)
            if (w[l] != 0) throw PreconditionError("pc presentation: relation leaves the series");
    };
    pc.power.resize(n);
    pc.conj.assign(n, std::vector<std::vector<int>>(n));
    for (int i = 0; i < n; ++i) {
        pc.power[i] = pc.exps[g.pow(pc.pcgs[i], p)];
        check_tail(pc.power[i], i);
        for (int j = i + 1; j < n; ++j) {
            int c = g.mul(g.mul(g.inv(pc.pcgs[i]), pc.pcgs[j]), pc.pcgs[i]);
            pc.conj[i][j] = pc.exps[c];
            check_tail(pc.conj[i][j], i);
        }
    }
    return pc;
}

namespace {

// Collection in the central extension with one free tail per relation.
class TailCollector {
public:
    explicit TailCollector(const PcPresentation& pc) : pc_(pc), n_(pc.n) { tails_ = n_ + n_ * (n_ - 1) / 2; }

    struct Elem {
        std::vector<int> e;
        std::vector<Int> t;
    };

    std::size_t tails() const { return static_cast<std::size_t>(tails_); }
    Elem identity() const { return {std::vector<int>(n_, 0), std::vector<Int>(tails_, 0)}; }
    Elem lift(const std::vector<int>& e) const { return {e, std::vector<Int>(tails_, 0)}; }

    void mul_gen(Elem& x, int k) const {
        std::vector<int> upper(x.e.begin() + k + 1, x.e.end());
        std::fill(x.e.begin() + k + 1, x.e.end(), 0);
        bool wrap = ++x.e[k] == pc_.p;
        if (wrap) {
            x.e[k] = 0;
            x.t[k] += 1;
            mul_word(x, pc_.power[k]);
        }
        for (int j = k + 1; j < n_; ++j) {
            int u = upper[j - k - 1];
            if (u == 0) continue;
            x.t[conj_tail(k, j)] += u;
            for (int r = 0; r < u; ++r) mul_word(x, pc_.conj[k][j]);
        }
    }

    void mul_word(Elem& x, const std::vector<int>& w) const {
        for (int l = 0; l < n_; ++l)
            for (int r = 0; r < w[l]; ++r) mul_gen(x, l);
    }

    // x * y for a collected y
    void mul_elem(Elem& x, const Elem& y) const {
        mul_word(x, y.e);
        for (int i = 0; i < tails_; ++i) x.t[i] += y.t[i];
    }

    Elem word(std::initializer_list<int> letters) const {
        Elem x = identity();
        for (int l : letters) mul_gen(x, l);
        return x;
    }

    Elem power_of(int k, int count) const {
        Elem x = identity();
        for (int r = 0; r < count; ++r) mul_gen(x, k);
        return x;
    }

private:
    int conj_tail(int i, int j) const { return n_ + i * (2 * n_ - i - 1) / 2 + (j - i - 1); }

    const PcPresentation& pc_;
    int n_;
    int tails_ = 0;
};

}  // namespace

SchurData schur_data(const BlackBoxGroup& g) {
    SchurData s;
    s.pc = pc_presentation(g);
    const auto& pc = s.pc;
    const int n = pc.n, p = pc.p;
    TailCollector col(pc);
    std::vector<AbElement> rels;
    auto compare = [&](const TailCollector::Elem& a, const TailCollector::Elem& b) {
        if (a.e != b.e) throw PreconditionError("schur: inconsistent base presentation");
        AbElement r(col.tails());
        bool nonzero = false;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = a.t[i] - b.t[i];
            nonzero |= r[i] != 0;
        }
        if (nonzero) rels.push_back(std::move(r));
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                // (g_k g_j) g_i = g_k (g_j g_i)
                auto left = col.word({k, j, i});
                auto right = col.word({k});
                col.mul_elem(right, col.word({j, i}));
                compare(left, right);
            }
            // g_j^p g_i = g_j^(p-1) (g_j g_i)
            auto left = col.power_of(j, p);
            col.mul_gen(left, i);
            auto right = col.power_of(j, p - 1);
            col.mul_elem(right, col.word({j, i}));
            compare(left, right);
            // g_j g_i^p = (g_j g_i) g_i^(p-1)
            auto l2 = col.word({j});
            col.mul_elem(l2, col.power_of(i, p));
            auto r2 = col.word({j, i});
            for (int r = 1; r < p; ++r) col.mul_gen(r2, i);
            compare(l2, r2);
        }
        // g_i g_i^p = g_i^p g_i
        auto left = col.word({i});
        col.mul_elem(left, col.power_of(i, p));
        auto right = col.power_of(i, p + 1);
        compare(left, right);
    }
    s.relations = rels.size();
    s.tail_count = col.tails();
    // exact integer Smith form: a Smith form mod L would not split the torsion off canonically
    std::vector<Int> orders;
    if (rels.empty()) {
        s.free_rows = identity_matrix(s.tail_count);
    } else {
        Matrix a = zero_matrix(s.tail_count, rels.size());
        for (std::size_t l = 0; l < rels.size(); ++l)
            for (std::size_t i = 0; i < s.tail_count; ++i) a[i][l] = rels[l][i];
        SmithDecomposition snf = smith_normal_form(a);
        for (std::size_t i = 0; i < s.tail_count; ++i) {
            Int d = i < snf.invariants.size() ? snf.invariants[i] : 0;
            if (d == 1) continue;
            if (d == 0) {
                s.free_rows.push_back(snf.U[i]);
                continue;
            }
            AbElement row = snf.U[i];
            for (Int& v : row) v = mod(v, d);
            s.torsion_rows.push_back(std::move(row));
            orders.push_back(d);
        }
    }
    s.multiplier = FinAbGroup(orders);
    return s;
}

AbElement lifted_commutator(const SchurData& s, int x, int y) {
    TailCollector col(s.pc);
    auto xy = col.lift(s.pc.exps[x]);
    col.mul_word(xy, s.pc.exps[y]);
    auto yx = col.lift(s.pc.exps[y]);
    col.mul_word(yx, s.pc.exps[x]);
    if (xy.e != yx.e) throw PreconditionError("lifted_commutator: elements do not commute");
    std::vector<Int> diff(col.tails());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = xy.t[i] - yx.t[i];
    for (const auto& row : s.free_rows) {
        __int128 acc = 0;
        for (std::size_t i = 0; i < diff.size(); ++i) acc += static_cast<__int128>(row[i]) * diff[i];
        if (acc != 0) throw std::logic_error("lifted_commutator: commutator has a free component");
    }
    AbElement out;
    for (std::size_t k = 0; k < s.torsion_rows.size(); ++k) {
        Int d = s.multiplier.orders[k], acc = 0;
        for (std::size_t i = 0; i < diff.size(); ++i) acc = mod(acc + mulmod(s.torsion_rows[k][i], mod(diff[i], d), d), d);
        out.push_back(acc);
    }
    return out;
}

PcBogomolov bogomolov_via_schur(const BlackBoxGroup& g) {
    PcBogomolov out;
    SchurData s = schur_data(g);
    out.multiplier = s.multiplier;
    // y -> [x~, y~] is a homomorphism on C(x) and additive in x over the
    // centre, so a transversal of G/Z(G) with centralizer generators suffices.
    ElementSet z = center(g);
    std::vector<int> zgens = generating_set(g, z);
    std::vector<AbElement> m0;
    auto add = [&](int x, int y) {
        AbElement c = lifted_commutator(s, x, y);
        if (!s.multiplier.is_zero(c)) m0.push_back(std::move(c));
        ++out.commuting_generators;
    };
    for (int x : zgens)
        for (int t : g.generators) add(x, t);
    std::vector<char> covered(g.order, 0);
    for (int x = 0; x < g.order; ++x) {
        if (covered[x]) continue;
        for (int c : z.members) covered[g.mul(x, c)] = 1;
        ElementSet cx = centralizer(g, x);
        for (int y : generating_set(g, cx, zgens)) add(x, y);
    }
    out.b0 = quotient_by(s.multiplier, m0).group;
    return out;
}

}  // namespace bkcoh
