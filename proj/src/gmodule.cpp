#include "bkcoh/gmodule.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bkcoh {

GModule GModule::make(GroupPtr g, FinAbGroup a, std::vector<Matrix> act) {
    if (!g) throw PreconditionError("module needs a group");
    if (static_cast<int>(act.size()) != g->order()) throw PreconditionError("need one action matrix per element");
    std::vector<AbHom> homs;
    for (auto& m : act) homs.emplace_back(a, a, m);  // validates and reduces
    for (std::size_t i = 0; i < act.size(); ++i) act[i] = homs[i].m;
    if (!hom_equal(homs[g->id()], identity_hom(a))) throw PreconditionError("identity must act trivially");
    for (int x = 0; x < g->order(); ++x)
        for (int y = 0; y < g->order(); ++y)
            if (!hom_equal(homs[g->mul(x, y)], compose(homs[x], homs[y])))
                throw PreconditionError("action is not a homomorphism at (" + std::to_string(x) + "," +
                                        std::to_string(y) + ")");
    GModule m;
    m.group = std::move(g);
    m.ab = std::move(a);
    m.act = std::move(act);
    return m;
}

AbElement GModule::apply(int g, const AbElement& x) const {
    AbElement r(ab.rank(), 0);
    const Matrix& m = act[g];
    for (std::size_t i = 0; i < r.size(); ++i) {
        Int n = ab.orders[i], acc = 0;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (m[i][j] != 0 && x[j] != 0) acc = (acc + mulmod(m[i][j], mod(x[j], n), n)) % n;
        r[i] = acc;
    }
    return r;
}

GModule trivial_module(GroupPtr g, const FinAbGroup& a) {
    std::vector<Matrix> act(g->order(), identity_matrix(a.rank()));
    return GModule::make(std::move(g), a, std::move(act));
}

GModule induced_module(GroupPtr g, const std::vector<int>& normal_subgroup, const FinAbGroup& a) {
    CosetData cd = coset_data(*g, normal_subgroup);
    std::size_t k = a.rank(), m = cd.cosets.size();
    std::vector<Int> orders;
    for (std::size_t c = 0; c < m; ++c) orders.insert(orders.end(), a.orders.begin(), a.orders.end());
    FinAbGroup ab(orders);
    std::vector<Matrix> act;
    for (int s = 0; s < g->order(); ++s) {
        Matrix mat = zero_matrix(m * k, m * k);
        int sbar = cd.coset_of[s];
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t src = static_cast<std::size_t>(cd.quotient->mul(static_cast<int>(c), sbar));
            for (std::size_t i = 0; i < k; ++i) mat[c * k + i][src * k + i] = 1;
        }
        act.push_back(std::move(mat));
    }
    GModule mod = GModule::make(g, ab, std::move(act));
    mod.induced = InducedInfo{std::move(cd), a};
    return mod;
}

GModule tensor_module(const GModule& m, const GModule& n) {
    if (m.group != n.group) throw PreconditionError("tensor of modules over different groups");
    std::vector<Matrix> act;
    for (int g = 0; g < m.group->order(); ++g) act.push_back(tensor_hom(m.action_hom(g), n.action_hom(g)).m);
    return GModule::make(m.group, tensor(m.ab, n.ab), std::move(act));
}

GModule direct_sum_module(const GModule& m, const GModule& n) {
    if (m.group != n.group) throw PreconditionError("sum of modules over different groups");
    std::size_t a = m.rank(), b = n.rank();
    std::vector<Matrix> act;
    for (int g = 0; g < m.group->order(); ++g) {
        Matrix mat = zero_matrix(a + b, a + b);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < a; ++j) mat[i][j] = m.act[g][i][j];
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j) mat[a + i][a + j] = n.act[g][i][j];
        act.push_back(std::move(mat));
    }
    return GModule::make(m.group, direct_sum(m.ab, n.ab), std::move(act));
}

GModule restrict_module(const GModule& m, const Embedded& sub) {
    std::vector<Matrix> act;
    for (int x : sub.members) act.push_back(m.act[x]);
    return GModule::make(sub.group, m.ab, std::move(act));
}

GModule pullback_module(const GModule& m, GroupPtr q, const std::vector<int>& map) {
    if (!is_homomorphism(*q, *m.group, map)) throw PreconditionError("pullback needs a homomorphism");
    std::vector<Matrix> act;
    for (int x = 0; x < q->order(); ++x) act.push_back(m.act[map[x]]);
    return GModule::make(std::move(q), m.ab, std::move(act));
}

GModule dual_module(const GModule& m) {
    const auto& n = m.ab.orders;
    std::vector<Matrix> act;
    for (int g = 0; g < m.group->order(); ++g) {
        const Matrix& inv = m.act[m.group->inv(g)];
        Matrix d = zero_matrix(n.size(), n.size());
        // (g chi)(e_j) = chi(g^-1 e_j); coordinates scale by n_j / n_i
        for (std::size_t j = 0; j < n.size(); ++j)
            for (std::size_t i = 0; i < n.size(); ++i) {
                Int v = inv[i][j];
                if (v == 0) continue;
                Int num = checked_mul(v, n[j]);
                d[j][i] = num / n[i];
            }
        act.push_back(std::move(d));
    }
    return GModule::make(m.group, m.ab, std::move(act));
}

bool is_equivariant(const GModule& src, const GModule& dst, const AbHom& f) {
    for (int g = 0; g < src.group->order(); ++g)
        if (!hom_equal(compose(f, src.action_hom(g)), compose(dst.action_hom(g), f))) return false;
    return true;
}

GModule kernel_module(const GModule& m, const AbHom& incl) {
    PreimageSolver solver(incl);
    std::vector<Matrix> act;
    for (int g = 0; g < m.group->order(); ++g) {
        std::vector<AbElement> imgs;
        for (std::size_t i = 0; i < incl.source.rank(); ++i) {
            AbElement x;
            if (!solver.solve(m.apply(g, incl.apply(incl.source.basis(i))), x))
                throw PreconditionError("subgroup is not stable under the action");
            imgs.push_back(x);
        }
        act.push_back(hom_from_images(incl.source, incl.source, imgs).m);
    }
    return GModule::make(m.group, incl.source, std::move(act));
}

GModule quotient_module(const GModule& m, const Quotient& q) {
    PreimageSolver lift(q.projection);
    std::vector<Matrix> act;
    for (int g = 0; g < m.group->order(); ++g) {
        std::vector<AbElement> imgs;
        for (std::size_t i = 0; i < q.group.rank(); ++i) {
            AbElement x;
            lift.solve(q.group.basis(i), x);
            imgs.push_back(q.projection.apply(m.apply(g, x)));
        }
        act.push_back(hom_from_images(q.group, q.group, imgs).m);
    }
    return GModule::make(m.group, q.group, std::move(act));
}

Subgroup fixed_points(const GModule& m) {
    // kernel of x -> (g x - x)_g
    std::size_t k = m.rank();
    int n = m.group->order();
    std::vector<Int> orders;
    for (int g = 0; g < n; ++g) orders.insert(orders.end(), m.ab.orders.begin(), m.ab.orders.end());
    Matrix mat = zero_matrix(k * n, k);
    for (int g = 0; g < n; ++g)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) mat[g * k + i][j] = m.act[g][i][j] - (i == j ? 1 : 0);
    return kernel(AbHom(m.ab, FinAbGroup(orders), mat));
}

namespace {

// submodule generated by a set of elements, as sorted element indices
std::vector<Int> span_indices(const GModule& m, std::vector<AbElement> gens) {
    std::set<Int> seen{m.ab.index_of(m.ab.zero())};
    std::vector<AbElement> elems{m.ab.zero()};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens)
            for (int s = 0; s < m.group->order(); ++s) {
                AbElement y = m.ab.add(elems[i], m.apply(s, g));
                if (seen.insert(m.ab.index_of(y)).second) elems.push_back(y);
            }
    return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<std::vector<Int>> submodules(const GModule& m, Int cap) {
    auto elems = enumerate(m.ab, cap);
    std::set<std::vector<Int>> cyc;
    for (const auto& x : elems) cyc.insert(span_indices(m, {x}));
    std::set<std::vector<Int>> all(cyc.begin(), cyc.end());
    std::vector<std::vector<Int>> frontier(all.begin(), all.end());
    while (!frontier.empty()) {
        std::vector<std::vector<Int>> next;
        for (const auto& s : frontier)
            for (const auto& c : cyc) {
                std::vector<AbElement> gens;
                for (Int i : s) gens.push_back(m.ab.element_at(i));
                for (Int i : c) gens.push_back(m.ab.element_at(i));
                auto j = span_indices(m, gens);
                if (all.insert(j).second) next.push_back(j);
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<Int>> v(all.begin(), all.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return v;
}

bool is_simple(const GModule& m) { return m.ab.cardinality() > 1 && submodules(m).size() == 2; }

bool is_cyclic_group(const FinAbGroup& a) { return invariant_factors(a).size() <= 1; }

bool not_supersolvable(const GModule& m) {
    auto subs = submodules(m);
    std::size_t top = subs.size() - 1;
    // reach[i]: chain with cyclic steps from 0 to subs[i]
    std::vector<char> reach(subs.size(), 0);
    reach[0] = 1;
    for (std::size_t i = 1; i < subs.size(); ++i)
        for (std::size_t j = 0; j < i && !reach[i]; ++j) {
            if (!reach[j] || subs[j].size() >= subs[i].size()) continue;
            if (!std::includes(subs[i].begin(), subs[i].end(), subs[j].begin(), subs[j].end())) continue;
            // quotient subs[i]/subs[j] is cyclic iff some x has order |i|/|j| modulo subs[j]
            Int need = static_cast<Int>(subs[i].size() / subs[j].size());
            std::set<Int> lower(subs[j].begin(), subs[j].end());
            for (Int xi : subs[i]) {
                AbElement x = m.ab.element_at(xi), y = x;
                Int k = 1;
                while (!lower.count(m.ab.index_of(y))) y = m.ab.add(y, x), ++k;
                if (k == need) {
                    reach[i] = 1;
                    break;
                }
            }
        }
    return !reach[top];
}

}  // namespace bkcoh
