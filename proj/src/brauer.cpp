#include "bkcoh/brauer.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace bkcoh {

namespace {

ElementSet whole(const BlackBoxGroup& g) {
    ElementSet s;
    s.mask.assign(g.order, 1);
    s.members.push_back(g.id);
    for (int x = 0; x < g.order; ++x)
        if (x != g.id) s.members.push_back(x);
    return s;
}

ElementSet trivial_set(const BlackBoxGroup& g) {
    ElementSet s;
    s.mask.assign(g.order, 0);
    s.mask[g.id] = 1;
    s.members.push_back(g.id);
    return s;
}

// One homomorphism src -> sum of the targets; the kernel is the common kernel.
Subgroup common_kernel(const FinAbGroup& src, const std::vector<AbHom>& maps) {
    FinAbGroup target;
    Matrix m;
    for (const auto& h : maps) {
        target = direct_sum(target, h.target);
        m.insert(m.end(), h.m.begin(), h.m.end());
    }
    if (target.rank() == 0) return Subgroup{src, identity_hom(src)};
    return kernel(AbHom(src, target, std::move(m)));
}

// quotient of sub.group by the preimages of gens (which lie in sub)
FinAbGroup quotient_in(const Subgroup& sub, const std::vector<AbElement>& gens) {
    PreimageSolver solve(sub.inclusion);
    std::vector<AbElement> pre;
    for (const auto& g : gens) {
        AbElement u;
        if (!solve.solve(g, u)) throw std::logic_error("generator outside the ambient subgroup");
        pre.push_back(std::move(u));
    }
    return quotient_by(sub.group, pre).group;
}

}  // namespace

// ---------------------------------------------------------------- coordinates

int AbelianCoords::lift(const AbElement& v) const {
    return representative.at(static_cast<std::size_t>(coset_by_index.at(group.index_of(group.reduce(v)))));
}

AbelianCoords abelian_coords(const BlackBoxGroup& g, const ElementSet& s, const ElementSet& n) {
    AbelianCoords c;
    c.coset_of.assign(g.order, -1);
    for (int x : s.members) {
        if (c.coset_of[x] >= 0) continue;
        int id = static_cast<int>(c.representative.size());
        c.representative.push_back(x);
        for (int y : n.members) c.coset_of[g.mul(x, y)] = id;
    }
    std::size_t k = c.representative.size();
    std::vector<int> gens;
    for (int x : generating_set(g, s))
        if (!n.contains(x)) gens.push_back(x);
    std::vector<Int> orders;
    for (int x : gens) {
        Int o = 1;
        for (int y = x; c.coset_of[y] != 0; y = g.mul(y, x)) ++o;
        orders.push_back(o);
    }
    // breadth-first search over cosets; every edge gives a relation
    std::vector<AbElement> path(k);
    std::vector<char> seen(k, 0);
    std::vector<AbElement> relations;
    std::vector<int> queue{0};
    seen[0] = 1;
    path[0] = AbElement(gens.size(), 0);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            int v = c.coset_of[g.mul(c.representative[u], gens[i])];
            AbElement step = path[u];
            step[i] += 1;
            if (!seen[v]) {
                seen[v] = 1;
                path[v] = step;
                queue.push_back(v);
            } else {
                AbElement rel(gens.size());
                for (std::size_t t = 0; t < gens.size(); ++t) rel[t] = step[t] - path[v][t];
                relations.push_back(std::move(rel));
            }
        }
    }
    if (queue.size() != k) throw std::logic_error("abelian_coords: generators miss some cosets");
    FinAbGroup free(orders);
    for (auto& r : relations) r = free.reduce(std::move(r));
    Quotient q = quotient_by(free, relations);
    c.group = q.group;
    if (c.group.cardinality() != static_cast<Int>(k)) throw PreconditionError("abelian_coords: S/N is not abelian");
    c.coset_by_index.assign(k, -1);
    for (std::size_t id = 0; id < k; ++id) {
        c.coords.push_back(q.projection.apply(path[id]));
        c.coset_by_index[static_cast<std::size_t>(c.group.index_of(c.coords.back()))] = static_cast<int>(id);
    }
    return c;
}

// ---------------------------------------------------------------- lambda and B0

LambdaData lambda_map(const BlackBoxGroup& f) {
    LambdaData d;
    d.F = f;
    d.center = center(f);
    d.derived = derived_subgroup(f);
    d.class_two = std::all_of(d.derived.members.begin(), d.derived.members.end(),
                              [&](int x) { return d.center.contains(x); });
    if (!d.class_two) throw PreconditionError(f.name + ": not of nilpotency class two");
    d.abelian = d.derived.size() == 1;
    d.center_is_derived = d.center.mask == d.derived.mask;
    d.fab = abelian_coords(f, whole(f), d.derived);
    d.zc = abelian_coords(f, d.center, trivial_set(f));
    d.wedge = exterior_square(d.fab.group);
    std::vector<AbElement> images;
    for (auto [i, j] : d.wedge.pairs)
        images.push_back(d.zc.of(f.commutator(d.fab.lift(d.fab.group.basis(i)), d.fab.lift(d.fab.group.basis(j)))));
    d.lambda = hom_from_images(d.wedge.group, d.zc.group, images);
    d.kernel = kernel(d.lambda);
    auto elems = enumerate(d.fab.group, Int{1} << 13);
    std::set<AbElement> pure;
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = a + 1; b < elems.size(); ++b) {
            AbElement w = wedge(d.fab.group, d.wedge, elems[a], elems[b]);
            if (!d.zc.group.is_zero(d.lambda.apply(w))) continue;
            ++d.pure_pairs;
            if (!d.wedge.group.is_zero(w)) pure.insert(std::move(w));
        }
    std::vector<AbElement> gens(pure.begin(), pure.end());
    d.pure_kernel = subgroup_generated(d.wedge.group, gens);
    return d;
}

std::string lambda_check(const LambdaData& d, std::uint64_t seed, std::size_t samples) {
    std::mt19937_64 rng(seed);
    const auto& fab = d.fab.group;
    auto moved = [&](const AbElement& a) {
        int c = d.derived.members[rng() % d.derived.size()];
        return d.F.mul(d.fab.lift(a), c);
    };
    auto test = [&](const AbElement& a, const AbElement& b) -> std::string {
        AbElement lhs = d.lambda.apply(wedge(fab, d.wedge, a, b));
        AbElement rhs = d.zc.of(d.F.commutator(moved(a), moved(b)));
        if (lhs == rhs) return {};
        return "lambda disagrees with the commutator of lifts at a=" + std::to_string(fab.index_of(a)) +
               " b=" + std::to_string(fab.index_of(b));
    };
    Int n = fab.cardinality();
    if (n * n <= (Int{1} << 16)) {
        auto elems = enumerate(fab);
        for (const auto& a : elems)
            for (const auto& b : elems)
                if (auto w = test(a, b); !w.empty()) return w;
    }
    for (std::size_t s = 0; s < samples; ++s) {
        AbElement a = fab.element_at(static_cast<Int>(rng() % static_cast<std::uint64_t>(n)));
        AbElement b = fab.element_at(static_cast<Int>(rng() % static_cast<std::uint64_t>(n)));
        if (auto w = test(a, b); !w.empty()) return w;
    }
    return {};
}

FinAbGroup b0_closed_form(const LambdaData& d) {
    if (!d.center_is_derived && !d.abelian) throw PreconditionError(d.F.name + ": Z(F) != [F,F]");
    std::vector<AbElement> gens;
    const auto& inc = d.pure_kernel.inclusion;
    for (std::size_t i = 0; i < d.pure_kernel.group.rank(); ++i) gens.push_back(inc.apply(d.pure_kernel.group.basis(i)));
    return quotient_in(d.kernel, gens);
}

B0Result b0_oracle(const BlackBoxGroup& f, const B0Options& opt) {
    B0Result out;
    Int n = f.order;
    if (opt.force_schur || checked_mul(checked_mul(n, n), n) > opt.bar_cap) {
        PcBogomolov pc = bogomolov_via_schur(f);
        out.route = "schur";
        out.b0 = pc.b0;
        out.multiplier = pc.multiplier;
        out.test_subgroups = pc.commuting_generators;
        return out;
    }
    out.route = "bar";
    out.coefficient = n;
    GroupPtr table = to_table(f);
    GModule m = trivial_module(table, FinAbGroup({n}));
    Cohomology big(m, 2, opt.bar_cap);
    out.h2_order = big.order();
    std::set<std::vector<int>> found;
    if (opt.all_abelian) {
        if (n > 64) throw PreconditionError("full abelian sweep needs |F| <= 64");
        for (auto& s : all_subgroups(*table)) {
            bool ab = true;
            for (int x : s)
                for (int y : s) ab = ab && table->mul(x, y) == table->mul(y, x);
            if (ab) found.insert(std::move(s));
        }
    } else {
        for (int x = 0; x < n; ++x)
            for (int y = x; y < n; ++y)
                if (table->mul(x, y) == table->mul(y, x)) {
                    auto s = generated_subgroup(*table, {x, y});
                    std::sort(s.begin(), s.end());
                    found.insert(std::move(s));
                }
    }
    // restriction to a larger subgroup already forces it on the smaller ones
    std::vector<std::vector<int>> subs(found.begin(), found.end());
    std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<std::vector<int>> kept;
    for (const auto& s : subs) {
        bool inside = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
            return std::includes(k.begin(), k.end(), s.begin(), s.end());
        });
        if (!inside) kept.push_back(s);
    }
    std::vector<AbHom> res;
    for (const auto& s : kept) {
        Embedded e = embed_subgroup(*table, s);
        Cohomology small(restrict_module(m, e), 2, opt.bar_cap);
        res.push_back(restriction_hom(big, small, e));
    }
    out.test_subgroups = kept.size();
    out.b0 = FinAbGroup(invariant_factors(common_kernel(big.group(), res).group));
    return out;
}

// ---------------------------------------------------------------- unramified Brauer

BrNr br_nr(const FinAbGroup& m, const AbHom& phi) {
    FinAbGroup mm = tensor(m, m);
    if (!(phi.source == mm)) throw PreconditionError("br_nr: phi must be defined on M (x) M");
    BrNr out;
    out.kernel = kernel(phi);
    auto elems = enumerate(m, Int{1} << 8);
    std::set<AbElement> pure;
    for (const auto& x : elems)
        for (const auto& y : elems) {
            AbElement t = tensor_elem(m, m, x, y);
            if (!phi.target.is_zero(phi.apply(t))) continue;
            ++out.pure_pairs;
            if (!mm.is_zero(t)) pure.insert(std::move(t));
        }
    std::vector<AbElement> gens(pure.begin(), pure.end());
    out.pure = subgroup_generated(mm, gens);
    out.quotient = quotient_in(out.kernel, gens);
    PreimageSolver in_pure(out.pure.inclusion);
    out.kernel_equals_pure = true;
    for (const auto& t : enumerate(mm, Int{1} << 16)) {
        bool k = phi.target.is_zero(phi.apply(t));
        if (k != in_pure.in_image(t)) {
            out.kernel_equals_pure = false;
            break;
        }
    }
    return out;
}

BrNr br_nr_bk(const BKDatum& d) { return br_nr(d.shapiro.M.ab, d.F.phi()); }

std::optional<NonBkExample> find_non_bk_example(const FinAbGroup& m) {
    FinAbGroup mm = tensor(m, m);
    GroupPtr one = cyclic_group(1);
    for (const auto& v : enumerate(mm, Int{1} << 12)) {
        if (mm.is_zero(v)) continue;
        std::vector<AbElement> gens{v};
        Quotient q = quotient_by(mm, gens);
        if (!is_nondegenerate(m, q.projection)) continue;
        BrNr r = br_nr(m, q.projection);
        if (r.quotient.cardinality() == 1) continue;
        CrossedProduct f = CrossedProduct::make(trivial_module(one, m), trivial_module(one, q.group), q.projection);
        LambdaData ld = lambda_map(f.black_box(Int{1} << 20));
        if (!ld.center_is_derived) continue;
        FinAbGroup b0 = b0_closed_form(ld);
        if (b0.cardinality() == 1) continue;
        return NonBkExample{m, v, std::move(q), std::move(r), true, std::move(f), std::move(b0)};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- cyclic kernels

ShaReport sha_cyclic(const GModule& m, int r, Int bound) {
    ShaReport out;
    out.degree = r;
    const FiniteGroup& g = *m.group;
    Cohomology big(m, r, bound);
    out.h_order = big.order();
    std::vector<Embedded> embeds;
    std::vector<Cohomology> smalls;
    std::vector<AbHom> res;
    for (const auto& c : cyclic_subgroups(g)) {
        int gen = g.id();
        for (int x : c)
            if (g.element_order(x) == static_cast<int>(c.size())) gen = x;
        Embedded e = embed_subgroup(g, c);
        Cohomology small(restrict_module(m, e), r, bound);
        out.cyclic.push_back({gen, static_cast<int>(c.size()), small.order()});
        res.push_back(restriction_hom(big, small, e));
        embeds.push_back(std::move(e));
        smalls.push_back(std::move(small));
    }
    Subgroup k = common_kernel(big.group(), res);
    out.kernel = FinAbGroup(invariant_factors(k.group));
    for (std::size_t i = 0; i < k.group.rank(); ++i) {
        AbElement cls = k.inclusion.apply(k.group.basis(i));
        if (!big.group().is_zero(cls)) out.kernel_classes.push_back(std::move(cls));
    }
    out.reverified = true;
    for (const auto& cls : out.kernel_classes) {
        Cochain rep = big.representative(cls);
        for (std::size_t i = 0; i < embeds.size(); ++i)
            out.reverified = out.reverified && smalls[i].is_coboundary(restrict_cochain(rep, g.order(), embeds[i]));
    }
    return out;
}

std::optional<ShaExample> find_sha_example(Int bound) {
    GroupPtr v4 = standard_group("C2xC2");
    int a = -1, b = -1;
    for (int x = 0; x < v4->order(); ++x) {
        if (x == v4->id()) continue;
        if (a < 0) a = x;
        else if (b < 0) b = x;
    }
    for (Int n : {2, 4, 8}) {
        std::vector<Int> involutions;
        for (Int u = 1; u < n; ++u)
            if (gcd(u, n) == 1 && mulmod(u, u, n) == 1 % n) involutions.push_back(u);
        for (Int ua : involutions)
            for (Int ub : involutions) {
                std::vector<Matrix> act(v4->order());
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        int x = v4->mul(v4->pow(a, i), v4->pow(b, j));
                        act[x] = Matrix{{mod((i ? ua : 1) * (j ? ub : 1), n)}};
                    }
                GModule m = GModule::make(v4, FinAbGroup({n}), act);
                ShaReport r = sha_cyclic(m, 1, bound);
                if (r.kernel.cardinality() > 1)
                    return ShaExample{"C2xC2 acting on Z/" + std::to_string(n) + " through the units " +
                                          std::to_string(ua) + " and " + std::to_string(ub),
                                      std::move(m), std::move(r)};
            }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- characters

std::vector<AbElement> characters(const FinAbGroup& g, Int n) {
    FinAbGroup coeffs;
    for (Int o : g.orders) {
        if (n % o != 0) throw PreconditionError("characters: exponent of G must divide n");
        coeffs.orders.push_back(o);
    }
    std::vector<AbElement> out;
    for (auto c : enumerate(coeffs)) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] *= n / g.orders[i];
        out.push_back(std::move(c));
    }
    return out;
}

Int character_value(const FinAbGroup& g, Int n, const AbElement& chi, const AbElement& x) {
    Int v = 0;
    for (std::size_t i = 0; i < g.rank(); ++i) v = mod(v + mulmod(chi[i], x[i], n), n);
    return v;
}

bool span_contains(const FinAbGroup& g, Int n, const std::vector<AbElement>& family, const AbElement& a) {
    FinAbGroup values(std::vector<Int>(g.rank(), n));
    if (g.rank() == 0) return true;
    Subgroup span = subgroup_generated(values, family);
    return PreimageSolver(span.inclusion).in_image(values.reduce(a));
}

bool cyclic_span_detect(const FinAbGroup& g, Int n, const std::vector<AbElement>& family, const AbElement& a,
                        AbElement* witness) {
    for (const auto& x : enumerate(g)) {
        // restrictions to <x> are determined by the value at x
        Int d = n;
        for (const auto& chi : family) d = gcd(d, character_value(g, n, chi, x));
        if (character_value(g, n, a, x) % d != 0) {
            if (witness) *witness = x;
            return false;
        }
    }
    return true;
}

SupersolvableProbe not_supersolvable_probe(const GModule& m) {
    return {is_simple(m), is_cyclic_group(m.ab), m.ab.cardinality()};
}

GModule norm_quotient_module() {
    GModule reg = induced_module(cyclic_group(3), {0}, FinAbGroup({2}));
    std::vector<AbElement> norm{AbElement(reg.rank(), 1)};
    return quotient_module(reg, quotient_by(reg.ab, norm));
}

}  // namespace bkcoh
