#include <random>

#include "bkcoh/bkgroup.hpp"
#include "doctest.h"

using namespace bkcoh;

namespace {

BKDatum bk(Int a, int g) { return build_bk(cyclic_group(g), {0}, FinAbGroup({a})); }

std::vector<int> identity_map(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

CPElement random_element(const CrossedProduct& f, std::mt19937_64& rng) {
    return f.element(static_cast<Int>(rng() % static_cast<std::uint64_t>(f.order())));
}

// Z/2 with trivial action over the trivial group and phi = id: the group is D8
CrossedProduct dihedral_model() {
    auto one = cyclic_group(1);
    GModule m = trivial_module(one, FinAbGroup({2}));
    return CrossedProduct::make(m, m, identity_hom(FinAbGroup({2})));
}

}  // namespace

TEST_CASE("crossed product group law") {
    std::mt19937_64 rng(17);
    for (auto [a, g] : std::vector<std::pair<Int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        BKDatum d = bk(a, g);
        const auto& F = d.F;
        CHECK(bk_invariant_failures(d).empty());
        CHECK(F.order() == F.Z().ab.cardinality() * F.pair().ab.cardinality());
        for (int t = 0; t < 200; ++t) {
            CPElement x = random_element(F, rng), y = random_element(F, rng), z = random_element(F, rng);
            CHECK(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
            CHECK(F.mul(x, F.inv(x)) == F.identity());
            CHECK(F.mul(F.inv(x), x) == F.identity());
            CHECK(F.commutator(x, y) == F.commutator_closed(x, y));
            CHECK(F.conjugate(x, y) == F.conjugate_closed(x, y));
            CHECK(F.element(F.index(x)) == x);
            // the action is by automorphisms
            for (int s = 0; s < g; ++s) CHECK(F.act(s, F.mul(x, y)) == F.mul(F.act(s, x), F.act(s, y)));
        }
        BlackBoxGroup b = F.black_box();
        for (int t = 0; t < 200; ++t) {
            CPElement x = random_element(F, rng), y = random_element(F, rng);
            CHECK(b.mul(static_cast<int>(F.index(x)), static_cast<int>(F.index(y))) == F.index(F.mul(x, y)));
            CHECK(b.inv(static_cast<int>(F.index(x))) == F.index(F.inv(x)));
        }
        CHECK(closure(b, b.generators).size() == static_cast<std::size_t>(F.order()));
    }
}

TEST_CASE("orders of the BK crossed products") {
    // |M (x) M| / |A (x) A| central elements times |M|^2
    CHECK(bk(2, 2).F.order() == 128);
    CHECK(bk(2, 3).F.order() == 16384);
    CHECK(bk(3, 2).F.order() == 2187);
    CHECK(bk(2, 1).F.order() == 4);
}

TEST_CASE("centre and derived subgroup") {
    for (auto [a, g] : std::vector<std::pair<Int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        BKDatum d = bk(a, g);
        CHECK(is_nondegenerate(d.F.M().ab, d.F.phi()));
        CenterDerived cd = center_and_derived(d.F);
        CHECK(cd.center_is_z);
        CHECK(cd.derived_is_z);
        CHECK(cd.radical_center_is_z);
    }
    // trivial g: Z = 0 and F = (Z/2)^2 is abelian, so the centre is all of F
    CenterDerived triv = center_and_derived(bk(2, 1).F);
    CHECK(triv.z_order == 1);
    CHECK(triv.center.size() == 4);
    CHECK_FALSE(triv.center_is_z);
    CHECK(triv.derived_is_z);
    CHECK_FALSE(is_nondegenerate(FinAbGroup({2}), zero_hom(FinAbGroup({2}), FinAbGroup({2}))));
}

TEST_CASE("crossed product validation") {
    auto c2 = cyclic_group(2);
    GModule m = induced_module(c2, {0}, FinAbGroup({2}));
    GModule z = trivial_module(c2, FinAbGroup({2}));
    // projection onto a single coordinate of M (x) M is not equivariant
    GModule mm = tensor_module(m, m);
    Matrix row(1, std::vector<Int>(mm.rank(), 0));
    row[0][0] = 1;
    CHECK_THROWS_AS(CrossedProduct::make(m, z, AbHom(mm.ab, z.ab, row)), PreconditionError);
}

TEST_CASE("twisted cocycles: formula and definition agree exhaustively") {
    BKDatum d = bk(2, 2);
    auto t = make_twist_model(d.F, cyclic_group(2), identity_map(2));
    auto twists = t.h1_pair->cocycles();
    FinAbGroup zc = cochain_group(t.Z, 1), ac = cochain_group(t.pair, 1);
    std::size_t found = 0;
    for (const auto& tw : twists)
        for (const auto& av : enumerate(ac)) {
            Cochain a = unflatten(t.pair, 1, av);
            for (const auto& zv : enumerate(zc)) {
                Cochain z = unflatten(t.Z, 1, zv);
                bool def = twisted_cocycle_definitional(t, tw, z, a);
                CHECK(def == twisted_cocycle_formula(t, tw, z, a));
                found += def;
            }
        }
    CHECK(found > 0);
    std::mt19937_64 rng(3);
    for (const auto& tw : twists)
        for (int k = 0; k < 50; ++k) {
            CPElement f = random_element(d.F, rng);
            for (int s = 0; s < 2; ++s) CHECK(twisted_act(t, tw, s, f) == twisted_act_closed(t, tw, s, f));
        }
}

TEST_CASE("connecting map: closed form against the definition") {
    for (auto [a, g] : std::vector<std::pair<Int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        BKDatum d = bk(a, g);
        auto t = make_twist_model(d.F, cyclic_group(g), identity_map(g));
        auto cocycles = t.h1_pair->cocycles();
        for (const auto& tw : cocycles) {
            DeltaComparison c = compare_delta_paths(t, tw, cocycles);
            INFO(c.witness);
            CHECK(c.cases == cocycles.size());
            CHECK(c.classes_agree);
            CHECK(c.cochains_agree);
        }
    }
    // over C2 x C2 through the projection onto g = C2
    BKDatum d = bk(2, 2);
    auto v4 = standard_group("C2xC2");
    // kernel {1, k} for the first non-identity k
    int k = v4->id() == 0 ? 1 : 0;
    std::vector<int> pi(4);
    for (int x = 0; x < 4; ++x) pi[x] = (x == v4->id() || x == k) ? 0 : 1;
    auto t = make_twist_model(d.F, v4, pi);
    CHECK(t.h1_pair->order() > 1);
    auto cocycles = t.h1_pair->cocycles();
    for (const auto& tw : {zero_cochain(t.pair, 1), cocycles.back()}) {
        DeltaComparison c = compare_delta_paths(t, tw, cocycles);
        INFO(c.witness);
        CHECK(c.classes_agree);
        CHECK(c.cochains_agree);
    }
}

TEST_CASE("mutations break the cochain-level identity") {
    {
        BKDatum d = bk(2, 3);
        auto t = make_twist_model(d.F, cyclic_group(3), identity_map(3));
        auto cocycles = t.h1_pair->cocycles();
        ScopedMutation m(Mutation::phi_transpose);
        DeltaComparison c = compare_delta_paths(t, zero_cochain(t.pair, 1), cocycles);
        CHECK_FALSE(c.cochains_agree);
        CHECK_FALSE(c.witness.empty());
    }
    {
        BKDatum d = bk(3, 2);
        auto t = make_twist_model(d.F, cyclic_group(2), identity_map(2));
        auto cocycles = t.h1_pair->cocycles();
        ScopedMutation m(Mutation::cup_sign);
        DeltaComparison c = compare_delta_paths(t, zero_cochain(t.pair, 1), cocycles);
        CHECK_FALSE(c.cochains_agree);
        CHECK_FALSE(c.witness.empty());
    }
}

TEST_CASE("cohomologous-witness lemma") {
    std::mt19937_64 rng(23);
    for (auto [a, g] : std::vector<std::pair<Int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        BKDatum d = bk(a, g);
        auto t = make_twist_model(d.F, cyclic_group(g), identity_map(g));
        auto cocycles = t.h1_pair->cocycles();
        auto zs = enumerate(t.Z.ab);
        auto as = enumerate(t.pair.ab);
        for (int k = 0; k < 25; ++k) {
            const Cochain& tw = cocycles[rng() % cocycles.size()];
            const Cochain& ac = cocycles[rng() % cocycles.size()];
            auto z = twisted_lift(t, tw, ac);
            REQUIRE(z.has_value());
            CHECK(twisted_cocycle_definitional(t, tw, *z, ac));
            Cochain z2, a2;
            AbElement alpha = as[rng() % as.size()];
            conjugate_twisted_cocycle(t, tw, *z, ac, zs[rng() % zs.size()], alpha, z2, a2);
            CHECK(twisted_cocycle_definitional(t, tw, z2, a2));
            WitnessCheck w = cohomologous_witness(t, tw, *z, ac, z2, a2, alpha);
            INFO(w.witness);
            CHECK(w.c_is_cocycle);
            CHECK(w.c_is_coboundary);
            CHECK(w.conjugation_verified);
            REQUIRE(w.connecting_identity.has_value());
            CHECK(*w.connecting_identity);
        }
    }
}

TEST_CASE("witness lemma on a pair that is not conjugate") {
    // alter z by a Z-cocycle whose class is nonzero: c is then not a coboundary
    BKDatum d = bk(2, 2);
    auto t = make_twist_model(d.F, cyclic_group(2), identity_map(2));
    REQUIRE(t.h1_z->order() > 1);
    Cochain tw = zero_cochain(t.pair, 1), a = zero_cochain(t.pair, 1);
    auto z = twisted_lift(t, tw, a);
    REQUIRE(z.has_value());
    Cochain bump = t.h1_z->representative(t.h1_z->group().basis(0));
    Cochain z2 = cochain_add(t.Z.ab, *z, bump);
    CHECK(twisted_cocycle_definitional(t, tw, z2, a));
    WitnessCheck w = cohomologous_witness(t, tw, *z, a, z2, a, t.pair.ab.zero());
    CHECK(w.c_is_cocycle);
    CHECK_FALSE(w.c_is_coboundary);
    REQUIRE(w.connecting_identity.has_value());
    CHECK(*w.connecting_identity);
}

TEST_CASE("q-power identity and relevable classes") {
    for (auto [a, g] : std::vector<std::pair<Int, int>>{{2, 2}, {2, 3}}) {
        BKDatum d = bk(a, g);
        for (int q : {3, 5, 7})
            for (int s = 0; s < g; ++s) {
                QRelevance r = q_relevance(d.F, s, q);
                INFO(r.witness);
                CHECK(r.power_identity);
                CHECK(r.conjugators_ok);
                CHECK(r.eigen_size > 0);
                CHECK(r.relevable_is_eigen);
                CHECK(r.generated);
            }
    }
    CHECK_THROWS_AS(q_relevance(bk(2, 2).F, 0, 4), PreconditionError);
}

TEST_CASE("nonabelian 2-cocycles and neutrality") {
    CrossedProduct f = dihedral_model();
    BlackBoxGroup b = f.black_box();
    CHECK(center(b).size() == 2);
    int order4 = 0;
    for (int x = 0; x < b.order; ++x) order4 += b.element_order(x) == 4;
    CHECK(order4 == 2);

    for (auto q : {cyclic_group(2), standard_group("C2xC2")}) {
        std::vector<int> pi(q->order(), 0);
        auto t = make_twist_model(f, q, pi);
        NonabTwoCocycle c = standard_cocycle(t, b);
        std::string why;
        CHECK(validate_nonab(b, c, &why));
        CHECK(is_neutral_bruteforce(b, c).verdict == Verdict::yes);
        Cohomology h2(t.Z, 2);
        int neutral = 0;
        for (const auto& cls : enumerate(h2.group())) {
            Cochain beta = h2.representative(cls);
            NonabTwoCocycle moved = act_h2z(t, beta, c);
            CHECK(validate_nonab(b, moved, &why));
            Neutrality n = is_neutral_bruteforce(b, moved);
            REQUIRE(n.verdict != Verdict::undecided);
            bool via_delta = neutrality_via_delta(t, beta).has_value();
            CHECK((n.verdict == Verdict::yes) == via_delta);
            neutral += via_delta;
        }
        if (q->order() == 2) CHECK(neutral == h2.order());
        else CHECK(neutral < h2.order());
    }
}

TEST_CASE("nonabelian cocycle validation and search budget") {
    CrossedProduct f = dihedral_model();
    BlackBoxGroup b = f.black_box();
    auto q = cyclic_group(2);
    auto t = make_twist_model(f, q, {0, 0});
    NonabTwoCocycle c = standard_cocycle(t, b);
    // u must satisfy rho_st = int(u) rho_s rho_t; a noncentral u breaks it
    int noncentral = -1;
    ElementSet z = center(b);
    for (int x = 0; x < b.order && noncentral < 0; ++x)
        if (!z.contains(x)) noncentral = x;
    NonabTwoCocycle bad = c;
    bad.u[3] = noncentral;
    std::string why;
    CHECK_FALSE(validate_nonab(b, bad, &why));
    CHECK_FALSE(why.empty());
    CHECK(is_neutral_bruteforce(b, c, 8).verdict == Verdict::undecided);
    CHECK(to_string(Verdict::undecided) == "undecided");
}
