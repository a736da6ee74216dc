#include "bkcoh/bkgroup.hpp"

#include <memory>
#include <sstream>
#include <unordered_set>

namespace bkcoh {

namespace {

std::string show(const AbElement& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::string show(const CPElement& f) { return "[" + show(f.z) + " " + show(f.a) + "]"; }

Cochain degree0(const AbElement& v) { return Cochain{0, {v}}; }

}  // namespace

// ---------------------------------------------------------------- crossed product

CrossedProduct CrossedProduct::make(GModule m, GModule z, AbHom phi) {
    if (m.group != z.group) throw PreconditionError("crossed product: modules over different groups");
    CrossedProduct f;
    f.mm_ = tensor_module(m, m);
    f.pair_ = direct_sum_module(m, m);
    if (!(phi.source == f.mm_.ab) || !(phi.target == z.ab))
        throw PreconditionError("crossed product: phi must map M (x) M to Z");
    if (!is_equivariant(f.mm_, z, phi)) throw PreconditionError("crossed product: phi is not equivariant");
    f.m_ = std::move(m);
    f.z_ = std::move(z);
    f.phi_ = std::move(phi);
    return f;
}

Int CrossedProduct::order() const { return checked_mul(z_.ab.cardinality(), pair_.ab.cardinality()); }

AbElement CrossedProduct::x_part(const AbElement& a) const { return AbElement(a.begin(), a.begin() + m_.rank()); }

AbElement CrossedProduct::y_part(const AbElement& a) const { return AbElement(a.begin() + m_.rank(), a.end()); }

AbElement CrossedProduct::join(const AbElement& x, const AbElement& y) const {
    AbElement a = x;
    a.insert(a.end(), y.begin(), y.end());
    return pair_.ab.reduce(std::move(a));
}

AbElement CrossedProduct::phi_of(const AbElement& x, const AbElement& y) const {
    return phi_.apply(tensor_elem(m_.ab, m_.ab, x, y));
}

AbElement CrossedProduct::big_phi(const AbElement& a, const AbElement& b) const {
    if (current_mutation() == Mutation::phi_transpose) return phi_of(x_part(b), y_part(a));
    return phi_of(x_part(a), y_part(b));
}

CPElement CrossedProduct::mul(const CPElement& f, const CPElement& g) const {
    return {z_.ab.add(z_.ab.add(f.z, g.z), big_phi(f.a, g.a)), pair_.ab.add(f.a, g.a)};
}

CPElement CrossedProduct::inv(const CPElement& f) const {
    return {z_.ab.sub(big_phi(f.a, f.a), f.z), pair_.ab.neg(f.a)};
}

CPElement CrossedProduct::act(int s, const CPElement& f) const { return {z_.apply(s, f.z), pair_.apply(s, f.a)}; }

CPElement CrossedProduct::power(const CPElement& f, Int k) const {
    CPElement r = identity();
    for (Int i = 0; i < k; ++i) r = mul(r, f);
    return r;
}

CPElement CrossedProduct::commutator(const CPElement& f, const CPElement& g) const {
    return mul(mul(mul(f, g), inv(f)), inv(g));
}

CPElement CrossedProduct::conjugate(const CPElement& f, const CPElement& g) const { return mul(mul(f, g), inv(f)); }

CPElement CrossedProduct::commutator_closed(const CPElement& f, const CPElement& g) const {
    return central(z_.ab.sub(big_phi(f.a, g.a), big_phi(g.a, f.a)));
}

CPElement CrossedProduct::conjugate_closed(const CPElement& f, const CPElement& g) const {
    return {z_.ab.add(g.z, z_.ab.sub(big_phi(f.a, g.a), big_phi(g.a, f.a))), g.a};
}

Int CrossedProduct::index(const CPElement& f) const {
    return z_.ab.index_of(f.z) + z_.ab.cardinality() * pair_.ab.index_of(f.a);
}

CPElement CrossedProduct::element(Int idx) const {
    Int nz = z_.ab.cardinality();
    return {z_.ab.element_at(idx % nz), pair_.ab.element_at(idx / nz)};
}

BlackBoxGroup CrossedProduct::black_box(Int cap) const {
    Int n = order();
    if (n > cap) throw BoundError("crossed product of order " + std::to_string(n) + " exceeds the sweep cap");
    struct Tables {
        int nz = 1, na = 1;
        std::vector<int> zadd, aadd, zneg, aneg, phi;
    };
    auto t = std::make_shared<Tables>();
    t->nz = static_cast<int>(z_.ab.cardinality());
    t->na = static_cast<int>(pair_.ab.cardinality());
    auto zs = enumerate(z_.ab), as = enumerate(pair_.ab);
    t->zadd.resize(static_cast<std::size_t>(t->nz) * t->nz);
    for (int i = 0; i < t->nz; ++i) {
        t->zneg.push_back(static_cast<int>(z_.ab.index_of(z_.ab.neg(zs[i]))));
        for (int j = 0; j < t->nz; ++j)
            t->zadd[static_cast<std::size_t>(i) * t->nz + j] = static_cast<int>(z_.ab.index_of(z_.ab.add(zs[i], zs[j])));
    }
    t->aadd.resize(static_cast<std::size_t>(t->na) * t->na);
    t->phi.resize(static_cast<std::size_t>(t->na) * t->na);
    for (int i = 0; i < t->na; ++i) {
        t->aneg.push_back(static_cast<int>(pair_.ab.index_of(pair_.ab.neg(as[i]))));
        for (int j = 0; j < t->na; ++j) {
            std::size_t k = static_cast<std::size_t>(i) * t->na + j;
            t->aadd[k] = static_cast<int>(pair_.ab.index_of(pair_.ab.add(as[i], as[j])));
            t->phi[k] = static_cast<int>(z_.ab.index_of(big_phi(as[i], as[j])));
        }
    }
    BlackBoxGroup b;
    b.order = static_cast<int>(n);
    b.id = static_cast<int>(index(identity()));
    b.name = "crossed product of order " + std::to_string(n);
    b.mul = [t](int f, int g) {
        int fz = f % t->nz, fa = f / t->nz, gz = g % t->nz, ga = g / t->nz;
        std::size_t k = static_cast<std::size_t>(fa) * t->na + ga;
        int z = t->zadd[static_cast<std::size_t>(t->zadd[static_cast<std::size_t>(fz) * t->nz + gz]) * t->nz + t->phi[k]];
        return z + t->nz * t->aadd[k];
    };
    b.inv = [t](int f) {
        int fz = f % t->nz, fa = f / t->nz;
        int z = t->zadd[static_cast<std::size_t>(t->phi[static_cast<std::size_t>(fa) * t->na + fa]) * t->nz + t->zneg[fz]];
        return z + t->nz * t->aneg[fa];
    };
    for (std::size_t i = 0; i < pair_.ab.rank(); ++i) b.generators.push_back(static_cast<int>(index(lift(pair_.ab.basis(i)))));
    for (std::size_t i = 0; i < z_.ab.rank(); ++i) b.generators.push_back(static_cast<int>(index(central(z_.ab.basis(i)))));
    return b;
}

bool is_nondegenerate(const FinAbGroup& m, const AbHom& phi) {
    std::size_t r = m.rank();
    FinAbGroup target;
    for (std::size_t j = 0; j < r; ++j)
        target.orders.insert(target.orders.end(), phi.target.orders.begin(), phi.target.orders.end());
    auto side = [&](bool left) {
        std::vector<AbElement> imgs;
        for (std::size_t i = 0; i < r; ++i) {
            AbElement col;
            for (std::size_t j = 0; j < r; ++j) {
                AbElement v = left ? phi.apply(tensor_elem(m, m, m.basis(i), m.basis(j)))
                                   : phi.apply(tensor_elem(m, m, m.basis(j), m.basis(i)));
                col.insert(col.end(), v.begin(), v.end());
            }
            imgs.push_back(std::move(col));
        }
        return is_injective(hom_from_images(m, target, imgs));
    };
    return side(true) && side(false);
}

BKDatum build_bk(GroupPtr g, const std::vector<int>& normal_subgroup, const FinAbGroup& a) {
    ShapiroSetup s = make_shapiro(std::move(g), normal_subgroup, a);
    Quotient q = cokernel(s.j);
    GModule z = quotient_module(s.MM, q);
    CrossedProduct f = CrossedProduct::make(s.M, z, q.projection);
    return BKDatum{a, std::move(s), std::move(q), std::move(f)};
}

std::vector<std::string> bk_invariant_failures(const BKDatum& d) {
    std::vector<std::string> out;
    const auto& F = d.F;
    if (!is_injective(d.shapiro.j)) out.push_back("j is not injective");
    if (!is_surjective(F.phi())) out.push_back("phi is not surjective");
    if (!compose(F.phi(), d.shapiro.j).is_zero()) out.push_back("phi o j != 0");
    FinAbGroup aa = tensor(d.A, d.A);
    if (checked_mul(F.Z().ab.cardinality(), aa.cardinality()) != F.MM().ab.cardinality())
        out.push_back("|Z| |A(x)A| != |M(x)M|");
    if (F.pair().ab.cardinality() <= 64) {
        auto as = enumerate(F.pair().ab);
        AbElement zero = F.pair().ab.zero();
        for (const auto& a : as) {
            if (!F.Z().ab.is_zero(F.big_phi(a, zero)) || !F.Z().ab.is_zero(F.big_phi(zero, a))) {
                out.push_back("Phi is not normalized at " + show(a));
                break;
            }
            for (const auto& b : as)
                if (F.big_phi(a, b) != F.phi_of(F.x_part(a), F.y_part(b))) {
                    out.push_back("Phi(a,b) != phi(x (x) y') at " + show(a) + " " + show(b));
                    return out;
                }
        }
    }
    return out;
}

CenterDerived center_and_derived(const CrossedProduct& f) {
    CenterDerived out;
    BlackBoxGroup bb = f.black_box();
    out.center = center(bb);
    out.derived = derived_subgroup(bb);
    out.z_order = f.Z().ab.cardinality();
    // the copy of Z is {(z, 0)}: indices below |Z|
    auto is_z = [&](const ElementSet& s) {
        if (static_cast<Int>(s.size()) != out.z_order) return false;
        for (int x : s.members)
            if (x >= out.z_order) return false;
        return true;
    };
    out.center_is_z = is_z(out.center);
    out.derived_is_z = is_z(out.derived);
    // a in the radical of Phi(a,b) - Phi(b,a)
    const auto& P = f.pair().ab;
    FinAbGroup target;
    for (std::size_t k = 0; k < P.rank(); ++k)
        target.orders.insert(target.orders.end(), f.Z().ab.orders.begin(), f.Z().ab.orders.end());
    std::vector<AbElement> imgs;
    for (std::size_t i = 0; i < P.rank(); ++i) {
        AbElement col;
        for (std::size_t k = 0; k < P.rank(); ++k) {
            AbElement v = f.Z().ab.sub(f.big_phi(P.basis(i), P.basis(k)), f.big_phi(P.basis(k), P.basis(i)));
            col.insert(col.end(), v.begin(), v.end());
        }
        imgs.push_back(std::move(col));
    }
    out.radical_center_is_z = P.rank() == 0 || is_injective(hom_from_images(P, target, imgs));
    return out;
}

// ---------------------------------------------------------------- twisted forms

TwistModel make_twist_model(const CrossedProduct& f, GroupPtr q, const std::vector<int>& pi, Int bound) {
    if (!is_homomorphism(*q, *f.group(), pi)) throw PreconditionError("twist model: pi is not a homomorphism");
    std::vector<char> hit(f.group()->order(), 0);
    for (int x : pi) hit[x] = 1;
    for (char c : hit)
        if (!c) throw PreconditionError("twist model: pi is not surjective");
    TwistModel t{f, q, pi, pullback_module(f.M(), q, pi), pullback_module(f.MM(), q, pi),
                 pullback_module(f.pair(), q, pi), pullback_module(f.Z(), q, pi), f.phi(),
                 tensor_pairing(f.M().ab, f.M().ab), {}, {}, {}, {}, {}};
    t.h1_pair = std::make_shared<Cohomology>(t.pair, 1, bound);
    t.h1_z = std::make_shared<Cohomology>(t.Z, 1, bound);
    t.h2_z = std::make_shared<Cohomology>(t.Z, 2, bound);
    if (is_surjective(t.phi)) {
        t.kernel_seq = short_exact_from_surjection(t.MM, t.Z, t.phi);
        t.h2_kernel = std::make_shared<Cohomology>(t.kernel_seq->a, 2, bound);
    }
    return t;
}

Cochain x_cochain(const TwistModel& t, const Cochain& a) {
    Cochain out{a.degree, {}};
    for (const auto& v : a.values) out.values.push_back(t.F.x_part(v));
    return out;
}

Cochain y_cochain(const TwistModel& t, const Cochain& a) {
    Cochain out{a.degree, {}};
    for (const auto& v : a.values) out.values.push_back(t.F.y_part(v));
    return out;
}

Cochain pair_cochain(const TwistModel& t, const Cochain& x, const Cochain& y) {
    Cochain out{x.degree, {}};
    for (std::size_t i = 0; i < x.values.size(); ++i) out.values.push_back(t.F.join(x.values[i], y.values[i]));
    return out;
}

Cochain pointwise_tensor(const TwistModel& t, const Cochain& u, const Cochain& v) {
    Cochain out{u.degree, {}};
    for (std::size_t i = 0; i < u.values.size(); ++i)
        out.values.push_back(tensor_elem(t.M.ab, t.M.ab, u.values[i], v.values[i]));
    return out;
}

CPElement twisted_act(const TwistModel& t, const Cochain& twist, int s, const CPElement& f) {
    CPElement w = t.F.lift(twist.values[s]);
    return t.F.mul(t.F.mul(w, t.F.act(t.pi[s], f)), t.F.inv(w));
}

CPElement twisted_act_closed(const TwistModel& t, const Cochain& twist, int s, const CPElement& f) {
    const auto& F = t.F;
    CPElement g = F.act(t.pi[s], f);
    const AbElement& w = twist.values[s];
    return {F.Z().ab.add(g.z, F.Z().ab.sub(F.big_phi(w, g.a), F.big_phi(g.a, w))), g.a};
}

Cochain twisted_obstruction(const TwistModel& t, const Cochain& twist, const Cochain& a) {
    Cochain x = x_cochain(t, a), y = y_cochain(t, a), tx = x_cochain(t, twist), ty = y_cochain(t, twist);
    const auto& mm = t.MM.ab;
    Cochain sum = cup(t.M, tx, t.M, y, t.tensor);
    sum = cochain_add(mm, sum, cup(t.M, x, t.M, ty, t.tensor));
    sum = cochain_add(mm, sum, cup(t.M, x, t.M, y, t.tensor));
    sum = cochain_add(mm, sum, differential(t.MM, pointwise_tensor(t, x, ty)));
    return push_forward(t.phi, sum);
}

bool twisted_cocycle_formula(const TwistModel& t, const Cochain& twist, const Cochain& z, const Cochain& a) {
    if (!is_cocycle(t.pair, a)) return false;
    Cochain lhs = cochain_add(t.Z.ab, differential(t.Z, z), twisted_obstruction(t, twist, a));
    for (const auto& v : lhs.values)
        if (!t.Z.ab.is_zero(v)) return false;
    return true;
}

bool twisted_cocycle_definitional(const TwistModel& t, const Cochain& twist, const Cochain& z, const Cochain& a) {
    int n = t.Q->order();
    for (int s = 0; s < n; ++s)
        for (int u = 0; u < n; ++u) {
            CPElement fs{z.values[s], a.values[s]}, fu{z.values[u], a.values[u]};
            int su = t.Q->mul(s, u);
            CPElement rhs = t.F.mul(fs, twisted_act(t, twist, s, fu));
            if (!(rhs == CPElement{z.values[su], a.values[su]})) return false;
        }
    return true;
}

Cochain delta_formula(const TwistModel& t, const Cochain& twist, const Cochain& a) {
    Cochain x = x_cochain(t, a), y = y_cochain(t, a), tx = x_cochain(t, twist), ty = y_cochain(t, twist);
    const auto& m = t.M.ab;
    Cochain full = cup(t.M, cochain_add(m, x, tx), t.M, cochain_add(m, y, ty), t.tensor);
    return push_forward(t.phi, cochain_sub(t.MM.ab, full, cup(t.M, tx, t.M, ty, t.tensor)));
}

Cochain delta_definitional(const TwistModel& t, const Cochain& twist, const Cochain& a) {
    int n = t.Q->order();
    Cochain out{2, {}};
    for (int s = 0; s < n; ++s)
        for (int u = 0; u < n; ++u) {
            CPElement g = t.F.mul(t.F.mul(t.F.lift(a.values[s]), twisted_act(t, twist, s, t.F.lift(a.values[u]))),
                                  t.F.inv(t.F.lift(a.values[t.Q->mul(s, u)])));
            if (!t.pair.ab.is_zero(g.a)) throw PreconditionError("delta: input is not a cocycle");
            out.values.push_back(g.z);
        }
    return out;
}

DeltaComparison compare_delta_paths(const TwistModel& t, const Cochain& twist, const std::vector<Cochain>& cocycles) {
    DeltaComparison out;
    int n = t.Q->order();
    for (std::size_t k = 0; k < cocycles.size(); ++k) {
        const Cochain& a = cocycles[k];
        Cochain fm = delta_formula(t, twist, a), df = delta_definitional(t, twist, a);
        ++out.cases;
        if (out.classes_agree && !t.h2_z->cohomologous(fm, df)) {
            out.classes_agree = false;
            if (out.witness.empty()) out.witness = "class mismatch for cocycle #" + std::to_string(k);
        }
        if (out.cochains_agree) {
            Cochain ob = twisted_obstruction(t, twist, a);
            for (std::size_t i = 0; i < ob.values.size(); ++i)
                if (ob.values[i] != df.values[i]) {
                    out.cochains_agree = false;
                    if (out.witness.empty())
                        out.witness = "cocycle #" + std::to_string(k) + " at (" + std::to_string(i / n) + "," +
                                      std::to_string(i % n) + "): definitional " + show(df.values[i]) + " vs " +
                                      show(ob.values[i]);
                    break;
                }
        }
    }
    return out;
}

std::optional<Cochain> twisted_lift(const TwistModel& t, const Cochain& twist, const Cochain& a) {
    if (!is_cocycle(t.pair, a)) return std::nullopt;
    Cochain target = cochain_scale(t.Z.ab, -1, twisted_obstruction(t, twist, a));
    return t.h2_z->coboundary_witness(target);
}

void conjugate_twisted_cocycle(const TwistModel& t, const Cochain& twist, const Cochain& z, const Cochain& a,
                               const AbElement& zeta, const AbElement& alpha, Cochain& z2, Cochain& a2) {
    CPElement g{zeta, alpha};
    CPElement gi = t.F.inv(g);
    z2 = Cochain{1, {}};
    a2 = Cochain{1, {}};
    for (int s = 0; s < t.Q->order(); ++s) {
        CPElement v = t.F.mul(t.F.mul(gi, CPElement{z.values[s], a.values[s]}), twisted_act(t, twist, s, g));
        z2.values.push_back(v.z);
        a2.values.push_back(v.a);
    }
}

namespace {

// tx u y + x u ty + x u y + d(x (x) ty) in M (x) M
Cochain obstruction_upstairs(const TwistModel& t, const Cochain& twist, const Cochain& a) {
    Cochain x = x_cochain(t, a), y = y_cochain(t, a), tx = x_cochain(t, twist), ty = y_cochain(t, twist);
    const auto& mm = t.MM.ab;
    Cochain sum = cup(t.M, tx, t.M, y, t.tensor);
    sum = cochain_add(mm, sum, cup(t.M, x, t.M, ty, t.tensor));
    sum = cochain_add(mm, sum, cup(t.M, x, t.M, y, t.tensor));
    return cochain_add(mm, sum, differential(t.MM, pointwise_tensor(t, x, ty)));
}

// lambda with d(eps) + obstruction = j_* lambda, where phi_* eps = z
std::optional<Cochain> kernel_class(const TwistModel& t, const Cochain& twist, const Cochain& z, const Cochain& a) {
    PreimageSolver lift(t.phi), pull(t.kernel_seq->i);
    Cochain eps{1, {}};
    for (const auto& v : z.values) {
        AbElement u;
        if (!lift.solve(v, u)) return std::nullopt;
        eps.values.push_back(u);
    }
    Cochain big = cochain_add(t.MM.ab, differential(t.MM, eps), obstruction_upstairs(t, twist, a));
    Cochain lam{2, {}};
    for (const auto& v : big.values) {
        AbElement u;
        if (!pull.solve(v, u)) return std::nullopt;
        lam.values.push_back(u);
    }
    return lam;
}

}  // namespace

WitnessCheck cohomologous_witness(const TwistModel& t, const Cochain& twist, const Cochain& z, const Cochain& a,
                                  const Cochain& z2, const Cochain& a2, const AbElement& alpha) {
    WitnessCheck out;
    const auto& F = t.F;
    const auto& m = t.M.ab;
    Cochain diff = cochain_sub(t.pair.ab, a2, a);
    if (diff != differential(t.pair, degree0(alpha))) throw PreconditionError("witness: a' - a != d(alpha)");
    Cochain x = x_cochain(t, a), y2 = y_cochain(t, a2), tx = x_cochain(t, twist), ty = y_cochain(t, twist);
    Cochain xi = degree0(F.x_part(alpha)), eta = degree0(F.y_part(alpha));
    const auto& mm = t.MM.ab;
    Cochain sum = cochain_scale(mm, -1, cup(t.M, cochain_add(m, x, tx), t.M, eta, t.tensor));
    sum = cochain_add(mm, sum, cup(t.M, xi, t.M, cochain_add(m, y2, ty), t.tensor));
    sum = cochain_add(mm, sum, pointwise_tensor(t, differential(t.M, xi), ty));
    out.c = cochain_add(t.Z.ab, cochain_sub(t.Z.ab, z2, z), push_forward(t.phi, sum));
    out.c_is_cocycle = is_cocycle(t.Z, out.c);
    if (!out.c_is_cocycle) {
        out.witness = "c is not a cocycle";
        return out;
    }
    out.c_is_coboundary = t.h1_z->is_coboundary(out.c);
    if (out.c_is_coboundary) {
        out.zeta = t.h1_z->coboundary_witness(out.c);
        AbElement zeta = out.zeta->values.at(0);
        Cochain zz, aa;
        conjugate_twisted_cocycle(t, twist, z, a, zeta, alpha, zz, aa);
        out.conjugation_verified = zz == z2 && aa == a2;
        if (!out.conjugation_verified) {
            for (int s = 0; s < t.Q->order(); ++s)
                if (zz.values[s] != z2.values[s] || aa.values[s] != a2.values[s]) {
                    out.witness = "conjugate differs at s=" + std::to_string(s) + ": " +
                                  show(CPElement{zz.values[s], aa.values[s]}) + " vs " +
                                  show(CPElement{z2.values[s], a2.values[s]});
                    break;
                }
        }
    }
    if (t.kernel_seq) {
        auto lam = kernel_class(t, twist, z, a), lam2 = kernel_class(t, twist, z2, a2);
        if (!lam || !lam2) {
            out.connecting_identity = false;
            if (out.witness.empty()) out.witness = "obstruction does not land in Ker phi";
        } else {
            Cochain dc = connecting_map(*t.kernel_seq, out.c);
            bool ok = t.h2_kernel->cohomologous(dc, cochain_sub(t.kernel_seq->a.ab, *lam2, *lam));
            out.connecting_identity = ok;
            if (!ok && out.witness.empty()) out.witness = "delta[c] != [lambda' - lambda]";
        }
    }
    return out;
}

// ---------------------------------------------------------------- q-relevability

QRelevance q_relevance(const CrossedProduct& f, int sigma, int q) {
    if (q <= 0 || q % 2 == 0) throw PreconditionError("q_relevance: q must be odd and positive");
    QRelevance out;
    out.q = q;
    out.sigma = sigma;
    const auto& P = f.pair().ab;
    const auto& Zg = f.Z().ab;
    auto as = enumerate(P, Int{1} << 12);
    auto zs = enumerate(Zg, Int{1} << 12);
    Int half = static_cast<Int>(q) * (q - 1) / 2, up = (static_cast<Int>(q) + 1) / 2;
    std::vector<AbElement> relevable, eigen;
    for (const auto& a : as) {
        CPElement b = f.lift(a);
        CPElement pw = f.power(b, q);
        CPElement closed{Zg.scale(half, f.big_phi(a, a)), P.scale(q, a)};
        if (!(pw == closed)) {
            if (out.power_identity) out.witness = "power identity fails at a=" + show(a);
            out.power_identity = false;
        }
        AbElement sa = f.pair().apply(sigma, a);
        bool in_eigen = sa == P.scale(q, a);
        if (in_eigen) {
            eigen.push_back(a);
            AbElement conj_a = f.join(f.M().ab.scale(up, f.x_part(a)), f.y_part(a));
            CPElement lhs = f.conjugate(f.lift(conj_a), f.lift(P.scale(q, a)));
            if (!(lhs == pw)) {
                if (out.conjugators_ok && out.witness.empty()) out.witness = "conjugator fails at a=" + show(a);
                out.conjugators_ok = false;
            }
        }
        // search: a lift b = (z, a) with b^q conjugate to s(b)
        if (pw.a != sa) continue;
        std::unordered_set<Int> shifts;
        for (const auto& c : as) shifts.insert(Zg.index_of(Zg.sub(f.conjugate(f.lift(c), pw).z, pw.z)));
        bool found = false;
        for (const auto& z : zs) {
            CPElement lb{z, a};
            CPElement bq = f.power(lb, q);
            CPElement target = f.act(sigma, lb);
            if (shifts.count(Zg.index_of(Zg.sub(target.z, bq.z)))) {
                found = true;
                break;
            }
        }
        if (found) relevable.push_back(a);
    }
    out.eigen_size = static_cast<Int>(eigen.size());
    out.relevable = static_cast<Int>(relevable.size());
    out.relevable_is_eigen = relevable == eigen;
    out.generated = subgroup_generated(P, relevable).group.cardinality() == out.eigen_size;
    if (!out.relevable_is_eigen && out.witness.empty()) out.witness = "relevable set differs from the eigen-subgroup";
    return out;
}

// ---------------------------------------------------------------- nonabelian 2-cocycles

NonabTwoCocycle standard_cocycle(const TwistModel& t, const BlackBoxGroup& f) {
    NonabTwoCocycle c;
    c.Q = t.Q;
    int n = t.Q->order();
    for (int s = 0; s < n; ++s) {
        std::vector<int> perm(f.order);
        for (int x = 0; x < f.order; ++x) perm[x] = static_cast<int>(t.F.index(t.F.act(t.pi[s], t.F.element(x))));
        c.rho.push_back(std::move(perm));
    }
    c.u.assign(static_cast<std::size_t>(n) * n, f.id);
    return c;
}

bool validate_nonab(const BlackBoxGroup& f, const NonabTwoCocycle& c, std::string* witness) {
    int n = c.Q->order();
    auto fail = [&](const std::string& w) {
        if (witness) *witness = w;
        return false;
    };
    for (int s = 0; s < n; ++s) {
        std::vector<char> seen(f.order, 0);
        for (int x = 0; x < f.order; ++x) seen[c.rho[s][x]] = 1;
        for (char v : seen)
            if (!v) return fail("rho_" + std::to_string(s) + " is not bijective");
        for (int x = 0; x < f.order; ++x)
            for (int g : f.generators)
                if (c.rho[s][f.mul(x, g)] != f.mul(c.rho[s][x], c.rho[s][g]))
                    return fail("rho_" + std::to_string(s) + " is not a homomorphism");
    }
    auto u = [&](int s, int t) { return c.u[static_cast<std::size_t>(s) * n + t]; };
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            int st = c.Q->mul(s, t);
            int w = u(s, t), wi = f.inv(w);
            for (int x = 0; x < f.order; ++x)
                if (c.rho[st][x] != f.mul(f.mul(w, c.rho[s][c.rho[t][x]]), wi))
                    return fail("rho_st != int(u) rho_s rho_t at s=" + std::to_string(s) + " t=" + std::to_string(t));
            for (int v = 0; v < n; ++v) {
                int lhs = f.mul(u(s, c.Q->mul(t, v)), c.rho[s][u(t, v)]);
                int rhs = f.mul(u(st, v), u(s, t));
                if (lhs != rhs)
                    return fail("u fails the cocycle identity at (" + std::to_string(s) + "," + std::to_string(t) + "," +
                                std::to_string(v) + ")");
            }
        }
    return true;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        default: return "undecided";
    }
}

Neutrality is_neutral_bruteforce(const BlackBoxGroup& f, const NonabTwoCocycle& c, std::size_t budget) {
    Neutrality out;
    int n = c.Q->order();
    double total = 1;
    for (int s = 0; s < n; ++s) total *= f.order;
    if (total > static_cast<double>(budget)) return out;  // undecided
    std::size_t count = static_cast<std::size_t>(total);
    std::vector<int> cand(n, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t r = idx;
        for (int s = n - 1; s >= 0; --s) {
            cand[s] = static_cast<int>(r % f.order);
            r /= f.order;
        }
        ++out.searched;
        bool ok = true;
        for (int s = 0; s < n && ok; ++s)
            for (int t = 0; t < n && ok; ++t) {
                int st = c.Q->mul(s, t);
                int v = f.mul(f.mul(cand[st], c.u[static_cast<std::size_t>(s) * n + t]),
                              f.mul(f.inv(c.rho[s][cand[t]]), f.inv(cand[s])));
                ok = v == f.id;
            }
        if (ok) {
            out.verdict = Verdict::yes;
            out.conjugator = cand;
            return out;
        }
    }
    out.verdict = Verdict::no;
    return out;
}

NonabTwoCocycle act_h2z(const TwistModel& t, const Cochain& beta, const NonabTwoCocycle& c) {
    NonabTwoCocycle out = c;
    for (std::size_t k = 0; k < c.u.size(); ++k) {
        CPElement b = t.F.central(beta.values[k]);
        out.u[k] = static_cast<int>(t.F.index(t.F.mul(b, t.F.element(c.u[k]))));
    }
    return out;
}

std::optional<Cochain> neutrality_via_delta(const TwistModel& t, const Cochain& beta) {
    Cochain zero = zero_cochain(t.pair, 1);
    for (const auto& cls : enumerate(t.h1_pair->group())) {
        Cochain alpha = t.h1_pair->representative(cls);
        if (t.h2_z->cohomologous(delta_definitional(t, zero, alpha), beta)) return alpha;
    }
    return std::nullopt;
}

}  // namespace bkcoh
