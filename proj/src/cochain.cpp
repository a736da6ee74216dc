#include "bkcoh/cochain.hpp"

namespace bkcoh {

namespace {
std::atomic<int> g_mutation{0};
std::atomic<Int> g_bound{4096};
}  // namespace

Mutation current_mutation() { return static_cast<Mutation>(g_mutation.load()); }

ScopedMutation::ScopedMutation(Mutation m) : prev_(current_mutation()) { g_mutation = static_cast<int>(m); }

ScopedMutation::~ScopedMutation() { g_mutation = static_cast<int>(prev_); }

Int default_bound() { return g_bound.load(); }

void set_default_bound(Int b) {
    if (b < 1) throw PreconditionError("bound must be positive");
    g_bound = b;
}

std::size_t tuple_count(int n, int r) {
    std::size_t c = 1;
    for (int i = 0; i < r; ++i) c *= static_cast<std::size_t>(n);
    return c;
}

std::vector<int> tuple_at(int n, int r, std::size_t idx) {
    std::vector<int> t(r);
    for (int i = r - 1; i >= 0; --i) {
        t[i] = static_cast<int>(idx % n);
        idx /= n;
    }
    return t;
}

std::size_t tuple_index(int n, const std::vector<int>& t) {
    std::size_t idx = 0;
    for (int x : t) idx = idx * n + x;
    return idx;
}

Cochain zero_cochain(const GModule& m, int r) {
    return {r, std::vector<AbElement>(tuple_count(m.group->order(), r), m.ab.zero())};
}

FinAbGroup cochain_group(const GModule& m, int r) {
    std::vector<Int> o;
    std::size_t t = tuple_count(m.group->order(), r);
    o.reserve(t * m.rank());
    for (std::size_t i = 0; i < t; ++i) o.insert(o.end(), m.ab.orders.begin(), m.ab.orders.end());
    return FinAbGroup(std::move(o));
}

AbElement flatten(const Cochain& c) {
    AbElement v;
    for (const auto& x : c.values) v.insert(v.end(), x.begin(), x.end());
    return v;
}

Cochain unflatten(const GModule& m, int r, const AbElement& v) {
    std::size_t k = m.rank(), t = tuple_count(m.group->order(), r);
    if (v.size() != k * t) throw PreconditionError("flat cochain has wrong length");
    Cochain c{r, {}};
    c.values.reserve(t);
    for (std::size_t i = 0; i < t; ++i) c.values.emplace_back(v.begin() + i * k, v.begin() + (i + 1) * k);
    return c;
}

Cochain cochain_add(const FinAbGroup& a, const Cochain& x, const Cochain& y) {
    Cochain r{x.degree, {}};
    for (std::size_t i = 0; i < x.values.size(); ++i) r.values.push_back(a.add(x.values[i], y.values[i]));
    return r;
}

Cochain cochain_sub(const FinAbGroup& a, const Cochain& x, const Cochain& y) {
    Cochain r{x.degree, {}};
    for (std::size_t i = 0; i < x.values.size(); ++i) r.values.push_back(a.sub(x.values[i], y.values[i]));
    return r;
}

Cochain cochain_scale(const FinAbGroup& a, Int k, const Cochain& x) {
    Cochain r{x.degree, {}};
    for (const auto& v : x.values) r.values.push_back(a.scale(k, v));
    return r;
}

Cochain push_forward(const AbHom& f, const Cochain& c) {
    Cochain r{c.degree, {}};
    r.values.reserve(c.values.size());
    for (const auto& v : c.values) r.values.push_back(f.apply(v));
    return r;
}

Cochain differential(const GModule& m, const Cochain& c) {
    int n = m.group->order(), r = c.degree;
    const auto& G = *m.group;
    Cochain d{r + 1, {}};
    std::size_t cnt = tuple_count(n, r + 1);
    d.values.reserve(cnt);
    for (std::size_t idx = 0; idx < cnt; ++idx) {
        auto t = tuple_at(n, r + 1, idx);
        std::vector<int> tail(t.begin() + 1, t.end());
        AbElement v = m.apply(t[0], c.values[tuple_index(n, tail)]);
        for (int i = 1; i <= r; ++i) {
            std::vector<int> s;
            for (int j = 0; j < i - 1; ++j) s.push_back(t[j]);
            s.push_back(G.mul(t[i - 1], t[i]));
            for (int j = i + 1; j <= r; ++j) s.push_back(t[j]);
            const auto& w = c.values[tuple_index(n, s)];
            v = (i % 2) ? m.ab.sub(v, w) : m.ab.add(v, w);
        }
        std::vector<int> head(t.begin(), t.end() - 1);
        const auto& w = c.values[tuple_index(n, head)];
        v = ((r + 1) % 2) ? m.ab.sub(v, w) : m.ab.add(v, w);
        d.values.push_back(std::move(v));
    }
    return d;
}

AbHom differential_hom(const GModule& m, int r, Int bound) {
    if (bound <= 0) bound = default_bound();
    int n = m.group->order();
    std::size_t k = m.rank();
    std::size_t rows_t = tuple_count(n, r + 1), cols_t = tuple_count(n, r);
    if (static_cast<Int>(rows_t * k) > bound)
        throw BoundError("cochain space |G|^(r+1)*rank = " + std::to_string(rows_t * k) +
                                " exceeds the bound " + std::to_string(bound));
    const auto& G = *m.group;
    Matrix mat = zero_matrix(rows_t * k, cols_t * k);
    for (std::size_t idx = 0; idx < rows_t; ++idx) {
        auto t = tuple_at(n, r + 1, idx);
        std::size_t row0 = idx * k;
        std::vector<int> tail(t.begin() + 1, t.end());
        std::size_t c0 = tuple_index(n, tail) * k;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) mat[row0 + i][c0 + j] += m.act[t[0]][i][j];
        for (int i = 1; i <= r; ++i) {
            std::vector<int> s;
            for (int j = 0; j < i - 1; ++j) s.push_back(t[j]);
            s.push_back(G.mul(t[i - 1], t[i]));
            for (int j = i + 1; j <= r; ++j) s.push_back(t[j]);
            std::size_t cs = tuple_index(n, s) * k;
            for (std::size_t q = 0; q < k; ++q) mat[row0 + q][cs + q] += (i % 2) ? -1 : 1;
        }
        std::vector<int> head(t.begin(), t.end() - 1);
        std::size_t ch = tuple_index(n, head) * k;
        for (std::size_t q = 0; q < k; ++q) mat[row0 + q][ch + q] += ((r + 1) % 2) ? -1 : 1;
    }
    return AbHom(cochain_group(m, r), cochain_group(m, r + 1), std::move(mat));
}

bool is_cocycle(const GModule& m, const Cochain& c) {
    for (const auto& v : differential(m, c).values)
        if (!m.ab.is_zero(v)) return false;
    return true;
}

Cochain restrict_cochain(const Cochain& c, int parent_order, const Embedded& sub) {
    int h = sub.group->order();
    Cochain r{c.degree, {}};
    std::size_t cnt = tuple_count(h, c.degree);
    for (std::size_t idx = 0; idx < cnt; ++idx) {
        auto t = tuple_at(h, c.degree, idx);
        for (auto& x : t) x = sub.members[x];
        r.values.push_back(c.values[tuple_index(parent_order, t)]);
    }
    return r;
}

Cochain conjugate_cochain(const FiniteGroup& g, const Embedded& sub, int s, const Cochain& c) {
    int h = sub.group->order();
    int sinv = g.inv(s);
    Cochain r{c.degree, {}};
    std::size_t cnt = tuple_count(h, c.degree);
    for (std::size_t idx = 0; idx < cnt; ++idx) {
        auto t = tuple_at(h, c.degree, idx);
        for (auto& x : t) {
            int y = sub.local_index[g.conj(sinv, sub.members[x])];
            if (y < 0) throw PreconditionError("conjugation leaves the subgroup");
            x = y;
        }
        r.values.push_back(c.values[tuple_index(h, t)]);
    }
    return r;
}

AbElement Pairing::apply(const AbElement& x, const AbElement& y) const {
    AbElement r = out.zero();
    std::size_t rr = right.rank();
    for (std::size_t i = 0; i < left.rank(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < rr; ++j) {
            if (y[j] == 0) continue;
            const auto& e = table[i * rr + j];
            for (std::size_t k = 0; k < r.size(); ++k)
                if (e[k] != 0) r[k] = mod(r[k] + mulmod(mulmod(mod(x[i], out.orders[k]), mod(y[j], out.orders[k]), out.orders[k]), e[k], out.orders[k]), out.orders[k]);
        }
    }
    return r;
}

Pairing tensor_pairing(const FinAbGroup& a, const FinAbGroup& b) {
    Pairing p{a, b, tensor(a, b), {}};
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j) p.table.push_back(p.out.basis(i * b.rank() + j));
    return p;
}

Cochain cup(const GModule& mx, const Cochain& x, const GModule& my, const Cochain& y, const Pairing& p) {
    if (mx.group != my.group) throw PreconditionError("cup of cochains over different groups");
    const auto& G = *mx.group;
    int n = G.order(), rp = x.degree, rq = y.degree;
    Cochain out{rp + rq, {}};
    std::size_t cnt = tuple_count(n, rp + rq), ny = tuple_count(n, rq);
    out.values.reserve(cnt);
    bool flip = current_mutation() == Mutation::cup_sign;
    for (std::size_t idx = 0; idx < cnt; ++idx) {
        std::size_t ix = idx / ny, iy = idx % ny;
        auto s = tuple_at(n, rp, ix);
        int prod = G.id();
        for (int g : s) prod = G.mul(prod, g);
        AbElement v = p.apply(x.values[ix], my.apply(prod, y.values[iy]));
        if (flip) v = p.out.neg(v);
        out.values.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------- Cohomology

Cohomology::Cohomology(GModule m, int r, Int bound) : m_(std::move(m)), r_(r) {
    if (r < 0) throw PreconditionError("negative degree");
    AbHom d = differential_hom(m_, r, bound);
    z_ = kernel(d);
    z_solver_.emplace(z_.inclusion);
    if (r == 0) {
        h_ = {z_.group, identity_hom(z_.group)};
    } else {
        AbHom dprev = differential_hom(m_, r - 1, bound);
        auto b = image(dprev);
        std::vector<AbElement> gens;
        for (std::size_t i = 0; i < b.group.rank(); ++i) {
            AbElement zc;
            if (!z_solver_->solve(b.inclusion.apply(b.group.basis(i)), zc))
                throw std::logic_error("coboundary outside the cocycles");
            gens.push_back(zc);
        }
        h_ = quotient_by(z_.group, gens);
        b_solver_.emplace(std::move(dprev));
    }
    h_lift_.emplace(h_.projection);
}

AbElement Cohomology::class_of(const Cochain& cocycle) const {
    if (cocycle.degree != r_) throw PreconditionError("cochain degree mismatch");
    AbElement zc;
    if (!z_solver_->solve(flatten(cocycle), zc)) throw PreconditionError("not a cocycle");
    return h_.projection.apply(zc);
}

Cochain Cohomology::representative(const AbElement& cls) const {
    AbElement zc;
    if (!h_lift_->solve(cls, zc)) throw std::logic_error("class lift failed");
    return unflatten(m_, r_, z_.inclusion.apply(zc));
}

bool Cohomology::is_coboundary(const Cochain& c) const { return h_.group.is_zero(class_of(c)); }

bool Cohomology::cohomologous(const Cochain& a, const Cochain& b) const {
    return is_coboundary(cochain_sub(m_.ab, a, b));
}

std::optional<Cochain> Cohomology::coboundary_witness(const Cochain& c) const {
    if (r_ == 0) {
        for (const auto& v : c.values)
            if (!m_.ab.is_zero(v)) return std::nullopt;
        return Cochain{-1, {}};
    }
    AbElement x;
    if (!b_solver_->solve(flatten(c), x)) return std::nullopt;
    return unflatten(m_, r_ - 1, x);
}

std::vector<Cochain> Cohomology::cocycles(Int cap) const {
    std::vector<Cochain> out;
    for (const auto& z : enumerate(z_.group, cap)) out.push_back(unflatten(m_, r_, z_.inclusion.apply(z)));
    return out;
}

AbHom restriction_hom(const Cohomology& big, const Cohomology& small, const Embedded& sub) {
    std::vector<AbElement> imgs;
    int n = big.module().group->order();
    for (std::size_t i = 0; i < big.group().rank(); ++i) {
        Cochain rep = big.representative(big.group().basis(i));
        imgs.push_back(small.class_of(restrict_cochain(rep, n, sub)));
    }
    return hom_from_images(big.group(), small.group(), imgs);
}

ShortExact short_exact_from_surjection(const GModule& b, const GModule& c, const AbHom& p) {
    if (!is_equivariant(b, c, p)) throw PreconditionError("map is not equivariant");
    if (!is_surjective(p)) throw PreconditionError("map is not surjective");
    Subgroup k = kernel(p);
    GModule a = kernel_module(b, k.inclusion);
    return {a, b, c, k.inclusion, p};
}

Cochain connecting_map(const ShortExact& s, const Cochain& x) {
    PreimageSolver lift(s.p), pull(s.i);
    Cochain y{x.degree, {}};
    for (const auto& v : x.values) {
        AbElement u;
        if (!lift.solve(v, u)) throw PreconditionError("value does not lift");
        y.values.push_back(u);
    }
    Cochain dy = differential(s.b, y);
    Cochain out{dy.degree, {}};
    for (const auto& v : dy.values) {
        AbElement u;
        if (!pull.solve(v, u)) throw PreconditionError("lifted coboundary leaves the kernel; input was not a cocycle");
        out.values.push_back(u);
    }
    return out;
}

}  // namespace bkcoh
