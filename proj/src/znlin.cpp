#include "bkcoh/znlin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace bkcoh {

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
    return r;
}

Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

Int mulmod(Int a, Int b, Int m) {
    if (m <= (Int{1} << 31) && a >= 0 && b >= 0 && a < m && b < m) return (a * b) % m;
    __int128 r = static_cast<__int128>(a) * b % m;
    if (r < 0) r += m;
    return static_cast<Int>(r);
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int lcm(Int a, Int b) {
    if (a == 0 || b == 0) return 0;
    Int g = std::gcd(a, b);
    return checked_mul(a / g, b);
}

Xgcd xgcd(Int a, Int b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

Matrix zero_matrix(std::size_t rows, std::size_t cols) { return Matrix(rows, std::vector<Int>(cols, 0)); }

Matrix identity_matrix(std::size_t n) {
    Matrix m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

std::size_t num_cols(const Matrix& m, std::size_t fallback) { return m.empty() ? fallback : m[0].size(); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    std::size_t n = a.size(), k = b.size(), c = num_cols(b);
    Matrix r = zero_matrix(n, c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < c; ++j) r[i][j] = checked_add(r[i][j], checked_mul(a[i][l], b[l][j]));
        }
    return r;
}

// ---------------------------------------------------------------- Smith over Z

namespace {

void row_axpy(Matrix& m, std::size_t dst, std::size_t src, Int q) {  // row dst -= q*row src
    for (std::size_t j = 0; j < m[dst].size(); ++j)
        if (m[src][j] != 0) m[dst][j] = checked_add(m[dst][j], -checked_mul(q, m[src][j]));
}

void col_axpy(Matrix& m, std::size_t dst, std::size_t src, Int q) {
    for (auto& row : m)
        if (row[src] != 0) row[dst] = checked_add(row[dst], -checked_mul(q, row[src]));
}

// nearest-integer quotient keeps the transforms small
Int round_div(Int a, Int b) {
    Int q = a / b, r = a - q * b;
    if (2 * std::abs(r) > std::abs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
    return q;
}

void swap_cols(Matrix& m, std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

SmithDecomposition smith_normal_form(const Matrix& a) {
    std::size_t r = a.size(), c = num_cols(a);
    Matrix A = a, U = identity_matrix(r), V = identity_matrix(c);
    std::size_t t = 0;
    while (t < std::min(r, c)) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = r, pj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (A[i][j] != 0 && (pi == r || std::abs(A[i][j]) < std::abs(A[pi][pj]))) pi = i, pj = j;
            if (pi == r) break;
            std::swap(A[t], A[pi]);
            std::swap(U[t], U[pi]);
            swap_cols(A, t, pj);
            swap_cols(V, t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (A[i][t] == 0) continue;
                Int q = round_div(A[i][t], A[t][t]);
                row_axpy(A, i, t, q);
                row_axpy(U, i, t, q);
                clean &= A[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (A[t][j] == 0) continue;
                Int q = round_div(A[t][j], A[t][t]);
                col_axpy(A, j, t, q);
                col_axpy(V, j, t, q);
                clean &= A[t][j] == 0;
            }
            if (clean) break;
        }
        if (A[t][t] == 0) break;
        if (A[t][t] < 0) {
            for (auto& x : A[t]) x = -x;
            for (auto& x : U[t]) x = -x;
        }
        ++t;
    }
    // divisibility chain via 2x2 gcd/lcm transforms on the diagonal
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            Int x = A[i][i], y = A[j][j];
            if (y % x == 0) continue;
            Xgcd e = xgcd(x, y);
            Int xg = x / e.g, yg = y / e.g;
            for (auto* M : {&U}) {
                auto& ri = (*M)[i];
                auto& rj = (*M)[j];
                for (std::size_t k = 0; k < ri.size(); ++k) {
                    Int p = ri[k], q = rj[k];
                    ri[k] = checked_add(checked_mul(e.s, p), checked_mul(e.t, q));
                    rj[k] = checked_add(checked_mul(-yg, p), checked_mul(xg, q));
                }
            }
            for (auto& row : V) {
                Int p = row[i], q = row[j];
                row[i] = checked_add(p, q);
                row[j] = checked_add(checked_mul(-e.t * yg, p), checked_mul(checked_mul(e.s, xg), q));
            }
            A[i][i] = e.g;
            A[j][j] = checked_mul(xg, y);
        }
    SmithDecomposition out{std::move(U), std::move(A), std::move(V), {}};
    for (std::size_t i = 0; i < std::min(r, c); ++i)
        if (out.D[i][i] != 0) out.invariants.push_back(out.D[i][i]);
    return out;
}

// ---------------------------------------------------------------- Smith over Z/L

namespace {

struct Dense {
    std::size_t rows, cols;
    std::vector<Int> v;
    Int& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
};

// rows (a, b) <- (s a + t b, -(y/g) a + (x/g) b) with x, y the pivot column values
inline void combine(Int* ra, Int* rb, std::size_t n, Int s, Int t, Int u, Int w, Int L) {
    for (std::size_t j = 0; j < n; ++j) {
        Int a = ra[j], b = rb[j];
        if (a == 0 && b == 0) continue;
        ra[j] = mod(mulmod(s, a, L) + mulmod(t, b, L), L);
        rb[j] = mod(mulmod(u, a, L) + mulmod(w, b, L), L);
    }
}

inline void axpy(Int* dst, const Int* src, std::size_t n, Int q, Int L) {  // dst -= q src
    if (q == 0) return;
    Int nq = mod(-q, L);
    for (std::size_t j = 0; j < n; ++j)
        if (src[j] != 0) dst[j] = mod(dst[j] + mulmod(nq, src[j], L), L);
}

}  // namespace

ModSmith smith_mod(const Matrix& a, std::size_t cols, Int L, bool want_u) {
    ModSmith out;
    out.L = L;
    std::size_t r = a.size(), c = a.empty() ? cols : a[0].size();
    out.rows = r;
    out.cols = c;
    // row-major working copy; V is kept transposed so column ops become row ops
    Dense A{r, c, std::vector<Int>(r * c)};
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) A.at(i, j) = mod(a[i][j], L);
    Dense Vt{c, c, std::vector<Int>(c * c, 0)};
    for (std::size_t i = 0; i < c; ++i) Vt.at(i, i) = 1 % L;
    Dense U{want_u ? r : 0, want_u ? r : 0, std::vector<Int>(want_u ? r * r : 0, 0)};
    for (std::size_t i = 0; i < U.rows; ++i) U.at(i, i) = 1 % L;

    std::size_t t = 0;
    std::size_t lim = std::min(r, c);
    while (t < lim && L > 1) {
        // pivot: entry generating the largest ideal
        std::size_t pi = r, pj = c;
        Int best = L;
        for (std::size_t i = t; i < r && best > 1; ++i)
            for (std::size_t j = t; j < c; ++j) {
                Int x = A.at(i, j);
                if (x == 0) continue;
                Int g = std::gcd(x, L);
                if (g < best) best = g, pi = i, pj = j;
                if (best == 1) break;
            }
        if (pi == r) break;
        if (pi != t) {
            std::swap_ranges(&A.at(t, 0), &A.at(t, 0) + c, &A.at(pi, 0));
            if (want_u) std::swap_ranges(&U.at(t, 0), &U.at(t, 0) + r, &U.at(pi, 0));
        }
        if (pj != t) {
            for (std::size_t i = 0; i < r; ++i) std::swap(A.at(i, t), A.at(i, pj));
            std::swap_ranges(&Vt.at(t, 0), &Vt.at(t, 0) + c, &Vt.at(pj, 0));
        }
        for (;;) {
            // clear column t below the pivot with row operations
            for (std::size_t i = t + 1; i < r; ++i) {
                Int b = A.at(i, t);
                if (b == 0) continue;
                Int p = A.at(t, t);
                if (b % p == 0) {
                    Int q = b / p;
                    axpy(&A.at(i, 0), &A.at(t, 0), c, q, L);
                    if (want_u) axpy(&U.at(i, 0), &U.at(t, 0), r, q, L);
                } else {
                    Xgcd e = xgcd(p, b);
                    Int u = mod(-(b / e.g), L), w = mod(p / e.g, L);
                    Int s = mod(e.s, L), tt = mod(e.t, L);
                    combine(&A.at(t, 0), &A.at(i, 0), c, s, tt, u, w, L);
                    if (want_u) combine(&U.at(t, 0), &U.at(i, 0), r, s, tt, u, w, L);
                }
            }
            // clear row t right of the pivot with column operations
            bool dirty = false;
            for (std::size_t j = t + 1; j < c; ++j) {
                Int b = A.at(t, j);
                if (b == 0) continue;
                Int p = A.at(t, t);
                if (b % p == 0) {
                    Int q = b / p;
                    Int nq = mod(-q, L);
                    for (std::size_t i = t; i < r; ++i)
                        if (A.at(i, t) != 0) A.at(i, j) = mod(A.at(i, j) + mulmod(nq, A.at(i, t), L), L);
                    axpy(&Vt.at(j, 0), &Vt.at(t, 0), c, q, L);
                } else {
                    Xgcd e = xgcd(p, b);
                    Int u = mod(-(b / e.g), L), w = mod(p / e.g, L);
                    Int s = mod(e.s, L), tt = mod(e.t, L);
                    for (std::size_t i = t; i < r; ++i) {
                        Int x = A.at(i, t), y = A.at(i, j);
                        if (x == 0 && y == 0) continue;
                        A.at(i, t) = mod(mulmod(s, x, L) + mulmod(tt, y, L), L);
                        A.at(i, j) = mod(mulmod(u, x, L) + mulmod(w, y, L), L);
                    }
                    combine(&Vt.at(t, 0), &Vt.at(j, 0), c, s, tt, u, w, L);
                    dirty = true;  // column t may have refilled
                }
            }
            if (!dirty) break;
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i)
                if (A.at(i, t) != 0) clean = false;
            if (clean) break;
        }
        out.pivots.push_back(A.at(t, t));
        out.diag.push_back(std::gcd(A.at(t, t), L));
        ++t;
    }
    out.rank = t;
    out.V = zero_matrix(c, c);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) out.V[i][j] = Vt.at(j, i);
    if (want_u) {
        out.U = zero_matrix(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) out.U[i][j] = U.at(i, j);
    }
    return out;
}

// ---------------------------------------------------------------- FinAbGroup

FinAbGroup::FinAbGroup(std::vector<Int> o) : orders(std::move(o)) {
    for (Int n : orders)
        if (n < 1) throw PreconditionError("cyclic factor order must be >= 1");
}

Int FinAbGroup::cardinality() const {
    Int c = 1;
    for (Int n : orders) c = checked_mul(c, n);
    return c;
}

Int FinAbGroup::exponent() const {
    Int e = 1;
    for (Int n : orders) e = lcm(e, n);
    return e;
}

AbElement FinAbGroup::basis(std::size_t i) const {
    AbElement x = zero();
    x.at(i) = 1 % orders[i];
    return x;
}

AbElement FinAbGroup::reduce(AbElement x) const {
    if (x.size() != orders.size()) throw PreconditionError("element length does not match group rank");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], orders[i]);
    return x;
}

AbElement FinAbGroup::add(const AbElement& x, const AbElement& y) const {
    AbElement r(orders.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(x[i] + y[i], orders[i]);
    return r;
}

AbElement FinAbGroup::sub(const AbElement& x, const AbElement& y) const {
    AbElement r(orders.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(x[i] - y[i], orders[i]);
    return r;
}

AbElement FinAbGroup::neg(const AbElement& x) const {
    AbElement r(orders.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(-x[i], orders[i]);
    return r;
}

AbElement FinAbGroup::scale(Int c, const AbElement& x) const {
    AbElement r(orders.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mulmod(mod(c, orders[i]), mod(x[i], orders[i]), orders[i]);
    return r;
}

bool FinAbGroup::is_zero(const AbElement& x) const {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (mod(x[i], orders[i]) != 0) return false;
    return true;
}

Int FinAbGroup::element_order(const AbElement& x) const {
    Int o = 1;
    for (std::size_t i = 0; i < x.size(); ++i) o = lcm(o, orders[i] / std::gcd(mod(x[i], orders[i]), orders[i]));
    return o;
}

AbElement FinAbGroup::element_at(Int index) const {
    AbElement x(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
        x[i] = index % orders[i];
        index /= orders[i];
    }
    return x;
}

Int FinAbGroup::index_of(const AbElement& x) const {
    Int idx = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + mod(x[i], orders[i]);
    return idx;
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
    std::vector<Int> o = a.orders;
    o.insert(o.end(), b.orders.begin(), b.orders.end());
    return FinAbGroup(std::move(o));
}

std::string describe(const FinAbGroup& g) {
    auto inv = invariant_factors(g);
    if (inv.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < inv.size(); ++i) os << (i ? " x " : "") << "Z/" << inv[i];
    return os.str();
}

namespace {
std::vector<std::pair<Int, Int>> factorize(Int n) {
    std::vector<std::pair<Int, Int>> f;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        Int q = 1;
        while (n % p == 0) n /= p, q *= p;
        f.push_back({p, q});
    }
    if (n > 1) f.push_back({n, n});
    return f;
}
}  // namespace

std::vector<Int> primary_invariants(const FinAbGroup& g) {
    std::vector<Int> out;
    for (Int n : g.orders)
        for (auto [p, q] : factorize(n)) out.push_back(q);
    std::sort(out.begin(), out.end());
    return out;
}

bool isomorphic(const FinAbGroup& a, const FinAbGroup& b) { return primary_invariants(a) == primary_invariants(b); }

std::vector<Int> invariant_factors(const FinAbGroup& g) {
    std::map<Int, std::vector<Int>> by_prime;
    for (Int n : g.orders)
        for (auto [p, q] : factorize(n)) by_prime[p].push_back(q);
    std::size_t len = 0;
    for (auto& [p, v] : by_prime) {
        std::sort(v.rbegin(), v.rend());
        len = std::max(len, v.size());
    }
    std::vector<Int> d(len, 1);
    for (auto& [p, v] : by_prime)
        for (std::size_t k = 0; k < v.size(); ++k) d[k] *= v[k];
    std::reverse(d.begin(), d.end());
    return d;
}

// ---------------------------------------------------------------- AbHom

AbHom::AbHom(FinAbGroup s, FinAbGroup t, Matrix mat) : source(std::move(s)), target(std::move(t)), m(std::move(mat)) {
    if (m.size() != target.rank()) throw PreconditionError("hom matrix row count must equal target rank");
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != source.rank()) throw PreconditionError("hom matrix column count must equal source rank");
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            m[i][j] = mod(m[i][j], target.orders[i]);
            if (mulmod(m[i][j], mod(source.orders[j], target.orders[i]), target.orders[i]) != 0)
                throw PreconditionError("hom matrix is not well defined on the source group");
        }
    }
}

AbElement AbHom::apply(const AbElement& x) const {
    AbElement r(target.rank(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Int n = target.orders[i], acc = 0;
        const auto& row = m[i];
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0 && x[j] != 0) acc = (acc + mulmod(row[j], mod(x[j], n), n)) % n;
        r[i] = acc;
    }
    return r;
}

bool AbHom::is_zero() const {
    for (const auto& row : m)
        for (Int v : row)
            if (v != 0) return false;
    return true;
}

AbHom identity_hom(const FinAbGroup& g) { return AbHom(g, g, identity_matrix(g.rank())); }

AbHom zero_hom(const FinAbGroup& s, const FinAbGroup& t) { return AbHom(s, t, zero_matrix(t.rank(), s.rank())); }

AbHom compose(const AbHom& g, const AbHom& f) {
    if (!(f.target == g.source)) throw PreconditionError("compose: incompatible groups");
    Matrix r = zero_matrix(g.target.rank(), f.source.rank());
    for (std::size_t j = 0; j < f.source.rank(); ++j) {
        AbElement col(f.target.rank());
        for (std::size_t k = 0; k < col.size(); ++k) col[k] = f.m[k][j];
        AbElement img = g.apply(col);
        for (std::size_t i = 0; i < img.size(); ++i) r[i][j] = img[i];
    }
    return AbHom(f.source, g.target, std::move(r));
}

bool hom_equal(const AbHom& a, const AbHom& b) { return a.source == b.source && a.target == b.target && a.m == b.m; }

AbHom hom_from_images(const FinAbGroup& s, const FinAbGroup& t, std::span<const AbElement> images) {
    if (images.size() != s.rank()) throw PreconditionError("need one image per source generator");
    Matrix m = zero_matrix(t.rank(), s.rank());
    for (std::size_t j = 0; j < images.size(); ++j)
        for (std::size_t i = 0; i < t.rank(); ++i) m[i][j] = images[j].at(i);
    return AbHom(s, t, std::move(m));
}

// ---------------------------------------------------------------- sub / ker / coker

Subgroup subgroup_generated(const FinAbGroup& g, std::span<const AbElement> gens) {
    Int L = g.exponent();
    std::size_t s = g.rank(), k = gens.size();
    Matrix W = zero_matrix(s, k);
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t i = 0; i < s; ++i) W[i][l] = mulmod(L / g.orders[i], mod(gens[l][i], g.orders[i]), L);
    ModSmith sm = smith_mod(W, k, L, false);
    std::vector<Int> orders;
    std::vector<AbElement> cols;
    for (std::size_t i = 0; i < sm.rank; ++i) {
        Int o = L / sm.diag[i];
        if (o == 1) continue;
        AbElement x = g.zero();
        for (std::size_t l = 0; l < k; ++l) {
            Int v = sm.V[l][i];
            if (v == 0) continue;
            for (std::size_t j = 0; j < s; ++j)
                x[j] = mod(x[j] + mulmod(v, mod(gens[l][j], g.orders[j]), g.orders[j]), g.orders[j]);
        }
        orders.push_back(o);
        cols.push_back(std::move(x));
    }
    FinAbGroup sub(orders);
    return {sub, hom_from_images(sub, g, cols)};
}

Subgroup kernel(const AbHom& h) {
    const auto& S = h.source;
    const auto& T = h.target;
    if (T.rank() == 0) return {S, identity_hom(S)};
    Int L = lcm(S.exponent(), T.exponent());
    Matrix Mp = zero_matrix(T.rank(), S.rank());
    for (std::size_t i = 0; i < T.rank(); ++i)
        for (std::size_t j = 0; j < S.rank(); ++j) Mp[i][j] = mulmod(L / T.orders[i], h.m[i][j], L);
    ModSmith sm = smith_mod(Mp, S.rank(), L, false);
    std::vector<AbElement> gens;
    for (std::size_t i = 0; i < S.rank(); ++i) {
        Int f = i < sm.rank ? L / sm.diag[i] : 1;
        AbElement x(S.rank());
        for (std::size_t j = 0; j < S.rank(); ++j) x[j] = mod(mulmod(sm.V[j][i], f % L, L), S.orders[j]);
        if (!S.is_zero(x)) gens.push_back(std::move(x));
    }
    return subgroup_generated(S, gens);
}

Subgroup image(const AbHom& h) {
    std::vector<AbElement> gens;
    for (std::size_t j = 0; j < h.source.rank(); ++j) {
        AbElement col(h.target.rank());
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = h.m[i][j];
        gens.push_back(std::move(col));
    }
    return subgroup_generated(h.target, gens);
}

namespace {
Quotient coker_columns(const FinAbGroup& T, std::span<const AbElement> cols) {
    std::size_t t = T.rank();
    if (t == 0) return {T, identity_hom(T)};
    Int L = T.exponent();
    Matrix A = zero_matrix(t, cols.size() + t);
    for (std::size_t l = 0; l < cols.size(); ++l)
        for (std::size_t i = 0; i < t; ++i) A[i][l] = mod(cols[l][i], L);
    for (std::size_t i = 0; i < t; ++i) A[i][cols.size() + i] = T.orders[i] % L;
    ModSmith sm = smith_mod(A, cols.size() + t, L, true);
    std::vector<Int> orders;
    Matrix proj;
    for (std::size_t i = 0; i < t; ++i) {
        Int o = i < sm.rank ? sm.diag[i] : L;
        if (o == 1) continue;
        orders.push_back(o);
        proj.push_back(sm.U[i]);
    }
    FinAbGroup Q(orders);
    return {Q, AbHom(T, Q, std::move(proj))};
}
}  // namespace

Quotient cokernel(const AbHom& h) {
    std::vector<AbElement> cols;
    for (std::size_t j = 0; j < h.source.rank(); ++j) {
        AbElement col(h.target.rank());
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = h.m[i][j];
        cols.push_back(std::move(col));
    }
    return coker_columns(h.target, cols);
}

Quotient quotient_by(const FinAbGroup& g, std::span<const AbElement> gens) { return coker_columns(g, gens); }

bool is_injective(const AbHom& h) { return kernel(h).group.cardinality() == 1; }

bool is_surjective(const AbHom& h) { return cokernel(h).group.cardinality() == 1; }

// ---------------------------------------------------------------- preimages

PreimageSolver::PreimageSolver(AbHom h) : h_(std::move(h)) {
    L_ = lcm(h_.source.exponent(), h_.target.exponent());
    Matrix Mp = zero_matrix(h_.target.rank(), h_.source.rank());
    for (std::size_t i = 0; i < h_.target.rank(); ++i)
        for (std::size_t j = 0; j < h_.source.rank(); ++j) Mp[i][j] = mulmod(L_ / h_.target.orders[i], h_.m[i][j], L_);
    s_ = smith_mod(Mp, h_.source.rank(), L_, true);
}

bool PreimageSolver::solve(const AbElement& t, AbElement& out) const {
    const auto& T = h_.target;
    std::size_t rows = T.rank(), cols = h_.source.rank();
    std::vector<Int> c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = mulmod(L_ / T.orders[i], mod(t.at(i), T.orders[i]), L_);
    std::vector<Int> uc(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        Int acc = 0;
        for (std::size_t k = 0; k < rows; ++k)
            if (s_.U[i][k] != 0 && c[k] != 0) acc = (acc + mulmod(s_.U[i][k], c[k], L_)) % L_;
        uc[i] = acc;
    }
    std::vector<Int> y(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        if (i >= s_.rank) {
            if (uc[i] != 0) return false;
            continue;
        }
        Int g = s_.diag[i];
        if (uc[i] % g != 0) return false;
        // d_i = g * unit mod L/g
        Int m = L_ / g;
        Xgcd e = xgcd((s_.pivots[i] / g) % m, m);
        y[i] = mod(mulmod(uc[i] / g, mod(e.s, m), m), m);
    }
    out.assign(cols, 0);
    for (std::size_t j = 0; j < cols; ++j) {
        Int acc = 0;
        for (std::size_t i = 0; i < s_.rank; ++i)
            if (s_.V[j][i] != 0 && y[i] != 0) acc = (acc + mulmod(s_.V[j][i], y[i], L_)) % L_;
        out[j] = mod(acc, h_.source.orders[j]);
    }
    return true;
}

bool PreimageSolver::in_image(const AbElement& t) const {
    AbElement tmp;
    return solve(t, tmp);
}

bool solve_preimage(const AbHom& h, const AbElement& t, AbElement& out) { return PreimageSolver(h).solve(t, out); }

// ---------------------------------------------------------------- tensor, wedge, dual

FinAbGroup tensor(const FinAbGroup& a, const FinAbGroup& b) {
    std::vector<Int> o;
    o.reserve(a.rank() * b.rank());
    for (Int n : a.orders)
        for (Int m : b.orders) o.push_back(std::gcd(n, m));
    return FinAbGroup(std::move(o));
}

std::size_t tensor_index(const FinAbGroup&, const FinAbGroup& b, std::size_t i, std::size_t j) { return i * b.rank() + j; }

AbElement tensor_elem(const FinAbGroup& a, const FinAbGroup& b, const AbElement& x, const AbElement& y) {
    FinAbGroup t = tensor(a, b);
    AbElement r(t.rank(), 0);
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j) {
            std::size_t k = i * b.rank() + j;
            r[k] = mulmod(mod(x[i], t.orders[k]), mod(y[j], t.orders[k]), t.orders[k]);
        }
    return r;
}

AbHom tensor_hom(const AbHom& f, const AbHom& g) {
    FinAbGroup s = tensor(f.source, g.source), t = tensor(f.target, g.target);
    Matrix m = zero_matrix(t.rank(), s.rank());
    std::size_t gs = g.source.rank(), gt = g.target.rank();
    for (std::size_t p = 0; p < f.target.rank(); ++p)
        for (std::size_t q = 0; q < gt; ++q) {
            std::size_t row = p * gt + q;
            Int n = t.orders[row];
            for (std::size_t i = 0; i < f.source.rank(); ++i) {
                Int a = mod(f.m[p][i], n);
                if (a == 0) continue;
                for (std::size_t j = 0; j < gs; ++j) m[row][i * gs + j] = mulmod(a, mod(g.m[q][j], n), n);
            }
        }
    return AbHom(s, t, std::move(m));
}

ExteriorSquare exterior_square(const FinAbGroup& a) {
    ExteriorSquare e;
    std::vector<Int> o;
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = i + 1; j < a.rank(); ++j) {
            e.pairs.push_back({i, j});
            o.push_back(std::gcd(a.orders[i], a.orders[j]));
        }
    e.group = FinAbGroup(std::move(o));
    return e;
}

AbElement wedge(const FinAbGroup&, const ExteriorSquare& e, const AbElement& x, const AbElement& y) {
    AbElement r(e.pairs.size());
    for (std::size_t k = 0; k < e.pairs.size(); ++k) {
        auto [i, j] = e.pairs[k];
        Int n = e.group.orders[k];
        r[k] = mod(mulmod(mod(x[i], n), mod(y[j], n), n) - mulmod(mod(x[j], n), mod(y[i], n), n), n);
    }
    return r;
}

DualGroup dual(const FinAbGroup& a) { return {a, a.exponent()}; }

Int dual_pairing(const FinAbGroup& a, const AbElement& chi, const AbElement& x) {
    Int e = a.exponent(), acc = 0;
    for (std::size_t i = 0; i < a.rank(); ++i)
        acc = mod(acc + mulmod(mulmod(mod(chi[i], a.orders[i]), mod(x[i], a.orders[i]), e), e / a.orders[i], e), e);
    return acc;
}

std::vector<AbElement> enumerate(const FinAbGroup& g, Int cap) {
    Int n = g.cardinality();
    if (n > cap) throw BoundError("group too large to enumerate: " + std::to_string(n));
    std::vector<AbElement> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Int i = 0; i < n; ++i) out.push_back(g.element_at(i));
    return out;
}

}  // namespace bkcoh
