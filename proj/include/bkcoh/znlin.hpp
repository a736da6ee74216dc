#pragma once
// Exact linear algebra over Z and Z/L, and finite abelian groups given as
// products of cyclic factors.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkcoh {

using Int = std::int64_t;
using Matrix = std::vector<std::vector<Int>>;
using AbElement = std::vector<Int>;

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A size cap was hit; callers may report the work as skipped.
struct BoundError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// checked int64 arithmetic, throws OverflowError
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int mod(Int a, Int m);
Int mulmod(Int a, Int b, Int m);
Int gcd(Int a, Int b);
Int lcm(Int a, Int b);
struct Xgcd {
    Int g, s, t;  // g = s*a + t*b
};
Xgcd xgcd(Int a, Int b);

Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix identity_matrix(std::size_t n);
Matrix mat_mul(const Matrix& a, const Matrix& b);  // checked
std::size_t num_cols(const Matrix& m, std::size_t fallback = 0);

struct SmithDecomposition {
    Matrix U, D, V;  // U*A*V = D, U and V unimodular
    std::vector<Int> invariants;  // nonzero diagonal entries, each divides the next
};

// Smith form over Z in checked int64 arithmetic.
SmithDecomposition smith_normal_form(const Matrix& a);

// Smith form over Z/L: U*A*V = D (mod L). Diagonal entries are reported as
// gcd(d_i, L); entries after `rank` are zero.
struct ModSmith {
    Int L = 1;
    Matrix U;  // rows x rows, only filled if requested
    Matrix V;  // cols x cols
    std::vector<Int> diag;
    std::vector<Int> pivots;  // raw pivot residues
    std::size_t rank = 0;
    std::size_t rows = 0, cols = 0;
};
ModSmith smith_mod(const Matrix& a, std::size_t cols, Int L, bool want_u);

// Finite abelian group Z/n_1 x ... x Z/n_k. Factors of order 1 are allowed.
struct FinAbGroup {
    std::vector<Int> orders;

    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<Int> o);

    std::size_t rank() const { return orders.size(); }
    Int cardinality() const;  // checked
    Int exponent() const;
    AbElement zero() const { return AbElement(orders.size(), 0); }
    AbElement basis(std::size_t i) const;
    AbElement reduce(AbElement x) const;
    AbElement add(const AbElement& x, const AbElement& y) const;
    AbElement sub(const AbElement& x, const AbElement& y) const;
    AbElement neg(const AbElement& x) const;
    AbElement scale(Int c, const AbElement& x) const;
    bool is_zero(const AbElement& x) const;
    Int element_order(const AbElement& x) const;
    // mixed-radix enumeration helpers
    AbElement element_at(Int index) const;
    Int index_of(const AbElement& x) const;
    bool operator==(const FinAbGroup&) const = default;
};

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);
std::string describe(const FinAbGroup& g);

// Primary decomposition as a sorted list of prime powers (the iso class).
std::vector<Int> primary_invariants(const FinAbGroup& g);
bool isomorphic(const FinAbGroup& a, const FinAbGroup& b);
// Invariant factors d_1 | d_2 | ..., ones dropped.
std::vector<Int> invariant_factors(const FinAbGroup& g);

// Homomorphism: matrix with one row per target factor, one column per source factor.
struct AbHom {
    FinAbGroup source, target;
    Matrix m;

    AbHom() = default;
    AbHom(FinAbGroup s, FinAbGroup t, Matrix mat);  // validates well-definedness
    AbElement apply(const AbElement& x) const;
    bool is_zero() const;
};

AbHom identity_hom(const FinAbGroup& g);
AbHom zero_hom(const FinAbGroup& s, const FinAbGroup& t);
AbHom compose(const AbHom& g, const AbHom& f);  // g after f
bool hom_equal(const AbHom& a, const AbHom& b);
// Build from images of source generators.
AbHom hom_from_images(const FinAbGroup& s, const FinAbGroup& t, std::span<const AbElement> images);

struct Subgroup {
    FinAbGroup group;
    AbHom inclusion;
};
struct Quotient {
    FinAbGroup group;
    AbHom projection;
};

Subgroup subgroup_generated(const FinAbGroup& g, std::span<const AbElement> gens);
Subgroup kernel(const AbHom& h);
Subgroup image(const AbHom& h);
Quotient cokernel(const AbHom& h);
// Quotient of g by the subgroup generated by gens.
Quotient quotient_by(const FinAbGroup& g, std::span<const AbElement> gens);
bool is_injective(const AbHom& h);
bool is_surjective(const AbHom& h);

// Cached solver for h(x) = t.
class PreimageSolver {
public:
    explicit PreimageSolver(AbHom h);
    // empty optional-like: returns false if no solution
    bool solve(const AbElement& t, AbElement& out) const;
    bool in_image(const AbElement& t) const;
    const AbHom& hom() const { return h_; }

private:
    AbHom h_;
    Int L_ = 1;
    ModSmith s_;
};

bool solve_preimage(const AbHom& h, const AbElement& t, AbElement& out);

// tensor product: factor (i,j) has order gcd(n_i, m_j), index i*|b| + j
FinAbGroup tensor(const FinAbGroup& a, const FinAbGroup& b);
std::size_t tensor_index(const FinAbGroup& a, const FinAbGroup& b, std::size_t i, std::size_t j);
AbElement tensor_elem(const FinAbGroup& a, const FinAbGroup& b, const AbElement& x, const AbElement& y);
AbHom tensor_hom(const AbHom& f, const AbHom& g);

// exterior square: factors (i,j) with i<j of order gcd(n_i,n_j)
struct ExteriorSquare {
    FinAbGroup group;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};
ExteriorSquare exterior_square(const FinAbGroup& a);
AbElement wedge(const FinAbGroup& a, const ExteriorSquare& e, const AbElement& x, const AbElement& y);

// Pontryagin dual realised as Hom(A, Z/e) with e the exponent. The dual basis
// pairs with e_j to (e/n_j) * delta_ij.
struct DualGroup {
    FinAbGroup group;
    Int exponent = 1;
};
DualGroup dual(const FinAbGroup& a);
Int dual_pairing(const FinAbGroup& a, const AbElement& chi, const AbElement& x);

// Enumerate all elements; aborts with PreconditionError above the cap.
std::vector<AbElement> enumerate(const FinAbGroup& g, Int cap = (Int{1} << 20));

}  // namespace bkcoh
