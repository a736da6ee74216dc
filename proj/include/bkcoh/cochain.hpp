#pragma once
// Inhomogeneous cochains, the bar differential, cohomology presentations,
// cup products and connecting maps.

#include <atomic>
#include <optional>

#include "bkcoh/gmodule.hpp"

namespace bkcoh {

// Test hook: deliberately broken variants used to show the checks bite.
enum class Mutation { none, cup_sign, phi_transpose };
Mutation current_mutation();
class ScopedMutation {
public:
    explicit ScopedMutation(Mutation m);
    ~ScopedMutation();
    ScopedMutation(const ScopedMutation&) = delete;
    ScopedMutation& operator=(const ScopedMutation&) = delete;

private:
    Mutation prev_;
};

// Default cap on |G|^(r+1) * rank(M) for building differentials.
Int default_bound();
void set_default_bound(Int b);

// Values over G^degree in lexicographic order (first argument most significant).
struct Cochain {
    int degree = 0;
    std::vector<AbElement> values;
    bool operator==(const Cochain&) const = default;
};

std::size_t tuple_count(int n, int r);
std::vector<int> tuple_at(int n, int r, std::size_t idx);
std::size_t tuple_index(int n, const std::vector<int>& t);

Cochain zero_cochain(const GModule& m, int r);
FinAbGroup cochain_group(const GModule& m, int r);
AbElement flatten(const Cochain& c);
Cochain unflatten(const GModule& m, int r, const AbElement& v);

Cochain cochain_add(const FinAbGroup& a, const Cochain& x, const Cochain& y);
Cochain cochain_sub(const FinAbGroup& a, const Cochain& x, const Cochain& y);
Cochain cochain_scale(const FinAbGroup& a, Int k, const Cochain& x);
Cochain push_forward(const AbHom& f, const Cochain& c);

Cochain differential(const GModule& m, const Cochain& c);
AbHom differential_hom(const GModule& m, int r, Int bound = 0);
bool is_cocycle(const GModule& m, const Cochain& c);

// Values on the subgroup tuples only.
Cochain restrict_cochain(const Cochain& c, int parent_order, const Embedded& sub);
// (s.c)(t_1..t_r) = c(s^-1 t_1 s, ..., s^-1 t_r s) for a normal subgroup and
// coefficients with trivial action.
Cochain conjugate_cochain(const FiniteGroup& g, const Embedded& sub, int s, const Cochain& c);

// Bilinear map left x right -> out given on basis pairs.
struct Pairing {
    FinAbGroup left, right, out;
    std::vector<AbElement> table;  // index i * right.rank() + j
    AbElement apply(const AbElement& x, const AbElement& y) const;
};
Pairing tensor_pairing(const FinAbGroup& a, const FinAbGroup& b);

// (x u y)(s_1..s_p, t_1..t_q) = pair(x(s..), (s_1...s_p) . y(t..)).
Cochain cup(const GModule& mx, const Cochain& x, const GModule& my, const Cochain& y, const Pairing& p);

class Cohomology {
public:
    Cohomology(GModule m, int r, Int bound = 0);

    int degree() const { return r_; }
    const GModule& module() const { return m_; }
    const FinAbGroup& group() const { return h_.group; }
    Int order() const { return h_.group.cardinality(); }

    AbElement class_of(const Cochain& cocycle) const;  // throws on non-cocycles
    Cochain representative(const AbElement& cls) const;
    bool is_coboundary(const Cochain& c) const;
    bool cohomologous(const Cochain& a, const Cochain& b) const;
    // c = d(beta); only meaningful for degree >= 1
    std::optional<Cochain> coboundary_witness(const Cochain& c) const;
    // All cocycles, up to a cap on their number.
    std::vector<Cochain> cocycles(Int cap = (Int{1} << 16)) const;
    const Subgroup& cocycle_group() const { return z_; }

private:
    GModule m_;
    int r_;
    Subgroup z_;
    std::optional<PreimageSolver> z_solver_;
    std::optional<PreimageSolver> b_solver_;
    Quotient h_;
    std::optional<PreimageSolver> h_lift_;
};

// Class-level restriction to a subgroup as a homomorphism of presentations.
AbHom restriction_hom(const Cohomology& big, const Cohomology& small, const Embedded& sub);

// Connecting map for 0 -> A -i-> B -p-> C -> 0 on a degree-r cocycle of C.
struct ShortExact {
    GModule a, b, c;
    AbHom i, p;
};
// Builds and validates the sequence for an equivariant surjection p with kernel.
ShortExact short_exact_from_surjection(const GModule& b, const GModule& c, const AbHom& p);
Cochain connecting_map(const ShortExact& s, const Cochain& x);

}  // namespace bkcoh
