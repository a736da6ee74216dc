#pragma once
// Finite G-modules: a finite abelian group with a matrix per group element.

#include <optional>

#include "bkcoh/group.hpp"
#include "bkcoh/znlin.hpp"

namespace bkcoh {

// Records how an induced module was built. Coordinates are (coset, base factor)
// with index coset * base.rank() + i; cosets follow CosetData ordering.
struct InducedInfo {
    CosetData cosets;
    FinAbGroup base;
};

struct GModule {
    GroupPtr group;
    FinAbGroup ab;
    std::vector<Matrix> act;  // act[g]: ab -> ab
    std::optional<InducedInfo> induced;

    // Validates each action matrix and the homomorphism property.
    static GModule make(GroupPtr g, FinAbGroup a, std::vector<Matrix> act);

    AbElement apply(int g, const AbElement& x) const;
    AbHom action_hom(int g) const { return AbHom(ab, ab, act[g]); }
    std::size_t rank() const { return ab.rank(); }
};

GModule trivial_module(GroupPtr g, const FinAbGroup& a);
// Functions G/H -> A with (s.f)(x) = f(x * image of s); H must be normal and acts trivially on A.
GModule induced_module(GroupPtr g, const std::vector<int>& normal_subgroup, const FinAbGroup& a);
GModule tensor_module(const GModule& m, const GModule& n);
GModule direct_sum_module(const GModule& m, const GModule& n);
GModule restrict_module(const GModule& m, const Embedded& sub);
// Pull back along a homomorphism q -> group(m) given on elements.
GModule pullback_module(const GModule& m, GroupPtr q, const std::vector<int>& map);
// Contragredient action on the dual realised by dual(ab).
GModule dual_module(const GModule& m);

bool is_equivariant(const GModule& src, const GModule& dst, const AbHom& f);
// Submodule carried by an injective-on-image equivariant map into m.
GModule kernel_module(const GModule& m, const AbHom& inclusion_of_kernel);
GModule quotient_module(const GModule& m, const Quotient& q);
// Fixed points as a subgroup of ab.
Subgroup fixed_points(const GModule& m);

// Submodule lattice for small modules, each submodule as a sorted list of
// element indices (FinAbGroup::index_of).
std::vector<std::vector<Int>> submodules(const GModule& m, Int cap = 4096);
bool is_simple(const GModule& m);
bool is_cyclic_group(const FinAbGroup& a);
// True if no chain of submodules with cyclic successive quotients reaches m.
bool not_supersolvable(const GModule& m);

}  // namespace bkcoh
