#pragma once
// Finite groups by multiplication table, subgroups, quotients and sections.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "bkcoh/znlin.hpp"

namespace bkcoh {

// Raised when a table is not a group; `witness` names the failing data.
struct TableError : PreconditionError {
    std::string kind;
    std::array<int, 3> witness{-1, -1, -1};
    TableError(std::string k, std::array<int, 3> w, const std::string& msg)
        : PreconditionError(msg), kind(std::move(k)), witness(w) {}
};

class FiniteGroup {
public:
    FiniteGroup() = default;
    // Validates closure, identity, inverses and associativity. Throws TableError.
    static FiniteGroup from_table(std::vector<std::vector<int>> table, std::string name = "table");

    int order() const { return n_; }
    int id() const { return id_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int pow(int a, long long k) const;
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    int element_order(int a) const;
    bool is_abelian() const;
    const std::string& name() const { return name_; }
    std::vector<std::vector<int>> table() const;

private:
    int n_ = 0, id_ = 0;
    std::vector<int> table_, inv_;
    std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr cyclic_group(int n);
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);
GroupPtr symmetric_group3();
GroupPtr dihedral_group8();
GroupPtr quaternion_group8();
GroupPtr heisenberg_group(int p);  // unitriangular 3x3 over F_p
// Closure of permutations under composition (p*q)(x) = p(q(x)); identity first.
GroupPtr group_from_permutations(const std::vector<std::vector<int>>& gens, std::string name);
// Parse names like C2, C4, C2xC2, S3, D8, Q8, Heis3.
GroupPtr standard_group(const std::string& name);

// Sorted member lists.
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& members);
bool is_normal(const FiniteGroup& g, const std::vector<int>& members);
std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g);
std::vector<std::vector<int>> cyclic_subgroups(const FiniteGroup& g);
std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> center(const FiniteGroup& g);

// A subgroup realised as a group in its own right; element i is members[i].
struct Embedded {
    GroupPtr group;
    std::vector<int> members;
    std::vector<int> local_index;  // parent element -> local index or -1
};
Embedded embed_subgroup(const FiniteGroup& g, const std::vector<int>& members);

// Quotient by a normal subgroup. Cosets are ordered by their lowest element
// with the subgroup itself first; the section picks the lowest element and
// the identity on the trivial coset.
struct CosetData {
    std::vector<int> subgroup;
    std::vector<std::vector<int>> cosets;
    std::vector<int> coset_of;
    std::vector<int> section;
    GroupPtr quotient;

    int rep(int coset) const { return section[coset]; }
};
CosetData coset_data(const FiniteGroup& g, const std::vector<int>& normal_subgroup);

// Homomorphism check for a map given on all elements.
bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, const std::vector<int>& map);

}  // namespace bkcoh
