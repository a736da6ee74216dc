#pragma once
// Groups given by a multiplication function instead of a table, subgroup
// closures, and the Schur multiplier of a finite p-group computed from a
// power-commutator presentation with integer tails.

#include <functional>
#include <string>
#include <vector>

#include "bkcoh/group.hpp"

namespace bkcoh {

// Elements are 0..order-1. Cheap to copy; the callables may share state.
struct BlackBoxGroup {
    int order = 1;
    int id = 0;
    std::function<int(int, int)> mul;
    std::function<int(int)> inv;
    std::vector<int> generators;
    std::string name;

    static BlackBoxGroup from_table(GroupPtr g);
    bool commute(int x, int y) const { return mul(x, y) == mul(y, x); }
    int pow(int x, long long k) const;
    int commutator(int x, int y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
    int element_order(int x) const;
};

// Multiplication table of a black-box group; throws above `cap` elements.
GroupPtr to_table(const BlackBoxGroup& g, int cap = 4096);

// Membership mask plus member list (identity first).
struct ElementSet {
    std::vector<char> mask;
    std::vector<int> members;
    std::size_t size() const { return members.size(); }
    bool contains(int x) const { return mask[x] != 0; }
};

ElementSet closure(const BlackBoxGroup& g, const std::vector<int>& gens);
// Smallest normal subgroup containing gens; `gens` is extended to a subgroup
// generating set of the result.
ElementSet normal_closure(const BlackBoxGroup& g, std::vector<int>& gens);
ElementSet center(const BlackBoxGroup& g);
ElementSet centralizer(const BlackBoxGroup& g, int x);
ElementSet derived_subgroup(const BlackBoxGroup& g);
// Greedy generating set for a subgroup, starting from `seed` generators.
std::vector<int> generating_set(const BlackBoxGroup& g, const ElementSet& s, std::vector<int> seed = {});
// Returns p if |g| is a power of the prime p, 0 otherwise (1 for the trivial group).
int prime_of_p_group(const BlackBoxGroup& g);

// Power-commutator presentation refining the lower exponent-p central series.
// Every element is g_1^e_1 ... g_n^e_n with 0 <= e_i < p.
struct PcPresentation {
    int p = 1;
    int n = 0;
    std::vector<int> pcgs;                           // group elements g_i
    std::vector<std::vector<int>> exps;              // element -> exponent vector
    std::vector<int> element_of_index;               // mixed-radix index -> element
    std::vector<std::vector<int>> power;             // g_i^p
    std::vector<std::vector<std::vector<int>>> conj;  // [i][j], i < j: g_i^-1 g_j g_i

    int element(const std::vector<int>& e) const;
};
PcPresentation pc_presentation(const BlackBoxGroup& g);

// R/[F,R] for the presentation, from an integer Smith form of the relations
// among tails. Its torsion part is the Schur multiplier M(G).
struct SchurData {
    PcPresentation pc;
    std::size_t tail_count = 0;
    Matrix torsion_rows;     // tails -> multiplier, row k reduced mod multiplier.orders[k]
    Matrix free_rows;        // tails -> free part, exact over Z
    FinAbGroup multiplier;
    std::size_t relations = 0;
};
SchurData schur_data(const BlackBoxGroup& g);
// Commutator of the canonical lifts of commuting x, y in the covering group,
// as an element of `multiplier`. Throws if x and y do not commute.
AbElement lifted_commutator(const SchurData& s, int x, int y);

// Bogomolov multiplier as M(G)/M_0(G), with M_0 generated by lifted
// commutators of commuting pairs.
struct PcBogomolov {
    FinAbGroup multiplier;
    FinAbGroup b0;
    std::size_t commuting_generators = 0;
};
PcBogomolov bogomolov_via_schur(const BlackBoxGroup& g);

}  // namespace bkcoh
