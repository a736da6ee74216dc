#pragma once
// Shapiro maps for M = Ind_G^H A (A with trivial action) and the compatibility
// squares with cup products, the diagonal inclusion j and localisation.

#include <optional>
#include <string>

#include "bkcoh/cochain.hpp"

namespace bkcoh {

struct ShapiroSetup {
    GroupPtr G;
    Embedded H;
    FinAbGroup A;
    GModule M;     // induced, over G
    GModule MM;    // M (x) M
    GModule AA_G;  // A (x) A, trivial, over G
    GModule A_H;   // A over H
    GModule AA_H;  // A (x) A over H
    GModule IndAA; // Ind_G^H (A (x) A)
    Pairing pair_M, pair_A;
    AbHom j;                   // A(x)A -> M(x)M, constant functions
    std::vector<AbHom> omega;  // per coset g: M(x)M -> Ind(A(x)A), f |-> (h |-> f(gh, h))
    std::vector<std::vector<int>> gamma;  // [coset][s] = u(g) s u(g sbar)^-1, parent index

    const CosetData& cosets() const { return M.induced->cosets; }
    int index() const { return static_cast<int>(cosets().cosets.size()); }
};

ShapiroSetup make_shapiro(GroupPtr g, const std::vector<int>& normal_subgroup, const FinAbGroup& a);

// Value of an element of M(x)M at (g, h) as an element of A(x)A.
AbElement tensor_value(const ShapiroSetup& s, const AbElement& f, int g, int h);

// sh(x)(s_1..s_r) = x(s_1..s_r)(1) for s_i in H, on any induced module.
Cochain shapiro(const GModule& induced, const Embedded& h, const Cochain& x);
// Explicit inverse on cocycles of degree 1 or 2.
Cochain shapiro_inverse(const ShapiroSetup& s, const Cochain& a);
// Same construction for Ind(A(x)A).
Cochain shapiro_inverse_tensor(const ShapiroSetup& s, const Cochain& a);
// sh'(x)_g = (s.. |-> x(s..)(g, 1)) for each coset g.
std::vector<Cochain> shapiro_tensor(const ShapiroSetup& s, const Cochain& x);
// Inverse of omega on values: families (f_g) -> f with f(g,h) = f_{g h^-1}(h).
AbElement omega_inverse(const ShapiroSetup& s, const std::vector<AbElement>& family);

// Data for a decomposition subgroup D of G.
struct LocalData {
    Embedded D;
    std::vector<int> HD;              // D n H, parent indices
    ShapiroSetup local;               // for (D, D n H, A)
    Embedded HD_in_H;                 // D n H inside H
    std::vector<int> dcoset_to_g;     // D/(D n H) -> G/H
    std::vector<int> g_to_dcoset;     // G/H -> D/(D n H) or -1
    std::vector<int> reps;            // coset representatives of G/H over the image of D, identity first
    std::vector<AbHom> varsigma;      // per rep: M -> M_v, f |-> (h |-> f(s h))
};
LocalData make_local(const ShapiroSetup& s, const std::vector<int>& d);

struct SquareResult {
    std::string name;
    bool ok = true;
    std::size_t cases = 0;
    std::string witness;
};

// Runs all six squares. If d is empty every subgroup of G is used as a
// decomposition group. Seed drives the coboundary perturbations.
std::vector<SquareResult> verify_shapiro_squares(const ShapiroSetup& s, const std::vector<std::vector<int>>& ds,
                                                 std::uint64_t seed);
// sh o sh^-1 = id on all cocycles, and the order identities.
std::vector<SquareResult> verify_shapiro_isomorphisms(const ShapiroSetup& s);

}  // namespace bkcoh
