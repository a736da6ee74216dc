#pragma once
// Bogomolov multipliers of class-2 groups (commutator-pairing closed form and
// a restriction oracle), unramified Brauer groups of crossed products,
// cyclic-restriction kernels and the finite lemmas around them.

#include <optional>
#include <string>

#include "bkcoh/bkgroup.hpp"

namespace bkcoh {

// Coordinates on S/N for N <= S <= G with S/N abelian and N normal in G.
struct AbelianCoords {
    FinAbGroup group;
    std::vector<int> coset_of;       // element -> coset id, -1 outside S
    std::vector<AbElement> coords;   // coset id -> coordinates
    std::vector<int> representative; // coset id -> an element of the coset
    std::vector<int> coset_by_index; // group.index_of(coords) -> coset id

    AbElement of(int x) const { return coords.at(static_cast<std::size_t>(coset_of.at(x))); }
    int lift(const AbElement& v) const;
};
AbelianCoords abelian_coords(const BlackBoxGroup& g, const ElementSet& s, const ElementSet& n);

struct LambdaData {
    BlackBoxGroup F;
    ElementSet center, derived;
    bool abelian = false;
    bool class_two = false;           // [F,F] <= Z(F)
    bool center_is_derived = false;
    AbelianCoords fab;                // F / [F,F]
    AbelianCoords zc;                 // Z(F)
    ExteriorSquare wedge;             // of fab.group
    AbHom lambda;                     // wedge -> Z(F), a ^ b -> [a~, b~]
    Subgroup kernel;                  // S = Ker lambda
    Subgroup pure_kernel;             // S_lambda, generated by pure wedges in S
    std::size_t pure_pairs = 0;       // pairs (a, b) with lambda(a ^ b) = 0
};
LambdaData lambda_map(const BlackBoxGroup& f);
// lambda(a ^ b) against commutators of lifts moved by random elements of
// [F,F], over every pair of F^ab (or `samples` random pairs when larger).
// Empty on success, otherwise a witness.
std::string lambda_check(const LambdaData& d, std::uint64_t seed, std::size_t samples = 100);

// S / S_lambda, isomorphic to B0(F) by Pontryagin duality. Throws unless
// Z(F) = [F,F] or F is abelian.
FinAbGroup b0_closed_form(const LambdaData& d);

struct B0Result {
    FinAbGroup b0;
    std::string route;          // "bar" or "schur"
    Int coefficient = 0;        // N with Z/N coefficients on the bar route
    Int h2_order = 0;           // |H^2(F, Z/N)| on the bar route
    std::size_t test_subgroups = 0;
    std::optional<FinAbGroup> multiplier;
};
struct B0Options {
    Int bar_cap = Int{1} << 15;  // |F|^3 at most this for the bar route
    bool all_abelian = false;    // restrict to every abelian subgroup; needs |F| <= 64
    bool force_schur = false;
};
// Common kernel of restrictions of H^2(F, Z/|F|) to the subgroups generated by
// commuting pairs; above bar_cap, M(F)/M_0(F) from a pc presentation.
B0Result b0_oracle(const BlackBoxGroup& f, const B0Options& opt = {});

// H = <x (x) y : phi(x (x) y) = 0> inside Ker phi.
struct BrNr {
    Subgroup kernel;       // Ker phi in M (x) M
    Subgroup pure;         // H
    FinAbGroup quotient;   // Ker phi / H, dual to the unramified Brauer group
    bool kernel_equals_pure = false;  // checked element by element
    std::size_t pure_pairs = 0;
};
BrNr br_nr(const FinAbGroup& m, const AbHom& phi);
BrNr br_nr_bk(const BKDatum& d);

// Search over cyclic subgroups <v> of M (x) M for a nondegenerate
// phi: M (x) M -> (M (x) M)/<v>, trivial action, with Ker phi / H nonzero and
// a nonzero closed-form B0 of the crossed product. This phi is not of the
// induced-module family. Over (Z/2)^2 every candidate has B0 = 0 even though
// Ker phi / H = Z/2, so (Z/2)^3 is the smallest useful input.
struct NonBkExample {
    FinAbGroup M;
    AbElement v;
    Quotient phi;
    BrNr brnr;
    bool nondegenerate = false;
    CrossedProduct F;
    FinAbGroup b0_closed;
};
std::optional<NonBkExample> find_non_bk_example(const FinAbGroup& m);

struct CyclicRestriction {
    int generator = 0;
    int order = 1;
    Int h_order = 1;
};
struct ShaReport {
    int degree = 1;
    Int h_order = 1;
    FinAbGroup kernel;
    std::vector<AbElement> kernel_classes;  // generators as classes of H^r(G, M)
    std::vector<CyclicRestriction> cyclic;
    bool reverified = false;  // kernel representatives restrict to coboundaries
};
// Kernel of H^r(G, M) -> prod over cyclic C of H^r(C, M).
ShaReport sha_cyclic(const GModule& m, int r, Int bound = 0);

// Actions of C2 x C2 on Z/n through (Z/n)^x, n in {2, 4, 8}, searched for a
// nonzero cyclic kernel in degree 1.
struct ShaExample {
    std::string description;
    GModule module;
    ShaReport report;
};
std::optional<ShaExample> find_sha_example(Int bound = 0);

// Hom(G, Z/n) as values on the basis of G; G must have exponent dividing n.
std::vector<AbElement> characters(const FinAbGroup& g, Int n);
Int character_value(const FinAbGroup& g, Int n, const AbElement& chi, const AbElement& x);
// a in the span of the family, globally
bool span_contains(const FinAbGroup& g, Int n, const std::vector<AbElement>& family, const AbElement& a);
// a restricted to each cyclic <x> lies in the span of the restricted family;
// on failure `witness` receives a generator x.
bool cyclic_span_detect(const FinAbGroup& g, Int n, const std::vector<AbElement>& family, const AbElement& a,
                        AbElement* witness = nullptr);

struct SupersolvableProbe {
    bool simple = false;
    bool cyclic = false;
    Int order = 1;
};
SupersolvableProbe not_supersolvable_probe(const GModule& m);
// F_2[C_3] modulo the norm element
GModule norm_quotient_module();

}  // namespace bkcoh
