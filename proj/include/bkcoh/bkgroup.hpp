#pragma once
// The crossed product F = Z x_Phi (M (+) M) built from an equivariant
// phi: M (x) M -> Z, twisted forms, the connecting map for F -> M (+) M,
// q-relevability and nonabelian 2-cocycles over a finite quotient Q.

#include <optional>
#include <string>

#include "bkcoh/pcgroup.hpp"
#include "bkcoh/shapiro.hpp"

namespace bkcoh {

struct CPElement {
    AbElement z;  // in Z
    AbElement a;  // in M (+) M, x first then y
    bool operator==(const CPElement&) const = default;
};

class CrossedProduct {
public:
    // phi must be equivariant for the actions of the common group.
    static CrossedProduct make(GModule m, GModule z, AbHom phi);

    const GModule& M() const { return m_; }
    const GModule& MM() const { return mm_; }
    const GModule& pair() const { return pair_; }  // M (+) M
    const GModule& Z() const { return z_; }
    const AbHom& phi() const { return phi_; }
    const GroupPtr& group() const { return m_.group; }
    Int order() const;

    AbElement x_part(const AbElement& a) const;
    AbElement y_part(const AbElement& a) const;
    AbElement join(const AbElement& x, const AbElement& y) const;
    AbElement phi_of(const AbElement& x, const AbElement& y) const;  // phi(x (x) y)
    // Phi((x,y),(x',y')) = phi(x (x) y'); the phi_transpose mutation swaps the arguments.
    AbElement big_phi(const AbElement& a, const AbElement& b) const;

    CPElement identity() const { return {z_.ab.zero(), pair_.ab.zero()}; }
    CPElement central(const AbElement& z) const { return {z, pair_.ab.zero()}; }
    CPElement lift(const AbElement& a) const { return {z_.ab.zero(), a}; }
    CPElement mul(const CPElement& f, const CPElement& g) const;
    CPElement inv(const CPElement& f) const;
    CPElement act(int s, const CPElement& f) const;  // coordinate-wise
    CPElement power(const CPElement& f, Int k) const;  // k >= 0, by repeated multiplication
    // f g f^-1 g^-1 and f g f^-1 from the group law
    CPElement commutator(const CPElement& f, const CPElement& g) const;
    CPElement conjugate(const CPElement& f, const CPElement& g) const;
    // closed forms: (Phi(a,a') - Phi(a',a), 0) and (z' + Phi(a,a') - Phi(a',a), a')
    CPElement commutator_closed(const CPElement& f, const CPElement& g) const;
    CPElement conjugate_closed(const CPElement& f, const CPElement& g) const;

    Int index(const CPElement& f) const;
    CPElement element(Int idx) const;
    // Table-driven view for subgroup sweeps; honours the mutation active at call time.
    BlackBoxGroup black_box(Int cap = Int{1} << 16) const;

private:
    GModule m_, mm_, pair_, z_;
    AbHom phi_;
};

// Left and right radicals of (x, y) -> phi(x (x) y) are both zero.
bool is_nondegenerate(const FinAbGroup& m, const AbHom& phi);

struct BKDatum {
    FinAbGroup A;
    ShapiroSetup shapiro;  // G, H, M = Ind, M (x) M, j
    Quotient coker;        // Z = coker j, projection phi
    CrossedProduct F;
};
BKDatum build_bk(GroupPtr g, const std::vector<int>& normal_subgroup, const FinAbGroup& a);
// Invariants of the datum; empty on success, otherwise one message per failure.
std::vector<std::string> bk_invariant_failures(const BKDatum& d);

struct CenterDerived {
    ElementSet center, derived;
    bool center_is_z = false, derived_is_z = false;
    bool radical_center_is_z = false;  // Z(F) = Z x radical, from the bilinear form
    Int z_order = 1;
};
CenterDerived center_and_derived(const CrossedProduct& f);

// Cocycles on Q pulled back along pi: Q -> group of F.
struct TwistModel {
    CrossedProduct F;
    GroupPtr Q;
    std::vector<int> pi;
    GModule M, MM, pair, Z;
    AbHom phi;
    Pairing tensor;  // M x M -> M (x) M
    std::shared_ptr<const Cohomology> h1_pair, h1_z, h2_z;
    std::optional<ShortExact> kernel_seq;  // 0 -> Ker phi -> M (x) M -> Z -> 0
    std::shared_ptr<const Cohomology> h2_kernel;
};
TwistModel make_twist_model(const CrossedProduct& f, GroupPtr q, const std::vector<int>& pi, Int bound = 0);

Cochain x_cochain(const TwistModel& t, const Cochain& a);
Cochain y_cochain(const TwistModel& t, const Cochain& a);
Cochain pair_cochain(const TwistModel& t, const Cochain& x, const Cochain& y);
// (u (x) v)_s = u_s (x) v_s for two 1-cochains in M
Cochain pointwise_tensor(const TwistModel& t, const Cochain& u, const Cochain& v);

// sigma ._twist f = (0, twist_s) . (s f) . (0, twist_s)^-1
CPElement twisted_act(const TwistModel& t, const Cochain& twist, int s, const CPElement& f);
CPElement twisted_act_closed(const TwistModel& t, const Cochain& twist, int s, const CPElement& f);

// phi_*(tx u y + x u ty + x u y + d(x (x) ty)) for twist = (tx, ty), a = (x, y)
Cochain twisted_obstruction(const TwistModel& t, const Cochain& twist, const Cochain& a);
// (z, a) is a twisted cocycle iff a is a cocycle and dz + obstruction = 0
bool twisted_cocycle_formula(const TwistModel& t, const Cochain& twist, const Cochain& z, const Cochain& a);
bool twisted_cocycle_definitional(const TwistModel& t, const Cochain& twist, const Cochain& z, const Cochain& a);

// phi_*((x + tx) u (y + ty) - tx u ty)
Cochain delta_formula(const TwistModel& t, const Cochain& twist, const Cochain& a);
// f_s (s ._twist f_t) f_st^-1 for the lift f = (0, a)
Cochain delta_definitional(const TwistModel& t, const Cochain& twist, const Cochain& a);

struct DeltaComparison {
    std::size_t cases = 0;
    bool classes_agree = true;   // formula and definitional paths give one class
    bool cochains_agree = true;  // definitional = obstruction, value by value
    std::string witness;
};
DeltaComparison compare_delta_paths(const TwistModel& t, const Cochain& twist, const std::vector<Cochain>& cocycles);

struct WitnessCheck {
    Cochain c;
    bool c_is_cocycle = false;
    bool c_is_coboundary = false;
    std::optional<Cochain> zeta;
    bool conjugation_verified = false;  // only meaningful when c is a coboundary
    std::optional<bool> connecting_identity;  // delta[c] = [lambda' - lambda], phi surjective
    std::string witness;
};
// f = (z, a), f' = (z2, a2) twisted cocycles with a2 = a + d(alpha), alpha = (xi, eta).
WitnessCheck cohomologous_witness(const TwistModel& t, const Cochain& twist, const Cochain& z, const Cochain& a,
                                  const Cochain& z2, const Cochain& a2, const AbElement& alpha);
// f' = (zeta, alpha)^-1 f (s ._twist (zeta, alpha))
void conjugate_twisted_cocycle(const TwistModel& t, const Cochain& twist, const Cochain& z, const Cochain& a,
                               const AbElement& zeta, const AbElement& alpha, Cochain& z2, Cochain& a2);
// Some z with (z, a) a twisted cocycle, if the obstruction is a coboundary.
std::optional<Cochain> twisted_lift(const TwistModel& t, const Cochain& twist, const Cochain& a);

struct QRelevance {
    int q = 1;
    int sigma = 0;
    bool power_identity = true;    // (0,a)^q = (q(q-1)/2 Phi(a,a), qa) for every a
    bool conjugators_ok = true;    // (0,a')(0,qa)(0,a')^-1 = (0,a)^q on the eigen-subgroup
    Int eigen_size = 0;            // |{a : s a = q a}|
    Int relevable = 0;             // q-relevable classes, by search over lifts and conjugators
    bool relevable_is_eigen = true;
    bool generated = true;         // relevable classes generate the eigen-subgroup
    std::string witness;
};
QRelevance q_relevance(const CrossedProduct& f, int sigma, int q);

// Nonabelian 2-cocycle (rho, u) over Q with values in a black-box group.
struct NonabTwoCocycle {
    GroupPtr Q;
    std::vector<std::vector<int>> rho;  // rho[s][f]
    std::vector<int> u;                 // u[s * |Q| + t]
};
// (rho, 1) for the coordinate-wise action pulled back to Q
NonabTwoCocycle standard_cocycle(const TwistModel& t, const BlackBoxGroup& f);
bool validate_nonab(const BlackBoxGroup& f, const NonabTwoCocycle& c, std::string* witness = nullptr);

enum class Verdict { yes, no, undecided };
std::string to_string(Verdict v);
struct Neutrality {
    Verdict verdict = Verdict::undecided;
    std::vector<int> conjugator;  // c: Q -> F with c . (rho, u) = (rho', 1)
    std::size_t searched = 0;
};
Neutrality is_neutral_bruteforce(const BlackBoxGroup& f, const NonabTwoCocycle& c, std::size_t budget = 1u << 16);
// u' = beta u pointwise, beta a 2-cocycle of Q in Z
NonabTwoCocycle act_h2z(const TwistModel& t, const Cochain& beta, const NonabTwoCocycle& c);
// Search H^1(Q, M (+) M) for alpha with Delta(alpha) = [beta].
std::optional<Cochain> neutrality_via_delta(const TwistModel& t, const Cochain& beta);

}  // namespace bkcoh
