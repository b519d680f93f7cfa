#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "displaylab/matrix.hpp"

namespace dlab {

// Cocharacter data per graded slot. Linear shapes have one slot; unitary
// shapes have 2r slots with d_{s+r} = h - d_s and pairing matrices J_s.
struct Shape {
    enum class Kind { Linear, Graded, Unitary };
    Kind kind = Kind::Linear;
    int h = 0;
    std::vector<std::vector<int>> weights;               // per slot, entries in {0,1}
    std::vector<std::vector<std::vector<long>>> J;       // unitary only, integer matrices per slot

    static Shape linear(int h, int d);
    static Shape graded(int h, const std::vector<int>& d);
    // d given on [0, r); J_s = antidiagonal ones for s < r and J_{s+r} = -J_s^T
    static Shape unitary(int h, const std::vector<int>& d_half);
    static Shape from_weights(const std::vector<std::vector<int>>& w);

    int slots() const { return static_cast<int>(weights.size()); }
    int half() const { return kind == Kind::Unitary ? slots() / 2 : slots(); }
    int d(int s) const;
    bool standard() const;  // every slot of the form (1^d, 0^{h-d})
    bool operator==(const Shape& o) const { return kind == o.kind && h == o.h && weights == o.weights && J == o.J; }
    bool operator!=(const Shape& o) const { return !(*this == o); }
    std::string describe() const;
};

struct Display {
    Shape shape;
    std::vector<WMat> U;                 // one invertible h x h matrix per slot, level n
    int central = 0;                     // weight shift recorded by twist_central
    std::vector<WittVector> multiplier;  // unitary multiplier display c_s, one per slot

    const BaseRing* ring() const { return U.at(0).ring(); }
    int level() const { return U.at(0).level(); }
    bool operator==(const Display& o) const {
        return shape == o.shape && U == o.U && central == o.central && multiplier == o.multiplier;
    }
};

// Element of the parabolic at level n+1. `hat` allows B-block entries whose
// leading component lies in eps R (dual numbers only); their linear part is
// ignored by the twisted Frobenius.
struct Parabolic {
    Shape shape;
    std::vector<WMat> k;
    std::vector<WittVector> m;  // unitary similitude factor per slot
    bool hat = false;

    const BaseRing* ring() const { return k.at(0).ring(); }
    int level() const { return k.at(0).level(); }
    bool operator==(const Parabolic& o) const { return shape == o.shape && k == o.k && m == o.m; }
};

// ---- basic construction and validation
Display make_display(const Shape& s, const std::vector<WMat>& U);
Display identity_display(const Shape& s, const BaseRing* R, int n);
Parabolic make_parabolic(const Shape& s, const std::vector<WMat>& k);
Parabolic identity_parabolic(const Shape& s, const BaseRing* R, int n1);
void validate(const Display& D);
void validate(const Parabolic& k);
bool in_parabolic(const WMat& k, const std::vector<int>& weights, bool hat = false);
Display truncate(const Display& D, int m);
Parabolic truncate(const Parabolic& k, int m1);

// ---- twisted Frobenius and the groupoid
WMat phi_twist(const WMat& k, const std::vector<int>& weights, bool hat = false);
std::vector<WMat> phi_twist(const Parabolic& k);  // slot s gets Phi^{mu_{s}}(k_s)
bool is_morphism(const Parabolic& k, const Display& src, const Display& dst);
Display twist_conjugate(const Display& U, const Parabolic& k);
Parabolic compose(const Parabolic& k2, const Parabolic& k1);  // k2 after k1
Parabolic inverse(const Parabolic& k);

struct BruteForceOptions {
    std::uint64_t limit = 10'000'000;
    const Parabolic* residue = nullptr;  // dual numbers: only k reducing to this
    bool normalize_top = false;          // fix eps parts of the top components to zero
};
// naive count of candidates
long double search_space_size(const Shape& s, const BaseRing* R, int n, const BruteForceOptions& o = {});
std::vector<Parabolic> brute_force_isoms(const Display& U1, const Display& U2, const BruteForceOptions& o = {});

// every element of the parabolic group at level n1 over a finite field, in
// lexicographic order of the slot matrices; SearchSpaceTooLarge past `limit`
std::vector<Parabolic> parabolic_group(const Shape& s, const BaseRing* R, int n1, std::uint64_t limit = 10'000'000);
bool lex_less(const Display& a, const Display& b);

// ---- realization as a module with F and V^{-1}
struct DisplayModule {
    int n = 0, h = 0, d = 0;
    WMat U;       // level n
    WMat Fsharp;  // U diag(1_d, p)
    WMat Vsharp;  // diag(p 1_d, 1) U^{-1}
    // F: W_{n+1}^h -> W_n^h and V^{-1}: N -> W_n^h, N = I^d + W^{h-d}
    std::vector<WittVector> apply_F(const std::vector<WittVector>& m) const;
    std::vector<WittVector> apply_Vinv(const std::vector<WittVector>& m) const;
};
DisplayModule co_realize(const Display& U);
// does k (level n+1, acting on the source module) intertwine src -> dst
bool intertwines(const WMat& k, const DisplayModule& src, const DisplayModule& dst);

Display twist_central(const Display& U, int c);

// ---- interpolation families
struct Family {
    Shape shape;
    const BaseRing* field = nullptr;
    const BaseRing* ring = nullptr;  // LocalizedPoly(field, hbar)
    upoly::P hbar;
    std::vector<WMat> Z;             // over ring
    // chart data: Z = X Y with X = U0 + [t](A - U0), Y = 1 + [t](B - 1)
    std::vector<WMat> U0, A, B;
    bool two_factor = false;
};
struct InterpolationOptions {
    bool force_two_factor = false;
    std::uint64_t seed = 1;
};
Family interpolate_family(const Display& U0, const Display& U1, const InterpolationOptions& o = {});
// embedding of the family's field into `target` (smallest root of its modulus)
fe embed_field(const BaseRing* from, const BaseRing* to, fe a);
bool is_pole(const Family& f, const BaseRing* target, fe point);
Elem evaluate_elem(const Family& f, const BaseRing* target, const Elem& x, fe point);
Display evaluate_family(const Family& f, const BaseRing* target, fe point);
// same value, computed from the chart data directly over the target field
Display evaluate_family_fast(const Family& f, const BaseRing* target, fe point);

// ---- unitary shapes
Display make_unitary_display(const Shape& s, const std::vector<WMat>& U_half, const std::vector<WittVector>& c = {});
bool unitary_valid(const Display& D);
WMat pairing_matrix(const Shape& s, int slot, const BaseRing* R, int n);
Parabolic make_unitary_parabolic(const Shape& s, const std::vector<WMat>& k_half, const std::vector<WittVector>& m);

// ---- square-zero deformations over dual numbers
Display reduce_mod_eps(const Display& D);
Parabolic reduce_mod_eps(const Parabolic& k);
Display lift_to_dual(const Display& D, const BaseRing* dual);
Parabolic lift_to_dual(const Parabolic& k, const BaseRing* dual);
bool square_zero_nilpotent(const Display& U, const Display& O);
Parabolic lift_morphism_square_zero(const Display& U, const Display& O, const Parabolic& h0);
// the same solution through a dense linear solve over F_p (cross-check)
Parabolic lift_morphism_square_zero_linear(const Display& U, const Display& O, const Parabolic& h0);
// e^+(N) = (1 [N]; 0 1) with N a d x (h-d) matrix of eps-multiples
WMat unipotent_plus(const Shape& s, const std::vector<std::vector<Elem>>& N, const BaseRing* dual, int n);
std::vector<std::vector<Elem>> deformation_difference(const Display& U, const Display& Uref);

}  // namespace dlab
