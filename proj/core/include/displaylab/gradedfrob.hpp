#pragma once
#include <string>
#include <vector>

#include "displaylab/display.hpp"

namespace dlab {

// Z/rZ-graded module with F_s : A (x)_tau M_{s+1} -> M_s and
// V_s : M_s -> A (x)_tau M_{s+1}, stored as plain matrices; the tau-twist is
// on the source, so composites twist the later factor entrywise.
//   F_s is ranks[s] x ranks[s+1], V_s is ranks[s+1] x ranks[s],
//   V_s F_s = p^{w_{s+1}} and F_s V_s = p^{w_{s+1}}.
struct GradedFrobModule {
    int r = 0;
    std::vector<int> ranks;
    std::vector<int> w;
    std::vector<WMat> F, V;

    const BaseRing* ring() const { return F.at(0).ring(); }
    int level() const { return F.at(0).level(); }
};

struct GradedHom {
    std::vector<WMat> f;  // f_s : N_s -> M_s, ranks(M)[s] x ranks(N)[s]
};

struct WeightProfile {
    std::vector<int> a, b;  // per slot
    bool unitary = false;
    std::vector<int> c;     // multiplier weights (unitary)

    static WeightProfile uniform(int slots, int a, int b);
    int slots() const { return static_cast<int>(a.size()); }
    int width(int s) const { return b.at(s) - a.at(s); }
};
void validate(const WeightProfile& P);

// Representations: std of a factor, dual, tensor product.
struct RepSpec {
    enum class Kind { Std, Dual, Tensor };
    Kind kind = Kind::Std;
    int factor = 0;
    std::vector<RepSpec> children;

    static RepSpec std_rep(int factor = 0);
    static RepSpec dual(const RepSpec& x);
    static RepSpec tensor(const RepSpec& x, const RepSpec& y);
    static RepSpec adjoint(int factor = 0) { return tensor(std_rep(factor), dual(std_rep(factor))); }
    std::string describe() const;
};
WMat rep_matrix(const RepSpec& rho, const std::vector<WMat>& g);
std::vector<int> rep_weights(const RepSpec& rho, const std::vector<std::vector<int>>& w);

void validate(const GradedFrobModule& M);
GradedFrobModule unit_module(const BaseRing* R, int n, int r, int w = 0);
GradedHom identity_hom(const GradedFrobModule& M);
GradedHom compose(const GradedHom& g, const GradedHom& f);  // g after f
bool hom_check(const GradedHom& f, const GradedFrobModule& N, const GradedFrobModule& M);

GradedFrobModule tensor(const GradedFrobModule& M, const GradedFrobModule& N);
GradedFrobModule dual(const GradedFrobModule& M);
GradedFrobModule shift(const GradedFrobModule& M, int k);  // slot s becomes slot s+k

bool is_F_nilpotent(const GradedFrobModule& M);
bool is_V_nilpotent(const GradedFrobModule& M);

GradedFrobModule fib_realize(const std::vector<Display>& factors, const WeightProfile& P, const RepSpec& rho);
inline GradedFrobModule fib_realize(const Display& U, const WeightProfile& P) {
    return fib_realize(std::vector<Display>{U}, P, RepSpec::std_rep());
}
// rho(trunc k) per slot: the image of display morphisms
GradedHom fib_hom(const std::vector<Parabolic>& k, const RepSpec& rho);

// Pairing maps Fib_{s+r} -> chi (x) dual(Fib)_s for a unitary display.
std::vector<WMat> unitary_pairing_maps(const Display& D, const WeightProfile& P);
// hom_check of the pairing maps between shift(Fib, r) and chi (x) dual(Fib)
bool unitary_pairing_check(const Display& D, const WeightProfile& P);

}  // namespace dlab
