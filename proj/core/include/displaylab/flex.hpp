#pragma once
#include <string>
#include <vector>

#include "displaylab/display.hpp"
#include "displaylab/gradedfrob.hpp"

namespace dlab {

// d : Z -> Z with d(w + r) = d(w) + r, stored on [0, r).
struct Multidegree {
    int r = 1;
    std::vector<int> base;

    static Multidegree identity(int r);
    static Multidegree translation(int r, int c);

    int operator()(int omega) const;
    int star(int sigma) const;  // max{w | d(w) <= sigma}
    int norm() const;           // max d(w) - w
    bool is_translation() const;  // d(w) = w + c with c >= 1
    Multidegree star_after() const;  // d* o d
    std::string describe() const;
};

struct Report {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

Report validate_multidegree(const Multidegree& d);

// Gauge values on one period: 2r entries if unitary, r otherwise.
struct Gauge {
    int r = 1;
    bool unitary = false;
    std::vector<int> j;

    int period() const { return unitary ? 2 * r : r; }
    int operator()(int omega) const;
};

Report validate_gauge(const Gauge& j, const Multidegree& d, const WeightProfile& P);

struct TildeProfile {
    std::vector<int> a, b, w;  // per omega in [0, period)
    WeightProfile profile(bool unitary) const;
};
TildeProfile tilde_profile(const Gauge& j, const Multidegree& d, const WeightProfile& P);

// ---- Flex^d on graded modules
// M.r must be a multiple of d.r
GradedFrobModule flex_module(const Multidegree& d, const GradedFrobModule& M);
GradedHom flex_hom(const Multidegree& d, const GradedHom& f);
std::vector<int> flex_u(const Multidegree& d, const std::vector<int>& w);  // u_w per slot
int flex_u_max(const Multidegree& d, const std::vector<int>& w);
// back-map: unflex_hom(d, flex_hom(d, f), N, M) = p^u f
GradedHom unflex_hom(const Multidegree& d, const GradedHom& ft, const GradedFrobModule& N, const GradedFrobModule& M);
GradedFrobModule truncate(const GradedFrobModule& M, int m);

// ---- Flex^{d,j} on displays
struct FlexSpec {
    Multidegree d;
    Gauge j;
    WeightProfile P;
    RepSpec rho = RepSpec::std_rep();
};

int flex_width(const FlexSpec& s);  // max width of the profile
// weights of the flexed cocharacter per slot, given the factors' weights
std::vector<std::vector<int>> flexed_weights(const FlexSpec& s, const std::vector<Shape>& shapes,
                                             const std::vector<int>& central);
Display flex_display(const FlexSpec& s, const std::vector<Display>& factors);
inline Display flex_display(const FlexSpec& s, const Display& U) { return flex_display(s, std::vector<Display>{U}); }
// k : O -> U at level n+w+1 gives a morphism between the flexed displays at level n+1
Parabolic flex_morphism(const FlexSpec& s, const std::vector<Parabolic>& k, const std::vector<int>& central = {});
inline Parabolic flex_morphism(const FlexSpec& s, const Parabolic& k, int central = 0) {
    return flex_morphism(s, std::vector<Parabolic>{k}, {central});
}

// Flex^d(Fib(rho, U)) truncated vs Flex^{d* d}(Fib(std, flexed U)), exact matrix equality
bool rectify_check(const FlexSpec& s, const std::vector<Display>& factors);

// ---- products of gauged representations
bool is_multiplyable(const std::vector<int>& pi, const std::vector<TildeProfile>& tildes);

// Finite model of the embeddings with the permutation theta and the involution star.
struct ThetaGaugeInstance {
    std::vector<int> theta, star;
    std::vector<int> dplus;
    std::vector<std::vector<int>> j, a, b;  // [index][embedding]
    std::vector<std::vector<int>> Pi;
    int size() const { return static_cast<int>(theta.size()); }
    int indices() const { return static_cast<int>(j.size()); }
    int d(int iota) const;  // theta^{-d+(iota)}(iota)
};

struct ThetaReport {
    std::vector<std::string> structure, g1, g2, g3, g4;
    bool ok() const { return structure.empty() && g1.empty() && g2.empty() && g3.empty() && g4.empty(); }
};
ThetaReport validate_theta_gauge(const ThetaGaugeInstance& inst);

struct LocalGauges {
    Multidegree d;
    bool unitary = false;
    std::vector<Gauge> j;
    std::vector<WeightProfile> P;
};
LocalGauges translate_local(const ThetaGaugeInstance& inst, int iota);

}  // namespace dlab
