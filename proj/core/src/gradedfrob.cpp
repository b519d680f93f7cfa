#include "displaylab/gradedfrob.hpp"

#include <numeric>
#include <sstream>

#include "displaylab/errors.hpp"

namespace dlab {

namespace {

WittVector ppow(const BaseRing* R, int n, int k) {
    std::int64_t v = 1;
    for (int i = 0; i < k && i < 64; ++i) v *= R->p();
    // p^k vanishes at level n once k >= n
    if (k >= n) return WittVector::zero(R, n);
    return WittVector::from_int(R, n, v);
}

WMat pdiag(const BaseRing* R, int n, const std::vector<int>& e) {
    std::vector<WittVector> d;
    for (int k : e) {
        if (k < 0) fail(Errc::WeightOutOfRange, "negative p-power");
        d.push_back(ppow(R, n, k));
    }
    return WMat::diag(d);
}

WMat scalar_identity(int h, const WittVector& s) {
    return WMat::diag(std::vector<WittVector>(h, s));
}

}  // namespace

// ---------------------------------------------------------------- profiles and reps

WeightProfile WeightProfile::uniform(int slots, int a, int b) {
    WeightProfile P;
    P.a.assign(slots, a);
    P.b.assign(slots, b);
    return P;
}

void validate(const WeightProfile& P) {
    if (P.a.size() != P.b.size() || P.a.empty()) fail(Errc::InvalidArgument, "profile needs a and b per slot");
    for (int s = 0; s < P.slots(); ++s)
        if (P.a[s] > P.b[s]) fail(Errc::InvalidArgument, "profile interval with a > b");
    if (P.unitary) {
        const int S = P.slots();
        if (S % 2) fail(Errc::NotUnitary, "unitary profile needs an even number of slots");
        for (int s = 0; s < S; ++s)
            if (P.a[(s + S / 2) % S] + P.b[s] != 1) fail(Errc::NotUnitary, "unitary profile violates a_{s+r} + b_s = 1");
        if (!P.c.empty() && static_cast<int>(P.c.size()) != S) fail(Errc::NotUnitary, "one multiplier weight per slot");
    }
}

RepSpec RepSpec::std_rep(int factor) {
    RepSpec r;
    r.factor = factor;
    return r;
}

RepSpec RepSpec::dual(const RepSpec& x) {
    RepSpec r;
    r.kind = Kind::Dual;
    r.children = {x};
    return r;
}

RepSpec RepSpec::tensor(const RepSpec& x, const RepSpec& y) {
    RepSpec r;
    r.kind = Kind::Tensor;
    r.children = {x, y};
    return r;
}

std::string RepSpec::describe() const {
    switch (kind) {
        case Kind::Std: return "std" + std::to_string(factor);
        case Kind::Dual: return "dual(" + children[0].describe() + ")";
        case Kind::Tensor: return "(" + children[0].describe() + "*" + children[1].describe() + ")";
    }
    return "";
}

WMat rep_matrix(const RepSpec& rho, const std::vector<WMat>& g) {
    switch (rho.kind) {
        case RepSpec::Kind::Std:
            if (rho.factor < 0 || rho.factor >= static_cast<int>(g.size())) fail(Errc::InvalidArgument, "no such factor");
            return g[rho.factor];
        case RepSpec::Kind::Dual: return inverse(transpose(rep_matrix(rho.children[0], g)));
        case RepSpec::Kind::Tensor: return kron(rep_matrix(rho.children[0], g), rep_matrix(rho.children[1], g));
    }
    return {};
}

std::vector<int> rep_weights(const RepSpec& rho, const std::vector<std::vector<int>>& w) {
    switch (rho.kind) {
        case RepSpec::Kind::Std:
            if (rho.factor < 0 || rho.factor >= static_cast<int>(w.size())) fail(Errc::InvalidArgument, "no such factor");
            return w[rho.factor];
        case RepSpec::Kind::Dual: {
            auto x = rep_weights(rho.children[0], w);
            for (int& v : x) v = -v;
            return x;
        }
        case RepSpec::Kind::Tensor: {
            auto x = rep_weights(rho.children[0], w), y = rep_weights(rho.children[1], w);
            std::vector<int> r;
            for (int a : x)
                for (int b : y) r.push_back(a + b);
            return r;
        }
    }
    return {};
}

// ---------------------------------------------------------------- modules

void validate(const GradedFrobModule& M) {
    if (M.r < 1) fail(Errc::PeriodMismatch, "period must be positive");
    const auto r = static_cast<std::size_t>(M.r);
    if (M.ranks.size() != r || M.w.size() != r || M.F.size() != r || M.V.size() != r)
        fail(Errc::PeriodMismatch, "module data does not match the period");
    const BaseRing* R = M.ring();
    const int n = M.level();
    for (int s = 0; s < M.r; ++s) {
        const int t = (s + 1) % M.r;
        if (M.w[s] < 0) fail(Errc::WidthMismatch, "negative width");
        if (M.F[s].rows() != M.ranks[s] || M.F[s].cols() != M.ranks[t]) fail(Errc::RankMismatch, "F has the wrong size");
        if (M.V[s].rows() != M.ranks[t] || M.V[s].cols() != M.ranks[s]) fail(Errc::RankMismatch, "V has the wrong size");
        if (M.F[s].ring() != R || M.V[s].ring() != R) fail(Errc::RingMismatch, "module over mixed rings");
        if (M.F[s].level() != n || M.V[s].level() != n) fail(Errc::LevelMismatch, "module over mixed levels");
        const WittVector q = ppow(R, n, M.w[t]);
        if (M.V[s] * M.F[s] != scalar_identity(M.ranks[t], q)) fail(Errc::WidthMismatch, "V F is not p^w");
        if (M.F[s] * M.V[s] != scalar_identity(M.ranks[s], q)) fail(Errc::WidthMismatch, "F V is not p^w");
    }
}

GradedFrobModule unit_module(const BaseRing* R, int n, int r, int w) {
    GradedFrobModule M;
    M.r = r;
    M.ranks.assign(r, 1);
    M.w.assign(r, w);
    for (int s = 0; s < r; ++s) {
        M.F.push_back(WMat::identity(R, n, 1));
        M.V.push_back(WMat::diag({ppow(R, n, w)}));
    }
    return M;
}

GradedHom identity_hom(const GradedFrobModule& M) {
    GradedHom f;
    for (int s = 0; s < M.r; ++s) f.f.push_back(WMat::identity(M.ring(), M.level(), M.ranks[s]));
    return f;
}

GradedHom compose(const GradedHom& g, const GradedHom& f) {
    if (g.f.size() != f.f.size()) fail(Errc::PeriodMismatch, "homs of different periods");
    GradedHom h;
    for (std::size_t s = 0; s < f.f.size(); ++s) h.f.push_back(g.f[s] * f.f[s]);
    return h;
}

bool hom_check(const GradedHom& f, const GradedFrobModule& N, const GradedFrobModule& M) {
    if (N.r != M.r || static_cast<int>(f.f.size()) != N.r) fail(Errc::PeriodMismatch, "periods differ");
    if (N.w != M.w) fail(Errc::WidthMismatch, "modules of different widths");
    for (int s = 0; s < N.r; ++s)
        if (f.f[s].rows() != M.ranks[s] || f.f[s].cols() != N.ranks[s]) fail(Errc::RankMismatch, "hom has the wrong size");
    for (int s = 0; s < N.r; ++s) {
        const int t = (s + 1) % N.r;
        const WMat tf = mat_tau(f.f[t]);
        if (f.f[s] * N.F[s] != M.F[s] * tf) return false;
        if (tf * N.V[s] != M.V[s] * f.f[s]) return false;
    }
    return true;
}

GradedFrobModule tensor(const GradedFrobModule& M, const GradedFrobModule& N) {
    if (M.r != N.r) fail(Errc::PeriodMismatch, "periods differ");
    GradedFrobModule T;
    T.r = M.r;
    for (int s = 0; s < M.r; ++s) {
        T.ranks.push_back(M.ranks[s] * N.ranks[s]);
        T.w.push_back(M.w[s] + N.w[s]);
        T.F.push_back(kron(M.F[s], N.F[s]));
        T.V.push_back(kron(M.V[s], N.V[s]));
    }
    return T;
}

GradedFrobModule dual(const GradedFrobModule& M) {
    GradedFrobModule D = M;
    for (int s = 0; s < M.r; ++s) {
        D.F[s] = transpose(M.V[s]);
        D.V[s] = transpose(M.F[s]);
    }
    return D;
}

GradedFrobModule shift(const GradedFrobModule& M, int k) {
    GradedFrobModule S = M;
    for (int s = 0; s < M.r; ++s) {
        const int from = ((s + k) % M.r + M.r) % M.r;
        S.ranks[s] = M.ranks[from];
        S.w[s] = M.w[from];
        S.F[s] = M.F[from];
        S.V[s] = M.V[from];
    }
    return S;
}

namespace {

// composite of the semilinear maps around the grading, modulo p
bool nilpotent_mod_p(const GradedFrobModule& M, bool use_F) {
    if (M.ring()->kind() != BaseRing::Kind::FiniteField) fail(Errc::UnsupportedBase, "nilpotence test needs a finite field");
    const int total = std::accumulate(M.ranks.begin(), M.ranks.end(), 0);
    const int bound = M.level() * M.r * total;
    std::vector<WMat> P;
    for (int s = 0; s < M.r; ++s) P.push_back(mat_truncate(use_F ? M.F[s] : M.V[s], 1));
    auto all_zero = [&] {
        for (const auto& x : P)
            if (!x.is_zero()) return false;
        return true;
    };
    for (int step = 1; step <= bound; ++step) {
        if (all_zero()) return true;
        for (int s = 0; s < M.r; ++s) {
            const int t = (s + step) % M.r;
            const WMat next = mat_tau_pow(mat_truncate(use_F ? M.F[t] : M.V[t], 1), step);
            // F-chain: F_s tau(F_{s+1}) ...; V-chain: ... tau(V_{s+1}) V_s
            P[s] = use_F ? P[s] * next : next * P[s];
        }
    }
    return all_zero();
}

}  // namespace

bool is_F_nilpotent(const GradedFrobModule& M) { return nilpotent_mod_p(M, true); }
bool is_V_nilpotent(const GradedFrobModule& M) { return nilpotent_mod_p(M, false); }

// ---------------------------------------------------------------- realization

GradedFrobModule fib_realize(const std::vector<Display>& factors, const WeightProfile& P, const RepSpec& rho) {
    if (factors.empty()) fail(Errc::InvalidArgument, "no display given");
    validate(P);
    const int S = factors[0].shape.slots(), n = factors[0].level();
    const BaseRing* R = factors[0].ring();
    for (const auto& D : factors) {
        validate(D);
        if (D.shape.slots() != S) fail(Errc::PeriodMismatch, "factors of different periods");
        if (D.ring() != R) fail(Errc::RingMismatch, "factors over different rings");
        if (D.level() != n) fail(Errc::LevelMismatch, "factors of different levels");
    }
    if (P.slots() != S) fail(Errc::PeriodMismatch, "profile and display periods differ");

    std::vector<std::vector<int>> lam(S);
    std::vector<WMat> rhoU(S);
    for (int s = 0; s < S; ++s) {
        std::vector<std::vector<int>> w;
        std::vector<WMat> g;
        for (const auto& D : factors) {
            auto x = D.shape.weights[s];
            for (int& v : x) v += D.central;
            w.push_back(x);
            g.push_back(D.U[s]);
        }
        lam[s] = rep_weights(rho, w);
        rhoU[s] = rep_matrix(rho, g);
        for (int v : lam[s])
            if (v < P.a[s] || v > P.b[s]) fail(Errc::WeightOutOfRange, "representation weight outside the profile");
    }
    GradedFrobModule M;
    M.r = S;
    for (int s = 0; s < S; ++s) {
        const int t = (s + 1) % S;
        std::vector<int> be, al;
        for (int v : lam[t]) {
            be.push_back(P.b[t] - v);
            al.push_back(v - P.a[t]);
        }
        M.ranks.push_back(static_cast<int>(lam[s].size()));
        M.w.push_back(P.width(s));
        M.F.push_back(rhoU[s] * pdiag(R, n, be));
        M.V.push_back(pdiag(R, n, al) * inverse(rhoU[s]));
    }
    return M;
}

GradedHom fib_hom(const std::vector<Parabolic>& k, const RepSpec& rho) {
    if (k.empty()) fail(Errc::InvalidArgument, "no morphism given");
    const int S = k[0].shape.slots(), n = k[0].level() - 1;
    GradedHom f;
    for (int s = 0; s < S; ++s) {
        std::vector<WMat> g;
        for (const auto& x : k) g.push_back(mat_truncate(x.k[s], n));
        f.f.push_back(rep_matrix(rho, g));
    }
    return f;
}

namespace {

void check_unitary(const Display& D, const WeightProfile& P) {
    validate(P);
    if (!P.unitary) fail(Errc::NotUnitary, "profile is not unitary");
    if (!unitary_valid(D)) fail(Errc::NotUnitary, "display violates the pairing condition");
    if (P.slots() != D.shape.slots()) fail(Errc::PeriodMismatch, "profile and display periods differ");
    const int S = P.slots(), r = S / 2;
    for (int s = 0; s < S; ++s) {
        const auto& J = D.shape.J[s];
        const auto& Jr = D.shape.J[(s + r) % S];
        for (int i = 0; i < D.shape.h; ++i)
            for (int j = 0; j < D.shape.h; ++j)
                if (Jr[i][j] != -J[j][i]) fail(Errc::NotUnitary, "pairing is not skew");
    }
}

}  // namespace

std::vector<WMat> unitary_pairing_maps(const Display& D, const WeightProfile& P) {
    check_unitary(D, P);
    std::vector<WMat> J;
    for (int s = 0; s < D.shape.slots(); ++s) J.push_back(pairing_matrix(D.shape, s, D.ring(), D.level()));
    return J;
}

bool unitary_pairing_check(const Display& D, const WeightProfile& P) {
    const auto J = unitary_pairing_maps(D, P);
    const int S = D.shape.slots(), r = S / 2;
    const GradedFrobModule M = fib_realize(D, P);
    // multiplier module: rank one, weight c_s in a zero-width profile
    std::vector<WMat> cU;
    for (int s = 0; s < S; ++s) cU.push_back(WMat::diag({D.multiplier[s]}));
    std::vector<int> cw = P.c.empty() ? std::vector<int>(S, 1) : P.c;
    Display chi{Shape::from_weights(std::vector<std::vector<int>>(S, {1})), cU, 0, {}};
    WeightProfile cp;
    cp.a = cw;
    cp.b = cw;
    for (int s = 1; s < S; ++s)
        if (cw[s] != cw[0]) fail(Errc::NotUnitary, "multiplier weights must be constant");
    chi.central = cw[0] - 1;  // weight 1 shifted to c
    const GradedFrobModule X = fib_realize(chi, cp);
    GradedHom psi{J};
    return hom_check(psi, shift(M, r), tensor(X, dual(M)));
}

}  // namespace dlab
