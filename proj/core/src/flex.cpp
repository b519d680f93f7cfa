#include "displaylab/flex.hpp"

#include <algorithm>
#include <sstream>

#include "displaylab/errors.hpp"

namespace dlab {

namespace {

int md(int a, int m) { return ((a % m) + m) % m; }
int fdiv(int a, int m) { return (a - md(a, m)) / m; }
int H0(int l) { return l >= 1 ? 1 : 0; }

std::string str(const char* what, int x, const char* w2 = nullptr, int y = 0) {
    std::ostringstream os;
    os << what << x;
    if (w2) os << w2 << y;
    return os.str();
}

WMat pscale(const WMat& X, int v) {
    if (v >= X.level()) return WMat(X.ring(), X.level(), X.rows(), X.cols());
    std::int64_t q = 1;
    for (int i = 0; i < v; ++i) q *= X.ring()->p();
    return scale_int(X, q);
}

}  // namespace

// ---------------------------------------------------------------- multidegrees

Multidegree Multidegree::identity(int r) { return translation(r, 0); }

Multidegree Multidegree::translation(int r, int c) {
    Multidegree d;
    d.r = r;
    for (int w = 0; w < r; ++w) d.base.push_back(w + c);
    return d;
}

int Multidegree::operator()(int omega) const { return base.at(md(omega, r)) + r * fdiv(omega, r); }

int Multidegree::norm() const {
    int m = 0;
    for (int w = 0; w < r; ++w) m = std::max(m, (*this)(w) - w);
    return m;
}

int Multidegree::star(int sigma) const {
    // d(sigma) >= sigma, and d(w) <= w + |d| bounds the walk
    int w = sigma;
    for (int steps = 0; (*this)(w) > sigma; --w)
        if (++steps > norm() + 2 * r + 2) fail(Errc::InvalidMultidegree, "d* is not defined");
    return w;
}

bool Multidegree::is_translation() const {
    const int c = (*this)(0);
    if (c < 1) return false;
    for (int w = 1; w < r; ++w)
        if ((*this)(w) - w != c) return false;
    return true;
}

Multidegree Multidegree::star_after() const {
    Multidegree e;
    e.r = r;
    for (int w = 0; w < r; ++w) e.base.push_back(star((*this)(w)));
    return e;
}

std::string Multidegree::describe() const {
    std::ostringstream os;
    os << "d[r=" << r << "](";
    for (int w = 0; w < r; ++w) os << (w ? "," : "") << base[w];
    os << ")";
    return os.str();
}

Report validate_multidegree(const Multidegree& d) {
    Report rep;
    if (d.r < 1) {
        rep.violations.push_back("period must be positive");
        return rep;
    }
    if (static_cast<int>(d.base.size()) != d.r) {
        rep.violations.push_back("need exactly r base values");
        return rep;
    }
    for (int w = 0; w < d.r; ++w)
        if (d(w) < w) rep.violations.push_back(str("d(w) < w at w=", w));
    for (int w = -d.r; w < 2 * d.r; ++w)
        if (d(w) > d(w + 1)) rep.violations.push_back(str("not monotone at w=", w));
    return rep;
}

// ---------------------------------------------------------------- gauges

int Gauge::operator()(int omega) const { return j.at(md(omega, period())); }

Report validate_gauge(const Gauge& j, const Multidegree& d, const WeightProfile& P) {
    if (!validate_multidegree(d).ok()) fail(Errc::InvalidMultidegree, "gauge over an invalid multidegree");
    Report rep;
    const int S = j.period();
    if (j.r != d.r) rep.violations.push_back("gauge and multidegree periods differ");
    if (static_cast<int>(j.j.size()) != S) rep.violations.push_back("need one gauge value per slot");
    if (P.slots() != S) rep.violations.push_back("profile has the wrong number of slots");
    if (P.unitary != j.unitary) rep.violations.push_back("profile and gauge disagree on unitarity");
    if (!rep.ok()) return rep;
    if (j.unitary)
        for (int w = 0; w < j.r; ++w)
            if (j(w + j.r) != -j(w)) rep.violations.push_back(str("sign rule fails at w=", w));
    const int nd = d.norm();
    for (int s = 0; s < S; ++s)
        for (int l = P.a[s]; l < P.b[s]; ++l) {
            int hits = 0;
            for (int w = s - nd; w <= s; ++w)
                if (d(w) == s && j(w) == l) ++hits;
            if (hits != 1) rep.violations.push_back(str("unique cut fails for sigma=", s, ", l=", l));
        }
    return rep;
}

WeightProfile TildeProfile::profile(bool unitary) const {
    WeightProfile P;
    P.a = a;
    P.b = b;
    P.unitary = unitary;
    return P;
}

TildeProfile tilde_profile(const Gauge& j, const Multidegree& d, const WeightProfile& P) {
    if (!validate_multidegree(d).ok()) fail(Errc::InvalidMultidegree, "tilde profile over an invalid multidegree");
    const int S = j.period();
    if (P.slots() != S || static_cast<int>(j.j.size()) != S) fail(Errc::PeriodMismatch, "gauge and profile periods differ");
    TildeProfile t;
    for (int w = 0; w < S; ++w) {
        const int s = md(d(w), S);
        t.a.push_back(H0(P.a[s] - j(w)));
        t.b.push_back(H0(P.b[s] - j(w)));
        t.w.push_back(t.b.back() - t.a.back());
    }
    return t;
}

// ---------------------------------------------------------------- modules

GradedFrobModule truncate(const GradedFrobModule& M, int m) {
    GradedFrobModule T = M;
    for (auto& x : T.F) x = mat_truncate(x, m);
    for (auto& x : T.V) x = mat_truncate(x, m);
    return T;
}

namespace {

void check_d(const Multidegree& d) {
    const auto rep = validate_multidegree(d);
    if (!rep.ok()) fail(Errc::InvalidMultidegree, rep.violations[0]);
}

// F_a tau(F_{a+1}) ... tau^{m-1}(F_{a+m-1}), as a map into slot a
WMat F_chain(const GradedFrobModule& M, int a, int m) {
    const int S = M.r;
    WMat C = WMat::identity(M.ring(), M.level(), M.ranks[md(a, S)]);
    for (int i = 0; i < m; ++i) C = C * mat_tau_pow(M.F[md(a + i, S)], i);
    return C;
}

// tau^{m-1}(V_{a+m-1}) ... V_a
WMat V_chain(const GradedFrobModule& M, int a, int m) {
    const int S = M.r;
    WMat C = WMat::identity(M.ring(), M.level(), M.ranks[md(a, S)]);
    for (int i = 0; i < m; ++i) C = mat_tau_pow(M.V[md(a + i, S)], i) * C;
    return C;
}

}  // namespace

GradedFrobModule flex_module(const Multidegree& d, const GradedFrobModule& M) {
    check_d(d);
    validate(M);
    if (M.r % d.r) fail(Errc::PeriodMismatch, "module period is not a multiple of the multidegree period");
    const int S = M.r;
    GradedFrobModule X;
    X.r = S;
    for (int w = 0; w < S; ++w) {
        const int D = d(w), D1 = d(w + 1);
        X.ranks.push_back(M.ranks[md(D, S)]);
        int wd = 0;
        for (int s = d(w - 1) + 1; s <= D; ++s) wd += M.w[md(s, S)];
        X.w.push_back(wd);
        X.F.push_back(mat_tau_pow(F_chain(M, D, D1 - D), D - w));
        X.V.push_back(mat_tau_pow(V_chain(M, D, D1 - D), D - w));
    }
    validate(X);
    return X;
}

GradedHom flex_hom(const Multidegree& d, const GradedHom& f) {
    check_d(d);
    const int S = static_cast<int>(f.f.size());
    if (S == 0 || S % d.r) fail(Errc::PeriodMismatch, "hom period is not a multiple of the multidegree period");
    GradedHom g;
    for (int w = 0; w < S; ++w) g.f.push_back(mat_tau_pow(f.f[md(d(w), S)], d(w) - w));
    return g;
}

std::vector<int> flex_u(const Multidegree& d, const std::vector<int>& w) {
    check_d(d);
    const int S = static_cast<int>(w.size());
    if (S == 0 || S % d.r) fail(Errc::PeriodMismatch, "width period is not a multiple of the multidegree period");
    std::vector<int> u;
    for (int o = 0; o < S; ++o) {
        int x = 0;
        for (int s = o + 1; s <= d(o); ++s) x += w[md(s, S)];
        u.push_back(x);
    }
    return u;
}

int flex_u_max(const Multidegree& d, const std::vector<int>& w) {
    const auto u = flex_u(d, w);
    return *std::max_element(u.begin(), u.end());
}

GradedHom unflex_hom(const Multidegree& d, const GradedHom& ft, const GradedFrobModule& N, const GradedFrobModule& M) {
    check_d(d);
    if (N.r != M.r || static_cast<int>(ft.f.size()) != N.r) fail(Errc::PeriodMismatch, "periods differ");
    if (N.w != M.w) fail(Errc::WidthMismatch, "modules of different widths");
    if (N.r % d.r) fail(Errc::PeriodMismatch, "module period is not a multiple of the multidegree period");
    const int S = N.r;
    const auto u = flex_u(d, N.w);
    const int umax = *std::max_element(u.begin(), u.end());
    GradedHom f;
    for (int o = 0; o < S; ++o) {
        const int k = d(o) - o, D = md(d(o), S);
        if (ft.f[o].rows() != M.ranks[D] || ft.f[o].cols() != N.ranks[D]) fail(Errc::RankMismatch, "flexed hom has the wrong size");
        f.f.push_back(pscale(F_chain(M, o, k) * ft.f[o] * V_chain(N, o, k), umax - u[o]));
    }
    return f;
}

// ---------------------------------------------------------------- displays

int flex_width(const FlexSpec& s) {
    int w = 0;
    for (int i = 0; i < s.P.slots(); ++i) w = std::max(w, s.P.width(i));
    return w;
}

namespace {

void check_spec(const FlexSpec& s, int S, bool unitary) {
    check_d(s.d);
    validate(s.P);
    if (s.j.unitary != unitary) fail(Errc::InvalidArgument, "gauge unitarity does not match the display");
    if (s.j.r != s.d.r || s.j.period() != S) fail(Errc::PeriodMismatch, "gauge period does not match the display");
    if (s.P.slots() != S) fail(Errc::PeriodMismatch, "profile period does not match the display");
    const auto rep = validate_gauge(s.j, s.d, s.P);
    if (!rep.ok()) fail(Errc::InvalidArgument, "invalid gauge: " + rep.violations[0]);
    if (s.d.is_translation()) fail(Errc::TranslationMultidegree, "d must not be a translation");
}

void check_unitary_rep(const FlexSpec& s, std::size_t factors) {
    if (factors != 1 || s.rho.kind != RepSpec::Kind::Std || s.rho.factor != 0)
        fail(Errc::InvalidArgument, "unitary flex supports the standard representation of one factor");
}

std::vector<int> rho_weights(const FlexSpec& s, const std::vector<Shape>& shapes, const std::vector<int>& central, int slot) {
    std::vector<std::vector<int>> w;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        auto x = shapes[i].weights.at(slot);
        for (int& v : x) v += central.empty() ? 0 : central.at(i);
        w.push_back(x);
    }
    return rep_weights(s.rho, w);
}

Shape flexed_shape(const FlexSpec& s, const Shape& src, const std::vector<std::vector<int>>& lw) {
    if (src.kind != Shape::Kind::Unitary) return Shape::from_weights(lw);
    const int S = src.slots();
    Shape t;
    t.kind = Shape::Kind::Unitary;
    t.h = static_cast<int>(lw[0].size());
    t.weights = lw;
    for (int w = 0; w < S; ++w) t.J.push_back(src.J[md(s.d(w), S)]);
    return t;
}

bool jump(const Multidegree& d, int w) { return d(w + 1) != d(w); }

bool constant(const std::vector<int>& x) { return std::all_of(x.begin(), x.end(), [&](int v) { return v == x[0]; }); }

}  // namespace

std::vector<std::vector<int>> flexed_weights(const FlexSpec& s, const std::vector<Shape>& shapes, const std::vector<int>& central) {
    const int S = s.j.period();
    std::vector<std::vector<int>> out;
    for (int w = 0; w < S; ++w) {
        auto lam = rho_weights(s, shapes, central, md(s.d(w), S));
        for (int& v : lam) v = H0(v - s.j(w));
        out.push_back(lam);
    }
    return out;
}

Display flex_display(const FlexSpec& s, const std::vector<Display>& factors) {
    if (factors.empty()) fail(Errc::InvalidArgument, "no display given");
    const Display& U0 = factors[0];
    const int S = U0.shape.slots(), L = U0.level();
    const BaseRing* R = U0.ring();
    const bool unitary = U0.shape.kind == Shape::Kind::Unitary;
    std::vector<Shape> shapes;
    std::vector<int> central;
    for (const auto& D : factors) {
        validate(D);
        if (D.shape.slots() != S) fail(Errc::PeriodMismatch, "factors of different periods");
        if (D.ring() != R) fail(Errc::RingMismatch, "factors over different rings");
        if (D.level() != L) fail(Errc::LevelMismatch, "factors of different levels");
        shapes.push_back(D.shape);
        central.push_back(D.central);
    }
    if (unitary) check_unitary_rep(s, factors.size());
    check_spec(s, S, unitary);
    const int w = flex_width(s);
    if (w >= static_cast<int>(R->p())) fail(Errc::WidthExceedsP, "profile width must stay below p");
    const int n = L - w;
    if (n < 1) fail(Errc::InsufficientLevel, "display level must exceed the width");
    for (int sl = 0; sl < S; ++sl)
        for (int v : rho_weights(s, shapes, central, sl))
            if (v < s.P.a[sl] || v > s.P.b[sl]) fail(Errc::WeightOutOfRange, "representation weight outside the profile");

    const auto lw = flexed_weights(s, shapes, central);
    const int dim = static_cast<int>(lw[0].size());
    Display out;
    out.shape = flexed_shape(s, U0.shape, lw);
    for (int o = 0; o < S; ++o) {
        if (!jump(s.d, o)) {
            out.U.push_back(WMat::identity(R, n, dim));
            if (unitary) out.multiplier.push_back(WittVector::one(R, n));
            continue;
        }
        std::vector<WMat> g;
        for (const auto& D : factors) {
            WMat P = WMat::identity(R, L, D.shape.h);
            for (int sg = s.d(o); sg < s.d(o + 1); ++sg) P = P * mat_tau_pow(D.U[md(sg, S)], sg - o);
            g.push_back(P);
        }
        out.U.push_back(mat_truncate(rep_matrix(s.rho, g), n));
        if (unitary) {
            WittVector c = WittVector::one(R, L);
            for (int sg = s.d(o); sg < s.d(o + 1); ++sg) c = c * tau_pow(U0.multiplier[md(sg, S)], sg - o);
            out.multiplier.push_back(truncate(c, n));
        }
    }
    validate(out);
    return out;
}

Parabolic flex_morphism(const FlexSpec& s, const std::vector<Parabolic>& k, const std::vector<int>& central) {
    if (k.empty()) fail(Errc::InvalidArgument, "no morphism given");
    const Parabolic& k0 = k[0];
    const int S = k0.shape.slots(), L1 = k0.level();
    const BaseRing* R = k0.ring();
    const bool unitary = k0.shape.kind == Shape::Kind::Unitary;
    std::vector<Shape> shapes;
    for (const auto& x : k) {
        validate(x);
        if (x.shape.slots() != S) fail(Errc::PeriodMismatch, "factors of different periods");
        if (x.ring() != R) fail(Errc::RingMismatch, "factors over different rings");
        if (x.level() != L1) fail(Errc::LevelMismatch, "factors of different levels");
        shapes.push_back(x.shape);
    }
    if (!central.empty() && central.size() != k.size()) fail(Errc::InvalidArgument, "one central shift per factor");
    if (unitary) check_unitary_rep(s, k.size());
    check_spec(s, S, unitary);
    const int w = flex_width(s);
    if (w >= static_cast<int>(R->p())) fail(Errc::WidthExceedsP, "profile width must stay below p");
    const int n1 = L1 - w;
    if (n1 < 2) fail(Errc::InsufficientLevel, "morphism level must exceed the width by two");

    const auto lw = flexed_weights(s, shapes, central);
    auto at_jump = [&](int o) {
        std::vector<WMat> g;
        for (const auto& x : k) g.push_back(mat_tau_pow(x.k[md(s.d(o), S)], s.d(o) - o));
        return rep_matrix(s.rho, g);
    };
    auto require = [&](const WMat& X, int o) {
        if (!in_parabolic(X, lw[md(o, S)])) fail(Errc::IterationLeavesParabolic, str("left the parabolic at slot ", md(o, S)));
    };

    Parabolic out;
    out.shape = flexed_shape(s, k0.shape, lw);
    for (int o = 0; o < S; ++o) {
        int top = o;
        while (!jump(s.d, top)) ++top;
        WMat X = at_jump(top);
        // k~_w = Phi^{v~_{w+1}}(k~_{w+1}) below a jump; constant weights lose no precision
        for (int t = top; t > o; --t) {
            require(X, t);
            const auto& wt = lw[md(t, S)];
            X = constant(wt) ? mat_tau(X) : phi_twist(X, wt);
        }
        require(X, o);
        if (X.level() < n1) fail(Errc::InsufficientLevel, "precision ran out along a block");
        out.k.push_back(mat_truncate(X, n1));
        if (unitary) {
            const WittVector& m = k0.m.empty() ? WittVector::one(R, L1) : k0.m[md(s.d(top), S)];
            out.m.push_back(truncate(tau_pow(m, s.d(top) - o), n1));
        }
    }
    validate(out);
    return out;
}

bool rectify_check(const FlexSpec& s, const std::vector<Display>& factors) {
    const Display Ut = flex_display(s, factors);
    const int n = Ut.level();
    const bool unitary = factors[0].shape.kind == Shape::Kind::Unitary;
    const GradedFrobModule lhs = truncate(flex_module(s.d, fib_realize(factors, s.P, s.rho)), n);
    const WeightProfile Pt = tilde_profile(s.j, s.d, s.P).profile(unitary);
    const GradedFrobModule rhs = flex_module(s.d.star_after(), fib_realize({Ut}, Pt, RepSpec::std_rep()));
    return lhs.ranks == rhs.ranks && lhs.w == rhs.w && lhs.F == rhs.F && lhs.V == rhs.V;
}

// ---------------------------------------------------------------- products and global gauges

bool is_multiplyable(const std::vector<int>& pi, const std::vector<TildeProfile>& tildes) {
    if (pi.size() % 2 == 0) fail(Errc::EvenSubset, "index subsets must have odd size");
    const int c = (1 - static_cast<int>(pi.size())) / 2;
    std::size_t S = 0;
    for (int i : pi) {
        if (i < 0 || i >= static_cast<int>(tildes.size())) fail(Errc::InvalidArgument, "index outside the family");
        if (S && tildes[i].a.size() != S) fail(Errc::PeriodMismatch, "tilde profiles of different periods");
        S = tildes[i].a.size();
    }
    for (std::size_t o = 0; o < S; ++o) {
        int sa = c, sb = c;
        for (int i : pi) {
            sa += tildes[i].a[o];
            sb += tildes[i].b[o];
        }
        if (sa < 0 || sb > 1) return false;
    }
    return true;
}

namespace {

std::vector<int> invert_perm(const std::vector<int>& p) {
    std::vector<int> q(p.size(), -1);
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

int apply_pow(const std::vector<int>& p, const std::vector<int>& pinv, int x, int e) {
    const auto& f = e >= 0 ? p : pinv;
    for (int i = 0; i < std::abs(e); ++i) x = f[x];
    return x;
}

bool is_perm(const std::vector<int>& p) {
    std::vector<int> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

bool in_cut(int jv, int a, int b) { return jv >= a && jv <= b - 1; }

}  // namespace

int ThetaGaugeInstance::d(int iota) const {
    return apply_pow(theta, invert_perm(theta), iota, -dplus.at(iota));
}

ThetaReport validate_theta_gauge(const ThetaGaugeInstance& I) {
    ThetaReport rep;
    const int N = I.size(), L = I.indices();
    auto& st = rep.structure;
    if (N == 0) st.push_back("empty embedding set");
    if (static_cast<int>(I.star.size()) != N || static_cast<int>(I.dplus.size()) != N) st.push_back("size mismatch");
    if (static_cast<int>(I.a.size()) != L || static_cast<int>(I.b.size()) != L) st.push_back("weights per index missing");
    for (int i = 0; i < L && st.empty(); ++i)
        if (static_cast<int>(I.j[i].size()) != N || static_cast<int>(I.a[i].size()) != N || static_cast<int>(I.b[i].size()) != N)
            st.push_back(str("index ", i, " has the wrong number of values"));
    if (st.empty() && (!is_perm(I.theta) || !is_perm(I.star))) st.push_back("theta and star must be permutations");
    for (const auto& pi : I.Pi) {
        if (pi.size() % 2 == 0) st.push_back("subsets in Pi must have odd size");
        for (int i : pi)
            if (i < 0 || i >= L) st.push_back("subset index out of range");
    }
    if (!st.empty()) return rep;

    for (int x = 0; x < N; ++x) {
        if (I.star[I.star[x]] != x) st.push_back(str("star is not an involution at ", x));
        if (I.star[x] == x) st.push_back(str("star has a fixed point at ", x));
        if (I.theta[I.star[x]] != I.star[I.theta[x]]) st.push_back(str("theta and star do not commute at ", x));
        if (I.dplus[x] < 0) st.push_back(str("d+ is negative at ", x));
        if (I.dplus[I.theta[x]] > I.dplus[x] + 1) st.push_back(str("d+(theta iota) > d+(iota) + 1 at ", x));
        if (I.dplus[I.star[x]] != I.dplus[x]) st.push_back(str("d+ is not star-invariant at ", x));
        for (int i = 0; i < L; ++i) {
            if (I.a[i][x] > I.b[i][x]) st.push_back(str("a > b for index ", i, " at ", x));
            if (I.b[i][x] != 1 - I.a[i][I.star[x]]) st.push_back(str("b != 1 - a(star) for index ", i, " at ", x));
        }
    }
    if (!st.empty()) return rep;

    std::vector<int> dmap(N);
    for (int x = 0; x < N; ++x) dmap[x] = I.d(x);
    for (int i = 0; i < L; ++i)
        for (int x = 0; x < N; ++x) {
            for (int l = I.a[i][x]; l < I.b[i][x]; ++l) {
                int hits = 0;
                for (int k = 0; k < N; ++k)
                    if (dmap[k] == x && I.j[i][k] == l) ++hits;
                if (hits != 1) rep.g1.push_back(str("index ", i, ": unique cut fails at iota=", x) + str(", l=", l));
            }
            if (I.j[i][I.star[x]] != -I.j[i][x]) rep.g2.push_back(str("index ", i, ": j(iota*) != -j(iota) at ", x));
        }
    for (std::size_t q = 0; q < I.Pi.size(); ++q) {
        const auto& pi = I.Pi[q];
        const int need = (static_cast<int>(pi.size()) - 1) / 2;
        for (int x = 0; x < N; ++x) {
            int lo = 0, hi = 0;
            for (int i : pi) {
                if (I.j[i][x] < I.a[i][dmap[x]]) ++lo;
                if (I.j[i][x] >= I.b[i][dmap[x]]) ++hi;
            }
            if (lo < need || hi < need) rep.g3.push_back(str("subset ", static_cast<int>(q), ": too few outside cuts at ", x));
        }
        std::vector<int> seen(N, 0);
        for (int x0 = 0; x0 < N; ++x0) {
            if (seen[x0]) continue;
            bool found = false;
            for (int x = x0; !seen[x]; x = I.theta[x]) {
                seen[x] = 1;
                bool outside = true;
                for (int i : pi)
                    if (in_cut(I.j[i][x], I.a[i][dmap[x]], I.b[i][dmap[x]])) outside = false;
                found = found || outside;
            }
            if (!found) rep.g4.push_back(str("subset ", static_cast<int>(q), ": orbit of ", x0) + " has no uncut element");
        }
    }
    return rep;
}

LocalGauges translate_local(const ThetaGaugeInstance& I, int iota) {
    const ThetaReport rep = validate_theta_gauge(I);
    if (!rep.structure.empty()) fail(Errc::InvalidArgument, "malformed instance: " + rep.structure[0]);
    if (iota < 0 || iota >= I.size()) fail(Errc::InvalidArgument, "no such embedding");
    const auto tinv = invert_perm(I.theta);
    int r = 1;
    for (int x = I.theta[iota]; x != iota && x != I.star[iota]; x = I.theta[x]) ++r;
    LocalGauges out;
    out.unitary = apply_pow(I.theta, tinv, iota, r) == I.star[iota];
    const int S = out.unitary ? 2 * r : r;
    std::vector<int> kappa;
    for (int s = 0; s < S; ++s) kappa.push_back(apply_pow(I.theta, tinv, iota, -s));
    out.d.r = r;
    for (int w = 0; w < r; ++w) out.d.base.push_back(w + I.dplus[kappa[w]]);
    for (int i = 0; i < I.indices(); ++i) {
        Gauge g;
        g.r = r;
        g.unitary = out.unitary;
        WeightProfile P;
        P.unitary = out.unitary;
        for (int s = 0; s < S; ++s) {
            g.j.push_back(I.j[i][kappa[s]]);
            P.a.push_back(I.a[i][kappa[s]]);
            P.b.push_back(I.b[i][kappa[s]]);
        }
        out.j.push_back(g);
        out.P.push_back(P);
    }
    if (rep.ok()) {
        if (!validate_multidegree(out.d).ok()) fail(Errc::InvalidMultidegree, "translation of a valid instance is not a multidegree");
        for (int i = 0; i < I.indices(); ++i)
            if (!validate_gauge(out.j[i], out.d, out.P[i]).ok()) fail(Errc::InvalidArgument, "translation of a valid instance is not a gauge");
    }
    return out;
}

}  // namespace dlab
