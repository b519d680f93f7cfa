#include "displaylab/witt.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

#include "displaylab/errors.hpp"

namespace dlab {

using GR = WittVector::GR;

namespace {

constexpr int kTop = kMaxLevel + 1;  // Galois ring constants are kept mod p^9

struct GRCtx {
    const Fq* F = nullptr;
    std::uint32_t p = 0;
    int e = 0;
    std::uint64_t P[kTop + 1] = {};
    std::vector<std::uint64_t> f;       // monic lift of the field modulus
    std::vector<std::uint64_t> sig;     // column j = sigma(x^j), row-major e*e
    std::vector<std::uint64_t> siginv;  // inverse of sig
    std::vector<GR> teich;              // [a] mod p^9, only for small q
};

GR gr_lift(const GRCtx& C, fe a) {
    GR r(C.e);
    for (int i = 0; i < C.e; ++i) {
        r[i] = a % C.p;
        a /= C.p;
    }
    return r;
}

fe gr_residue(const GRCtx& C, const GR& y) {
    fe r = 0;
    for (int i = C.e - 1; i >= 0; --i) r = r * C.p + y[i] % C.p;
    return r;
}

GR gr_reduce(const GRCtx& C, const GR& a, int m) {
    GR r(a);
    for (auto& v : r) v %= C.P[m];
    return r;
}

GR gr_add(const GRCtx& C, const GR& a, const GR& b, int m) {
    const std::uint64_t M = C.P[m];
    GR r(C.e);
    for (int i = 0; i < C.e; ++i) {
        std::uint64_t s = a[i] + b[i];
        r[i] = s >= M ? s - M : s;
    }
    return r;
}

GR gr_neg(const GRCtx& C, const GR& a, int m) {
    const std::uint64_t M = C.P[m];
    GR r(C.e);
    for (int i = 0; i < C.e; ++i) r[i] = a[i] ? M - a[i] : 0;
    return r;
}

GR gr_mul(const GRCtx& C, const GR& a, const GR& b, int m) {
    const std::uint64_t M = C.P[m];
    const int e = C.e;
    if (e == 1) return GR{mulmod64(a[0], b[0], M)};
    boost::container::small_vector<std::uint64_t, 8> r(2 * e - 1);
    for (int k = 0; k < 2 * e - 1; ++k) {
        unsigned __int128 acc = 0;
        const int lo = std::max(0, k - e + 1), hi = std::min(k, e - 1);
        for (int i = lo; i <= hi; ++i) acc += static_cast<unsigned __int128>(a[i]) * b[k - i];
        r[k] = static_cast<std::uint64_t>(acc % M);
    }
    for (int k = 2 * e - 2; k >= e; --k) {
        const std::uint64_t c = r[k];
        if (!c) continue;
        const std::uint64_t nc = M - c;
        for (int i = 0; i < e; ++i) r[k - e + i] = (r[k - e + i] + mulmod64(nc, C.f[i], M)) % M;
    }
    return GR(r.begin(), r.begin() + e);
}

GR gr_pow(const GRCtx& C, GR a, std::uint64_t k, int m) {
    GR r(C.e, 0);
    r[0] = 1 % C.P[m];
    while (k) {
        if (k & 1) r = gr_mul(C, r, a, m);
        k >>= 1;
        if (k) a = gr_mul(C, a, a, m);
    }
    return r;
}

GR gr_apply(const GRCtx& C, const std::vector<std::uint64_t>& mat, const GR& a, int m) {
    if (C.e == 1) return gr_reduce(C, a, m);
    const std::uint64_t M = C.P[m];
    GR r(C.e);
    for (int i = 0; i < C.e; ++i) {
        unsigned __int128 acc = 0;
        for (int j = 0; j < C.e; ++j) acc += static_cast<unsigned __int128>(mat[i * C.e + j] % M) * a[j];
        r[i] = static_cast<std::uint64_t>(acc % M);
    }
    return r;
}

GR gr_sigma(const GRCtx& C, const GR& a, int m) { return gr_apply(C, C.sig, a, m); }
GR gr_sigma_inv(const GRCtx& C, const GR& a, int m) { return gr_apply(C, C.siginv, a, m); }

// inverse of a unit by Newton iteration from its residue
GR gr_inv(const GRCtx& C, const GR& a, int m) {
    const fe r = gr_residue(C, a);
    if (r == 0) fail(Errc::NotUnit, "Witt vector is not a unit");
    GR u = gr_lift(C, C.F->inv(r));
    GR two(C.e, 0);
    two[0] = 2 % C.P[m];
    for (int prec = 1; prec < m; prec *= 2) u = gr_mul(C, u, gr_add(C, two, gr_neg(C, gr_mul(C, a, u, m), m), m), m);
    return u;
}

GR gr_teich(const GRCtx& C, fe a, int m) {
    if (!C.teich.empty()) return gr_reduce(C, C.teich[a], m);
    GR t = gr_lift(C, a);
    for (int i = 0; i < (m - 1) * C.e; ++i) t = gr_pow(C, t, C.p, m);
    return t;
}

std::unique_ptr<GRCtx> build_ctx(const BaseRing* R) {
    auto C = std::make_unique<GRCtx>();
    C->F = &R->fq();
    C->p = R->p();
    C->e = R->e();
    C->P[0] = 1;
    for (int i = 1; i <= kTop; ++i) C->P[i] = C->P[i - 1] * C->p;
    for (auto c : R->fq().modulus()) C->f.push_back(c);
    const int e = C->e;
    if (e == 1) {
        C->sig = C->siginv = {1};
    } else {
        // Hensel lift of the root x^p of the modulus: theta <- theta - f(theta)/f'(theta)
        GR theta = gr_lift(*C, C->F->frob(C->p));  // x is encoded as p
        for (int it = 0; it < 6; ++it) {
            GR fv(e, 0), dv(e, 0);
            for (int i = e; i >= 0; --i) {
                fv = gr_mul(*C, fv, theta, kTop);
                fv[0] = (fv[0] + C->f[i]) % C->P[kTop];
            }
            for (int i = e; i >= 1; --i) {
                dv = gr_mul(*C, dv, theta, kTop);
                dv[0] = (dv[0] + mulmod64(C->f[i], i, C->P[kTop])) % C->P[kTop];
            }
            theta = gr_add(*C, theta, gr_neg(*C, gr_mul(*C, fv, gr_inv(*C, dv, kTop), kTop), kTop), kTop);
        }
        C->sig.assign(e * e, 0);
        GR pw(e, 0);
        pw[0] = 1;
        for (int j = 0; j < e; ++j) {
            for (int i = 0; i < e; ++i) C->sig[i * e + j] = pw[i];
            pw = gr_mul(*C, pw, theta, kTop);
        }
        // sigma^{-1} = sigma^{e-1}
        C->siginv.assign(e * e, 0);
        for (int j = 0; j < e; ++j) {
            GR col(e, 0);
            col[j] = 1;
            for (int k = 0; k < e - 1; ++k) col = gr_sigma(*C, col, kTop);
            for (int i = 0; i < e; ++i) C->siginv[i * e + j] = col[i];
        }
    }
    if (C->F->q() <= 8192) {
        C->teich.resize(C->F->q());
        for (fe a = 0; a < C->F->q(); ++a) {
            GR t = gr_lift(*C, a);
            for (int i = 0; i < (kTop - 1) * e; ++i) t = gr_pow(*C, t, C->p, kTop);
            C->teich[a] = t;
        }
    }
    return C;
}

const GRCtx& ctx(const BaseRing* R) {
    thread_local const BaseRing* last = nullptr;
    thread_local const GRCtx* last_ctx = nullptr;
    if (R == last) return *last_ctx;
    static std::mutex mu;
    static std::map<const BaseRing*, std::unique_ptr<GRCtx>> table;
    std::lock_guard lk(mu);
    auto& slot = table[R];
    if (!slot) slot = build_ctx(R);
    last = R;
    last_ctx = slot.get();
    return *slot;
}

void check_len(int n) {
    if (n > kMaxLevel) fail(Errc::LevelTooLarge, "Witt length " + std::to_string(n) + " exceeds 8");
    if (n < 1) fail(Errc::LengthTooShort, "Witt length must be at least 1");
}

void check_pair(const WittVector& a, const WittVector& b) {
    if (a.ring() != b.ring()) fail(Errc::RingMismatch, "Witt vectors over different rings");
    if (a.length() != b.length())
        fail(Errc::LengthMismatch,
             "Witt lengths " + std::to_string(a.length()) + " and " + std::to_string(b.length()));
}

// Evaluate universal polynomials on component lists with cached powers.
class PolyEval {
public:
    PolyEval(const BaseRing* R, std::vector<Elem> vars) : R_(R), vars_(std::move(vars)), cache_(vars_.size()) {
        zero_.resize(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) zero_[i] = R_->is_zero(vars_[i]);
    }
    Elem eval(const ModPoly& poly) {
        Elem acc = R_->zero();
        for (const auto& t : poly.terms) {
            bool dead = false;
            for (auto& [v, ex] : t.vars)
                if (zero_[v]) {
                    dead = true;
                    break;
                }
            if (dead) continue;
            Elem m = R_->from_int(t.coef);
            for (auto& [v, ex] : t.vars) m = R_->mul(m, power(v, ex));
            acc = R_->add(acc, m);
        }
        return acc;
    }

private:
    const Elem& power(int v, std::uint32_t ex) {
        auto& c = cache_[v];
        auto it = c.find(ex);
        if (it != c.end()) return it->second;
        return c.emplace(ex, R_->pow(vars_[v], ex)).first->second;
    }
    const BaseRing* R_;
    std::vector<Elem> vars_;
    std::vector<bool> zero_;
    std::vector<std::unordered_map<std::uint32_t, Elem>> cache_;
};

std::vector<Elem> eval_binary(const std::vector<ModPoly>& polys, const WittVector& a, const WittVector& b) {
    std::vector<Elem> vars = a.components();
    auto cb = b.components();
    vars.insert(vars.end(), cb.begin(), cb.end());
    PolyEval ev(a.ring(), std::move(vars));
    std::vector<Elem> out;
    for (int i = 0; i < a.length(); ++i) out.push_back(ev.eval(polys[i]));
    return out;
}


// ---- W_n(F_q[t]) through the perfection --------------------------------
// W_n of the perfect closure is the ring of finite sums of GR * t^r with
// r in Z[1/p]; at length l everything lives in polynomials in t^{1/p^{l-1}}.
using SPoly = std::vector<GR>;

void sp_trim(SPoly& a) {
    while (!a.empty()) {
        bool z = true;
        for (auto v : a.back())
            if (v) z = false;
        if (!z) break;
        a.pop_back();
    }
}

SPoly sp_mul(const GRCtx& C, const SPoly& a, const SPoly& b, int m) {
    if (a.empty() || b.empty()) return {};
    const std::uint64_t M = C.P[m];
    const int e = C.e;
    SPoly r(a.size() + b.size() - 1, GR(e, 0));
    if (e == 1) {
        for (std::size_t k = 0; k < r.size(); ++k) {
            unsigned __int128 acc = 0;
            const std::size_t lo = k >= b.size() - 1 ? k - (b.size() - 1) : 0, hi = std::min(k, a.size() - 1);
            for (std::size_t i = lo; i <= hi; ++i) acc += static_cast<unsigned __int128>(a[i][0]) * b[k - i][0];
            r[k][0] = static_cast<std::uint64_t>(acc % M);
        }
        sp_trim(r);
        return r;
    }
    std::vector<unsigned __int128> acc(2 * e - 1);
    for (std::size_t k = 0; k < r.size(); ++k) {
        std::fill(acc.begin(), acc.end(), 0);
        const std::size_t lo = k >= b.size() - 1 ? k - (b.size() - 1) : 0, hi = std::min(k, a.size() - 1);
        for (std::size_t i = lo; i <= hi; ++i)
            for (int u = 0; u < e; ++u) {
                if (!a[i][u]) continue;
                for (int v = 0; v < e; ++v) acc[u + v] += static_cast<unsigned __int128>(a[i][u]) * b[k - i][v];
            }
        std::vector<std::uint64_t> red(2 * e - 1);
        for (int u = 0; u < 2 * e - 1; ++u) red[u] = static_cast<std::uint64_t>(acc[u] % M);
        for (int u = 2 * e - 2; u >= e; --u) {
            const std::uint64_t c = red[u];
            if (!c) continue;
            for (int i = 0; i < e; ++i) red[u - e + i] = (red[u - e + i] + mulmod64(M - c, C.f[i], M)) % M;
        }
        for (int u = 0; u < e; ++u) r[k][u] = red[u];
    }
    sp_trim(r);
    return r;
}

// [x^{p^{-j}}] to precision l, as a polynomial in s = t^{1/p^{j+l-1}}
SPoly teich_poly(const GRCtx& C, const Elem& x, int l, int j) {
    const Fq& F = *C.F;
    SPoly L(x.c.size(), GR(C.e, 0));
    for (std::size_t k = 0; k < x.c.size(); ++k) {
        fe c = x.c[k];
        for (int r = 0; r < j + l - 1; ++r) c = F.frob_inv(c);
        L[k] = gr_lift(C, c);
    }
    sp_trim(L);
    for (int r = 0; r < l - 1; ++r) {
        SPoly acc = L;
        for (std::uint32_t t = 1; t < C.p; ++t) acc = sp_mul(C, acc, L, l);
        L = std::move(acc);
    }
    return L;
}

SPoly perf_from(const GRCtx& C, const std::vector<Elem>& x) {
    const int n = static_cast<int>(x.size());
    SPoly y;
    for (int i = 0; i < n; ++i) {
        if (x[i].c.empty()) continue;
        SPoly t = teich_poly(C, x[i], n - i, i);
        if (y.size() < t.size()) y.resize(t.size(), GR(C.e, 0));
        for (std::size_t k = 0; k < t.size(); ++k)
            for (int u = 0; u < C.e; ++u) y[k][u] = (y[k][u] + t[k][u] * C.P[i]) % C.P[n];
    }
    sp_trim(y);
    return y;
}

std::vector<Elem> perf_to(const GRCtx& C, SPoly y, int n) {
    std::vector<Elem> out;
    for (int l = n; l >= 1; --l) {
        const std::uint64_t step = C.P[l - 1];
        Elem x;
        for (std::size_t a = 0; a < y.size(); ++a) {
            const fe r = gr_residue(C, y[a]);
            if (!r) continue;
            if (a % step != 0) fail(Errc::InvalidArgument, "perfection residue is not a polynomial");
            const std::size_t d = a / step;
            if (x.c.size() <= d) x.c.resize(d + 1, 0);
            x.c[d] = r;
        }
        out.push_back(x);
        if (l == 1) break;
        SPoly T = x.c.empty() ? SPoly{} : teich_poly(C, x, l, 0);
        if (y.size() < T.size()) y.resize(T.size(), GR(C.e, 0));
        for (std::size_t k = 0; k < T.size(); ++k) y[k] = gr_add(C, y[k], gr_neg(C, T[k], l), l);
        for (auto& g : y) {
            for (auto& v : g) v /= C.p;
            g = gr_sigma(C, g, l - 1);
        }
        sp_trim(y);
    }
    return out;
}

std::vector<Elem> poly_ring_op(const BaseRing* R, const std::vector<Elem>& a, const std::vector<Elem>& b, bool mul) {
    const GRCtx& C = ctx(R->field_ring());
    const int n = static_cast<int>(a.size());
    SPoly x = perf_from(C, a), y = perf_from(C, b), r;
    if (mul) {
        r = sp_mul(C, x, y, n);
    } else {
        r.assign(std::max(x.size(), y.size()), GR(C.e, 0));
        for (std::size_t k = 0; k < r.size(); ++k)
            r[k] = gr_add(C, k < x.size() ? x[k] : GR(C.e, 0), k < y.size() ? y[k] : GR(C.e, 0), n);
        sp_trim(r);
    }
    return perf_to(C, std::move(r), n);
}

// Localized elements: x = w * [h]^{-m} with w over F_q[t]; [c] acts by x_i -> c^{p^i} x_i.
struct LocRep {
    std::vector<Elem> w;  // polynomial components
    long m = 0;
};

upoly::P hpow(const BaseRing* R, long k) {
    upoly::P r = {1}, b = R->h();
    while (k) {
        if (k & 1) r = upoly::mul(R->fq(), r, b);
        k >>= 1;
        if (k) b = upoly::mul(R->fq(), b, b);
    }
    return r;
}

LocRep loc_to(const BaseRing* R, const std::vector<Elem>& x, long m_at_least = 0) {
    LocRep rep;
    const long p = R->p();
    long m = m_at_least;
    long pi = 1;
    for (const auto& c : x) {
        m = std::max(m, (c.k + pi - 1) / pi);
        pi *= p;
    }
    rep.m = m;
    pi = 1;
    for (const auto& c : x) {
        const long ex = m * pi - c.k;
        if (ex > 200000) fail(Errc::InvalidArgument, "localized denominator exponent too large");
        upoly::P g(c.c.begin(), c.c.end());
        g = upoly::mul(R->fq(), g, hpow(R, ex));
        Elem e;
        e.c.assign(g.begin(), g.end());
        rep.w.push_back(e);
        pi *= p;
    }
    return rep;
}

std::vector<Elem> loc_from(const BaseRing* R, const std::vector<Elem>& w, long m) {
    std::vector<Elem> out;
    long pi = 1;
    for (const auto& c : w) {
        out.push_back(R->make_fraction(upoly::P(c.c.begin(), c.c.end()), static_cast<int>(m * pi)));
        pi *= R->p();
    }
    return out;
}

std::vector<Elem> loc_op(const BaseRing* R, const std::vector<Elem>& a, const std::vector<Elem>& b, bool mul) {
    const BaseRing* Pr = BaseRing::poly(R->field_ring());
    if (mul) {
        LocRep x = loc_to(R, a), y = loc_to(R, b);
        return loc_from(R, poly_ring_op(Pr, x.w, y.w, true), x.m + y.m);
    }
    LocRep x0 = loc_to(R, a), y0 = loc_to(R, b);
    const long m = std::max(x0.m, y0.m);
    LocRep x = loc_to(R, a, m), y = loc_to(R, b, m);
    return loc_from(R, poly_ring_op(Pr, x.w, y.w, false), m);
}

}  // namespace

struct WittImpl {
    static WittVector make_gr(const BaseRing* R, int n, GR y) {
        WittVector w;
        w.R_ = R;
        w.n_ = n;
        w.y_ = std::move(y);
        return w;
    }
    static WittVector make_comps(const BaseRing* R, std::vector<Elem> c) {
        WittVector w;
        w.R_ = R;
        w.n_ = static_cast<int>(c.size());
        w.comps_ = std::move(c);
        return w;
    }
    static const std::vector<Elem>& comps(const WittVector& w) { return w.comps_; }
};

WittVector::WittVector(const BaseRing* R, const std::vector<Elem>& comps) : R_(R), n_(static_cast<int>(comps.size())) {
    check_len(n_);
    for (const auto& c : comps)
        if (!R->valid(c)) fail(Errc::InvalidArgument, "component is not a canonical element of " + R->name());
    if (!fast()) {
        comps_ = comps;
        return;
    }
    const GRCtx& C = ctx(R);
    y_.assign(C.e, 0);
    for (int i = 0; i < n_; ++i) {
        if (comps[i].c[0] == 0) continue;
        GR t = gr_teich(C, comps[i].c[0], n_ - i);
        for (int k = 0; k < i; ++k) t = gr_sigma_inv(C, t, n_ - i);
        for (auto& v : t) v *= C.P[i];
        y_ = gr_add(C, y_, t, n_);
    }
}

WittVector WittVector::from_gr(const BaseRing* R, int n, GR y) {
    check_len(n);
    return WittImpl::make_gr(R, n, std::move(y));
}

WittVector WittVector::zero(const BaseRing* R, int n) {
    check_len(n);
    if (R->kind() == BaseRing::Kind::FiniteField) return WittImpl::make_gr(R, n, GR(R->e(), 0));
    return WittImpl::make_comps(R, std::vector<Elem>(n, R->zero()));
}

WittVector WittVector::one(const BaseRing* R, int n) { return from_int(R, n, 1); }

WittVector WittVector::from_int(const BaseRing* R, int n, std::int64_t v) {
    check_len(n);
    if (R->kind() == BaseRing::Kind::FiniteField) {
        const GRCtx& C = ctx(R);
        GR y(C.e, 0);
        const auto M = static_cast<std::int64_t>(C.P[n]);
        std::int64_t r = v % M;
        y[0] = static_cast<std::uint64_t>(r < 0 ? r + M : r);
        return WittImpl::make_gr(R, n, y);
    }
    if (v == 0) return zero(R, n);
    if (v == 1) {
        std::vector<Elem> c(n, R->zero());
        c[0] = R->one();
        return WittImpl::make_comps(R, c);
    }
    return witt_scale(one(R, n), v);
}

WittVector WittVector::teich(const BaseRing* R, int n, const Elem& a) {
    std::vector<Elem> c(n, R->zero());
    c[0] = a;
    return WittVector(R, c);
}

Elem WittVector::component(int i) const {
    if (i < 0 || i >= n_) fail(Errc::InvalidArgument, "component index out of range");
    if (!fast()) return comps_[i];
    return components()[i];
}

std::vector<Elem> WittVector::components() const {
    if (!fast()) return comps_;
    const GRCtx& C = ctx(R_);
    std::vector<Elem> out;
    out.reserve(n_);
    GR cur = y_;
    for (int i = 0; i < n_; ++i) {
        const int lvl = n_ - i;
        const fe x = gr_residue(C, cur);
        out.push_back(Elem{{x}, 0});
        if (i == n_ - 1) break;
        GR t = gr_add(C, cur, gr_neg(C, gr_teich(C, x, lvl), lvl), lvl);
        for (auto& v : t) v /= C.p;
        cur = gr_sigma(C, t, lvl - 1);
    }
    return out;
}

bool WittVector::is_zero() const {
    if (fast()) {
        for (auto v : y_)
            if (v) return false;
        return true;
    }
    for (const auto& c : comps_)
        if (!R_->is_zero(c)) return false;
    return true;
}

bool WittVector::is_one() const { return *this == one(R_, n_); }

bool WittVector::operator==(const WittVector& o) const {
    if (R_ != o.R_ || n_ != o.n_) return false;
    return fast() ? y_ == o.y_ : comps_ == o.comps_;
}

WittVector witt_add(const WittVector& a, const WittVector& b) {
    check_pair(a, b);
    if (a.fast()) return WittImpl::make_gr(a.ring(), a.length(), gr_add(ctx(a.ring()), a.gr(), b.gr(), a.length()));
    switch (a.ring()->kind()) {
        case BaseRing::Kind::Poly:
            return WittImpl::make_comps(a.ring(), poly_ring_op(a.ring(), WittImpl::comps(a), WittImpl::comps(b), false));
        case BaseRing::Kind::LocalizedPoly:
            return WittImpl::make_comps(a.ring(), loc_op(a.ring(), WittImpl::comps(a), WittImpl::comps(b), false));
        default: return witt_add_poly(a, b);
    }
}

WittVector witt_neg(const WittVector& a) {
    if (a.fast()) return WittImpl::make_gr(a.ring(), a.length(), gr_neg(ctx(a.ring()), a.gr(), a.length()));
    // p odd: negation is componentwise
    std::vector<Elem> c = WittImpl::comps(a);
    for (auto& x : c) x = a.ring()->neg(x);
    return WittImpl::make_comps(a.ring(), std::move(c));
}

WittVector witt_sub(const WittVector& a, const WittVector& b) { return witt_add(a, witt_neg(b)); }

WittVector witt_mul(const WittVector& a, const WittVector& b) {
    check_pair(a, b);
    if (a.fast()) return WittImpl::make_gr(a.ring(), a.length(), gr_mul(ctx(a.ring()), a.gr(), b.gr(), a.length()));
    switch (a.ring()->kind()) {
        case BaseRing::Kind::Poly:
            return WittImpl::make_comps(a.ring(), poly_ring_op(a.ring(), WittImpl::comps(a), WittImpl::comps(b), true));
        case BaseRing::Kind::LocalizedPoly:
            return WittImpl::make_comps(a.ring(), loc_op(a.ring(), WittImpl::comps(a), WittImpl::comps(b), true));
        default: return witt_mul_poly(a, b);
    }
}

WittVector witt_add_poly(const WittVector& a, const WittVector& b) {
    check_pair(a, b);
    const auto& T = witt_tables(a.ring()->p(), a.length());
    return WittVector(a.ring(), eval_binary(T.S, a, b));
}

WittVector witt_mul_poly(const WittVector& a, const WittVector& b) {
    check_pair(a, b);
    const auto& T = witt_tables(a.ring()->p(), a.length());
    return WittVector(a.ring(), eval_binary(T.P, a, b));
}

WittVector witt_scale(const WittVector& a, std::int64_t m) {
    if (a.fast()) {
        const GRCtx& C = ctx(a.ring());
        const auto M = static_cast<std::int64_t>(C.P[a.length()]);
        std::int64_t r = m % M;
        const auto s = static_cast<std::uint64_t>(r < 0 ? r + M : r);
        GR y = a.gr();
        for (auto& v : y) v = mulmod64(v, s, C.P[a.length()]);
        return WittImpl::make_gr(a.ring(), a.length(), y);
    }
    if (m < 0) return witt_neg(witt_scale(a, -m));
    WittVector acc = WittVector::zero(a.ring(), a.length()), base = a;
    while (m) {
        if (m & 1) acc = witt_add(acc, base);
        m >>= 1;
        if (m) base = witt_add(base, base);
    }
    return acc;
}

WittVector witt_pow(const WittVector& a, std::uint64_t k) {
    WittVector r = WittVector::one(a.ring(), a.length()), b = a;
    while (k) {
        if (k & 1) r = witt_mul(r, b);
        k >>= 1;
        if (k) b = witt_mul(b, b);
    }
    return r;
}

WittVector frobenius(const WittVector& a) {
    if (a.length() < 2) fail(Errc::LengthTooShort, "Frobenius needs length at least 2");
    const int n = a.length() - 1;
    if (a.fast()) return WittImpl::make_gr(a.ring(), n, gr_sigma(ctx(a.ring()), a.gr(), n));
    std::vector<Elem> c;
    for (int i = 0; i < n; ++i) c.push_back(a.ring()->frob(WittImpl::comps(a)[i]));
    return WittImpl::make_comps(a.ring(), std::move(c));
}

WittVector frobenius_poly(const WittVector& a) {
    if (a.length() < 2) fail(Errc::LengthTooShort, "Frobenius needs length at least 2");
    const int n = a.length() - 1;
    const auto& T = witt_tables(a.ring()->p(), n);
    PolyEval ev(a.ring(), a.components());
    std::vector<Elem> c;
    for (int i = 0; i < n; ++i) c.push_back(ev.eval(T.Fr[i]));
    return WittVector(a.ring(), c);
}

WittVector tau(const WittVector& a) {
    if (a.fast()) return WittImpl::make_gr(a.ring(), a.length(), gr_sigma(ctx(a.ring()), a.gr(), a.length()));
    std::vector<Elem> c = WittImpl::comps(a);
    for (auto& x : c) x = a.ring()->frob(x);
    return WittImpl::make_comps(a.ring(), std::move(c));
}

WittVector tau_pow(const WittVector& a, int k) {
    if (a.fast()) {
        const GRCtx& C = ctx(a.ring());
        k %= C.e;
        if (k < 0) k += C.e;
        GR y = a.gr();
        for (int i = 0; i < k; ++i) y = gr_sigma(C, y, a.length());
        return WittImpl::make_gr(a.ring(), a.length(), y);
    }
    if (k < 0) fail(Errc::NotFiniteField, "inverse Frobenius needs a finite field");
    WittVector r = a;
    for (int i = 0; i < k; ++i) r = tau(r);
    return r;
}

WittVector verschiebung(const WittVector& a) {
    const int n = a.length() + 1;
    check_len(n);
    if (a.fast()) {
        const GRCtx& C = ctx(a.ring());
        GR y = gr_sigma_inv(C, a.gr(), n);
        for (auto& v : y) v = v * C.p % C.P[n];
        return WittImpl::make_gr(a.ring(), n, y);
    }
    std::vector<Elem> c;
    c.push_back(a.ring()->zero());
    for (const auto& x : WittImpl::comps(a)) c.push_back(x);
    return WittImpl::make_comps(a.ring(), std::move(c));
}

bool is_in_I(const WittVector& a) {
    if (a.fast()) {
        for (auto v : a.gr())
            if (v % a.ring()->p()) return false;
        return true;
    }
    return a.ring()->is_zero(WittImpl::comps(a)[0]);
}

WittVector v_inverse(const WittVector& a) {
    if (!is_in_I(a)) fail(Errc::NotInI, "leading component is nonzero");
    if (a.length() < 2) fail(Errc::LengthTooShort, "V^{-1} needs length at least 2");
    const int n = a.length() - 1;
    if (a.fast()) {
        const GRCtx& C = ctx(a.ring());
        GR y = a.gr();
        for (auto& v : y) v /= C.p;
        return WittImpl::make_gr(a.ring(), n, gr_sigma(C, y, n));
    }
    const auto& c = WittImpl::comps(a);
    return WittImpl::make_comps(a.ring(), std::vector<Elem>(c.begin() + 1, c.end()));
}

WittVector truncate(const WittVector& a, int m) {
    if (m > a.length()) fail(Errc::LevelMismatch, "cannot truncate to a larger length");
    check_len(m);
    if (m == a.length()) return a;
    if (a.fast()) return WittImpl::make_gr(a.ring(), m, gr_reduce(ctx(a.ring()), a.gr(), m));
    const auto& c = WittImpl::comps(a);
    return WittImpl::make_comps(a.ring(), std::vector<Elem>(c.begin(), c.begin() + m));
}

bool is_unit(const WittVector& a) {
    if (a.fast()) return gr_residue(ctx(a.ring()), a.gr()) != 0;
    return a.ring()->is_unit(WittImpl::comps(a)[0]);
}

WittVector witt_inverse(const WittVector& a) {
    if (!is_unit(a)) fail(Errc::NotUnit, "Witt vector is not a unit");
    const BaseRing* R = a.ring();
    const int n = a.length();
    if (a.fast()) return WittImpl::make_gr(R, n, gr_inv(ctx(R), a.gr(), n));
    // a = [c](1 - m) with m in I, and m^n = 0 in characteristic p
    const Elem ci = R->inv(WittImpl::comps(a)[0]);
    WittVector tc = WittVector::teich(R, n, ci);
    WittVector m = witt_sub(WittVector::one(R, n), witt_mul(tc, a));
    WittVector s = WittVector::one(R, n), mk = WittVector::one(R, n);
    for (int k = 1; k < n; ++k) {
        mk = witt_mul(mk, m);
        s = witt_add(s, mk);
    }
    return witt_mul(tc, s);
}

int valuation(const WittVector& a) {
    if (a.fast()) {
        const GRCtx& C = ctx(a.ring());
        int v = a.length();
        for (auto c : a.gr()) {
            if (!c) continue;
            int k = 0;
            while (c % C.p == 0) {
                c /= C.p;
                ++k;
            }
            v = std::min(v, k);
        }
        return v;
    }
    const auto& c = WittImpl::comps(a);
    for (int i = 0; i < a.length(); ++i)
        if (!a.ring()->is_zero(c[i])) return i;
    return a.length();
}

std::pair<Elem, WittVector> norman_split(const WittVector& a) {
    const BaseRing* R = a.ring();
    if (R->kind() != BaseRing::Kind::DualNumbers) fail(Errc::UnsupportedBase, "Norman splitting needs dual numbers");
    const auto& c = WittImpl::comps(a);
    for (const auto& x : c)
        if (!R->in_eps_ideal(x)) fail(Errc::NotInIdeal, "component is not a multiple of eps");
    // (eps R)^2 = 0 and p eps = 0, so addition in W(eps R) is componentwise
    std::vector<Elem> v = c;
    v[0] = R->zero();
    return {c[0], WittImpl::make_comps(R, std::move(v))};
}

WittVector norman_combine(const BaseRing* R, const Elem& lin, const WittVector& vpart) {
    if (!R->in_eps_ideal(lin)) fail(Errc::NotInIdeal, "linear part is not a multiple of eps");
    if (!is_in_I(vpart)) fail(Errc::NotInI, "second summand must lie in I");
    return witt_add(WittVector::teich(R, vpart.length(), lin), vpart);
}

bool lex_less(const WittVector& a, const WittVector& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.fast() && b.fast()) {
        if (a.gr() == b.gr()) return false;
        return a.components() < b.components();
    }
    return a.components() < b.components();
}

}  // namespace dlab
