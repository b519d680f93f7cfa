#include "displaylab/field.hpp"

#include <algorithm>

#include "displaylab/errors.hpp"

namespace dlab {

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// polynomials over F_p as coefficient vectors, used only during field setup
using PP = std::vector<std::uint32_t>;

void ptrim(PP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PP pmod(PP a, const PP& m, std::uint32_t p) {
    ptrim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    const std::uint32_t lead_inv = static_cast<std::uint32_t>(powmod64(m.back(), p - 2, p));
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int shift = static_cast<int>(a.size()) - 1 - dm;
        const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        for (int i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
        ptrim(a);
    }
    return a;
}

PP pmulmod(const PP& a, const PP& b, const PP& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    return pmod(r, m, p);
}

PP pgcd(PP a, PP b, std::uint32_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PP r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f) {
    const int e = static_cast<int>(f.size()) - 1;
    if (e < 1) return false;
    if (e == 1) return true;
    // f irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= e/2 (f squarefree is implied)
    PP xp = {0, 1};
    for (int i = 1; i <= e / 2; ++i) {
        // xp <- xp^p mod f
        PP acc = {1}, base = xp;
        std::uint32_t k = p;
        while (k) {
            if (k & 1) acc = pmulmod(acc, base, f, p);
            base = pmulmod(base, base, f, p);
            k >>= 1;
        }
        xp = acc;
        PP g = xp;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        ptrim(g);
        if (g.empty()) return false;
        if (pgcd(f, g, p).size() > 1) return false;
    }
    return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, int e) {
    if (e == 1) return {0, 1};
    // enumerate c_{e-1}..c_0 lexicographically: counter with c_0 least significant
    std::vector<std::uint32_t> f(e + 1, 0);
    f[e] = 1;
    while (true) {
        if (f[0] != 0 && is_irreducible(p, f)) return f;
        int i = 0;
        while (i < e && ++f[i] == p) f[i++] = 0;
        if (i == e) fail(Errc::InvalidArgument, "no irreducible polynomial found");
    }
}

Fq::Fq(std::uint32_t p, int e) : Fq(p, smallest_irreducible(p, e)) {}

Fq::Fq(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
    if (!is_prime(p)) fail(Errc::InvalidArgument, "p is not prime");
    e_ = static_cast<int>(mod_.size()) - 1;
    if (e_ < 1 || mod_.back() != 1) fail(Errc::InvalidArgument, "modulus must be monic of degree >= 1");
    if (!is_irreducible(p, mod_)) fail(Errc::InvalidArgument, "modulus is reducible");
    q_ = 1;
    ppow_.push_back(1);
    for (int i = 0; i < e_; ++i) {
        if (q_ > (std::uint64_t{1} << 62) / p) fail(Errc::InvalidArgument, "field too large");
        q_ *= p;
        ppow_.push_back(q_);
    }
    init_tables();
}

void Fq::init_tables() {
    if (e_ == 1) return;
    if (q_ <= 1024) {
        addt_.resize(q_ * q_);
        for (fe a = 0; a < q_; ++a)
            for (fe b = 0; b < q_; ++b) {
                fe r = 0;
                for (int i = 0; i < e_; ++i) r += ((a / ppow_[i] % p_ + b / ppow_[i] % p_) % p_) * ppow_[i];
                addt_[a * q_ + b] = static_cast<std::uint16_t>(r);
            }
    }
    if (q_ <= (1u << 16)) {
        // find a generator of the multiplicative group
        std::vector<std::uint64_t> primes;
        std::uint64_t m = q_ - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                primes.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) primes.push_back(m);
        fe g = 0;
        for (fe cand = 2; cand < q_; ++cand) {
            bool ok = true;
            for (auto r : primes)
                if (pow(cand, (q_ - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                g = cand;
                break;
            }
        }
        exp_.resize(2 * (q_ - 1));
        log_.assign(q_, 0);
        fe x = 1;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = exp_[i + q_ - 1] = static_cast<std::uint32_t>(x);
            log_[x] = static_cast<std::uint32_t>(i);
            x = mul_slow(x, g);
        }
    }
}

std::uint32_t Fq::coeff(fe a, int i) const { return static_cast<std::uint32_t>(a / ppow_[i] % p_); }

std::vector<std::uint32_t> Fq::coeffs(fe a) const {
    std::vector<std::uint32_t> c(e_);
    for (int i = 0; i < e_; ++i) {
        c[i] = static_cast<std::uint32_t>(a % p_);
        a /= p_;
    }
    return c;
}

fe Fq::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (static_cast<int>(c.size()) > e_) fail(Errc::InvalidArgument, "too many field coefficients");
    fe r = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[i] >= p_) fail(Errc::InvalidArgument, "field coefficient out of range");
        r = r * p_ + c[i];
    }
    return r;
}

fe Fq::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<fe>(r);
}

fe Fq::add(fe a, fe b) const {
    if (e_ == 1) {
        fe s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (!addt_.empty()) return addt_[a * q_ + b];
    fe r = 0, pw = 1;
    while (a || b) {
        std::uint32_t s = static_cast<std::uint32_t>(a % p_ + b % p_);
        if (s >= p_) s -= p_;
        r += s * pw;
        pw *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

fe Fq::neg(fe a) const {
    if (e_ == 1) return a ? p_ - a : 0;
    fe r = 0, pw = 1;
    while (a) {
        std::uint32_t c = static_cast<std::uint32_t>(a % p_);
        r += (c ? p_ - c : 0) * pw;
        pw *= p_;
        a /= p_;
    }
    return r;
}

fe Fq::mul_slow(fe a, fe b) const {
    auto ca = coeffs(a), cb = coeffs(b);
    std::vector<std::uint64_t> r(2 * e_, 0);
    for (int i = 0; i < e_; ++i)
        if (ca[i])
            for (int j = 0; j < e_; ++j) r[i + j] = (r[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_;
    for (int k = 2 * e_ - 2; k >= e_; --k) {
        const std::uint64_t c = r[k];
        if (!c) continue;
        r[k] = 0;
        for (int i = 0; i < e_; ++i) r[k - e_ + i] = (r[k - e_ + i] + (p_ - c) * mod_[i]) % p_;
    }
    fe out = 0;
    for (int i = e_ - 1; i >= 0; --i) out = out * p_ + r[i];
    return out;
}

fe Fq::mul(fe a, fe b) const {
    if (e_ == 1) return a * b % p_;
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return mul_slow(a, b);
}

fe Fq::pow(fe a, std::uint64_t k) const {
    if (e_ == 1) return powmod64(a, k, p_);
    if (a == 0) return k == 0 ? 1 : 0;
    if (!exp_.empty()) return exp_[static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1)) % (q_ - 1)];
    fe r = 1;
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

fe Fq::inv(fe a) const {
    if (a == 0) fail(Errc::NotUnit, "zero is not invertible");
    return pow(a, q_ - 2);
}

fe Fq::frob_inv(fe a) const {
    // inverse of x -> x^p is x -> x^{p^{e-1}}
    fe r = a;
    for (int i = 0; i + 1 < e_; ++i) r = frob(r);
    return r;
}

namespace upoly {

void trim(P& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const P& a) { return static_cast<int>(a.size()) - 1; }

P add(const Fq& F, const P& a, const P& b) {
    P r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

P sub(const Fq& F, const P& a, const P& b) {
    P r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

P mul(const Fq& F, const P& a, const P& b) {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

P scale(const Fq& F, const P& a, fe c) {
    P r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    trim(r);
    return r;
}

void divmod(const Fq& F, const P& a, const P& b, P& quo, P& rem) {
    if (b.empty()) fail(Errc::InvalidArgument, "polynomial division by zero");
    rem = a;
    trim(rem);
    const int db = deg(b);
    quo.assign(rem.size() > b.size() - 1 ? rem.size() - b.size() + 1 : 0, 0);
    const fe li = F.inv(b.back());
    while (deg(rem) >= db) {
        const int s = deg(rem) - db;
        const fe c = F.mul(rem.back(), li);
        quo[s] = c;
        for (int i = 0; i <= db; ++i) rem[s + i] = F.sub(rem[s + i], F.mul(c, b[i]));
        trim(rem);
    }
    trim(quo);
}

P mod(const Fq& F, const P& a, const P& b) {
    P q, r;
    divmod(F, a, b, q, r);
    return r;
}

P make_monic(const Fq& F, const P& a) {
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

P gcd(const Fq& F, P a, P b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        P r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(F, a);
}

fe eval(const Fq& F, const P& a, fe x) {
    fe r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = F.add(F.mul(r, x), *it);
    return r;
}

}  // namespace upoly
}  // namespace dlab
