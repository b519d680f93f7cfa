#include "displaylab/wittpoly.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "displaylab/errors.hpp"
#include "displaylab/field.hpp"

namespace dlab {

namespace {

struct ExpsHash {
    std::size_t operator()(const Exps& e) const noexcept {
        std::uint64_t h = 0x84222325cbf29ce4ULL;
        for (auto v : e) h = (h ^ v) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h);
    }
};

// Exact integer coefficients.
struct ZOps {
    using T = mpz_class;
    std::uint32_t p;
    T from(long v) const { return T(v); }
    void add_to(T& a, const T& b) const { a += b; }
    T mul(const T& a, const T& b) const { return a * b; }
    bool is_zero(const T& a) const { return a == 0; }
    T div_pk(const T& a, std::uint64_t pk) const {
        if (mpz_divisible_ui_p(a.get_mpz_t(), pk) == 0) fail(Errc::InvalidArgument, "Witt polynomial division not exact");
        T r;
        mpz_divexact_ui(r.get_mpz_t(), a.get_mpz_t(), pk);
        return r;
    }
};

// Coefficients modulo M = p^n. Enough to recover everything mod p (see witt_tables).
struct ModOps {
    using T = std::uint64_t;
    std::uint32_t p;
    std::uint64_t M;
    T from(long v) const {
        long r = v % static_cast<long>(M);
        return static_cast<T>(r < 0 ? r + static_cast<long>(M) : r);
    }
    void add_to(T& a, const T& b) const {
        a += b;
        if (a >= M) a -= M;
    }
    T mul(const T& a, const T& b) const { return mulmod64(a, b, M); }
    bool is_zero(const T& a) const { return a == 0; }
    T div_pk(const T& a, std::uint64_t pk) const {
        if (a % pk != 0) fail(Errc::InvalidArgument, "Witt polynomial division not exact");
        return a / pk;  // well defined modulo M / pk
    }
};

template <class Ops>
using Map = std::unordered_map<Exps, typename Ops::T, ExpsHash>;

template <class Ops>
void prune(const Ops& ops, Map<Ops>& a) {
    for (auto it = a.begin(); it != a.end();)
        it = ops.is_zero(it->second) ? a.erase(it) : std::next(it);
}

template <class Ops>
Map<Ops> pmul(const Ops& ops, const Map<Ops>& a, const Map<Ops>& b) {
    Map<Ops> r;
    r.reserve(a.size() * b.size() / 2 + 1);
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exps e;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto [it, fresh] = r.try_emplace(e, ops.mul(ca, cb));
            if (!fresh) ops.add_to(it->second, ops.mul(ca, cb));
        }
    prune(ops, r);
    return r;
}

template <class Ops>
Map<Ops> ppow(const Ops& ops, const Map<Ops>& a, std::uint32_t k) {
    Map<Ops> r;
    r.emplace(Exps{}, ops.from(1));
    Map<Ops> base = a;
    while (k) {
        if (k & 1) r = pmul(ops, r, base);
        k >>= 1;
        if (k) base = pmul(ops, base, base);
    }
    return r;
}

template <class Ops>
void paxpy(const Ops& ops, Map<Ops>& acc, const Map<Ops>& a, const typename Ops::T& c) {
    for (const auto& [e, v] : a) {
        auto [it, fresh] = acc.try_emplace(e, ops.mul(v, c));
        if (!fresh) ops.add_to(it->second, ops.mul(v, c));
    }
}

template <class Ops>
Map<Ops> var(const Ops& ops, int idx) {
    Exps e{};
    e[idx] = 1;
    Map<Ops> r;
    r.emplace(e, ops.from(1));
    return r;
}

// w_k of the variables starting at slot `base`
template <class Ops>
Map<Ops> ghost_poly(const Ops& ops, int base, int k) {
    Map<Ops> r;
    std::uint64_t pj = 1;
    for (int j = 0; j <= k; ++j) {
        Exps e{};
        std::uint64_t ex = 1;
        for (int t = 0; t < k - j; ++t) ex *= ops.p;
        e[base + j] = static_cast<std::uint32_t>(ex);
        r.emplace(e, ops.from(static_cast<long>(pj)));
        pj *= ops.p;
    }
    return r;
}

template <class Ops>
struct Raw {
    std::vector<Map<Ops>> S, P, Fr;
};

// Solve the ghost recursion sum_{i<=k} p^i Q_i^{p^{k-i}} = target_k for Q_k.
// With reduce_mod_p the stored Q_i are reduced to [0,p) before powering, which
// keeps every p^i Q_i^{p^{k-i}} correct modulo p^{k+1}.
template <class Ops, class Target>
std::vector<Map<Ops>> ghost_solve(const Ops& ops, int n, Target target, bool reduce_mod_p) {
    std::vector<Map<Ops>> Q;
    std::vector<Map<Ops>> pw;  // pw[i] = Q_i^{p^{k-1-i}} from the previous round
    for (int k = 0; k < n; ++k) {
        for (auto& m : pw) m = ppow(ops, m, ops.p);
        Map<Ops> num = target(k);
        std::uint64_t pi = 1;
        for (int i = 0; i < k; ++i) {
            paxpy(ops, num, pw[i], ops.from(-static_cast<long>(pi)));
            pi *= ops.p;
        }
        prune(ops, num);
        Map<Ops> qk;
        for (auto& [e, c] : num) qk.emplace(e, ops.div_pk(c, pi));
        if (reduce_mod_p) {
            Map<Ops> red;
            for (auto& [e, c] : qk) {
                auto v = static_cast<typename Ops::T>(c % ops.p);
                if (!ops.is_zero(v)) red.emplace(e, v);
            }
            qk = std::move(red);
        }
        prune(ops, qk);
        Q.push_back(qk);
        pw.push_back(qk);
    }
    return Q;
}

template <class Ops>
Raw<Ops> compute_raw(const Ops& ops, int n, bool reduce_mod_p) {
    Raw<Ops> raw;
    raw.S = ghost_solve(
        ops, n,
        [&](int k) {
            auto t = ghost_poly(ops, 0, k);
            paxpy(ops, t, ghost_poly(ops, n, k), ops.from(1));
            return t;
        },
        reduce_mod_p);
    raw.P = ghost_solve(
        ops, n, [&](int k) { return pmul(ops, ghost_poly(ops, 0, k), ghost_poly(ops, n, k)); }, reduce_mod_p);
    // Frobenius: w_k(F x) = w_{k+1}(x), variables x_0..x_n at slots 0..n
    raw.Fr = ghost_solve(ops, n, [&](int k) { return ghost_poly(ops, 0, k + 1); }, reduce_mod_p);
    return raw;
}

IntPoly to_int_poly(const Map<ZOps>& m) {
    IntPoly r;
    r.terms.assign(m.begin(), m.end());
    std::sort(r.terms.begin(), r.terms.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return r;
}

std::string cache_path(std::uint32_t p, int n) {
    const char* dir = std::getenv("DISPLAYLAB_CACHE");
    if (!dir || !*dir) return {};
    std::ostringstream os;
    os << dir << "/witt_p" << p << "_n" << n << ".txt";
    return os.str();
}

void write_polys(std::ostream& os, const std::vector<IntPoly>& v) {
    os << v.size() << '\n';
    for (const auto& poly : v) {
        os << poly.terms.size() << '\n';
        for (const auto& [e, c] : poly.terms) {
            os << c.get_str();
            for (auto x : e) os << ' ' << x;
            os << '\n';
        }
    }
}

bool read_polys(std::istream& is, std::vector<IntPoly>& v) {
    std::size_t cnt;
    if (!(is >> cnt)) return false;
    v.resize(cnt);
    for (auto& poly : v) {
        std::size_t nt;
        if (!(is >> nt)) return false;
        poly.terms.resize(nt);
        for (auto& [e, c] : poly.terms) {
            std::string s;
            if (!(is >> s)) return false;
            c = mpz_class(s);
            for (auto& x : e)
                if (!(is >> x)) return false;
        }
    }
    return true;
}

bool load_cache(const std::string& path, UniversalWittPolys& u) {
    std::ifstream in(path);
    if (!in) return false;
    std::string magic;
    std::uint32_t p;
    int n;
    if (!(in >> magic >> p >> n) || magic != "displaylab-witt-v1" || p != u.p || n != u.n) return false;
    return read_polys(in, u.S) && read_polys(in, u.P) && read_polys(in, u.Fr);
}

void store_cache(const std::string& path, const UniversalWittPolys& u) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(path).parent_path(), ec);
    // write-once: a concurrent writer produces identical bytes, rename is atomic
    const std::string tmp = path + ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(&u));
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << "displaylab-witt-v1 " << u.p << ' ' << u.n << '\n';
        write_polys(out, u.S);
        write_polys(out, u.P);
        write_polys(out, u.Fr);
    }
    fs::rename(tmp, path, ec);
    if (ec) fs::remove(tmp, ec);
}

ModPoly to_mod(const std::vector<std::pair<Exps, std::uint32_t>>& terms) {
    ModPoly r;
    for (const auto& [e, c] : terms) {
        ModTerm t;
        t.coef = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t.vars.emplace_back(static_cast<std::uint8_t>(i), e[i]);
        r.terms.push_back(std::move(t));
    }
    return r;
}

template <class M>
std::vector<std::pair<Exps, std::uint32_t>> sorted_mod_p(const M& m, std::uint32_t p) {
    std::vector<std::pair<Exps, std::uint32_t>> v;
    for (const auto& [e, c] : m) {
        std::uint32_t r;
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, mpz_class>) {
            mpz_class t = c % p;
            if (t < 0) t += p;
            r = static_cast<std::uint32_t>(t.get_ui());
        } else {
            r = static_cast<std::uint32_t>(c % p);
        }
        if (r) v.emplace_back(e, r);
    }
    std::sort(v.begin(), v.end());
    return v;
}

std::mutex g_poly_mu;

}  // namespace

std::string IntPoly::to_string(int n) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        first = false;
        mpz_class a = abs(c);
        bool any = false;
        if (a != 1) {
            os << a.get_str();
            any = true;
        }
        for (int i = 0; i < 2 * n + 1 && i < static_cast<int>(e.size()); ++i) {
            if (!e[i]) continue;
            if (any) os << '*';
            os << (i < n ? "x" : "y") << (i < n ? i : i - n);
            if (e[i] > 1) os << '^' << e[i];
            any = true;
        }
        if (!any) os << '1';
    }
    if (first) os << '0';
    return os.str();
}

const UniversalWittPolys& compute_witt_polys(std::uint32_t p, int n) {
    if (n > kMaxLevel) fail(Errc::LevelTooLarge, "level " + std::to_string(n) + " exceeds 8");
    if (n < 1) fail(Errc::InvalidArgument, "level must be positive");
    static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<UniversalWittPolys>> memo;
    std::lock_guard lk(g_poly_mu);
    auto key = std::make_pair(p, n);
    if (auto it = memo.find(key); it != memo.end()) return *it->second;
    auto u = std::make_unique<UniversalWittPolys>();
    u->p = p;
    u->n = n;
    const std::string path = cache_path(p, n);
    if (path.empty() || !load_cache(path, *u)) {
        ZOps ops{p};
        auto raw = compute_raw(ops, n, false);
        for (auto& m : raw.S) u->S.push_back(to_int_poly(m));
        for (auto& m : raw.P) u->P.push_back(to_int_poly(m));
        for (auto& m : raw.Fr) u->Fr.push_back(to_int_poly(m));
        if (!path.empty()) store_cache(path, *u);
    }
    return *memo.emplace(key, std::move(u)).first->second;
}

const WittTables& witt_tables(std::uint32_t p, int n) {
    if (n > kMaxLevel) fail(Errc::LevelTooLarge, "level " + std::to_string(n) + " exceeds 8");
    static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<WittTables>> memo;
    {
        std::lock_guard lk(g_poly_mu);
        auto it = memo.find({p, n});
        if (it != memo.end()) return *it->second;
    }
    // Computed modulo p^n with intermediate results reduced mod p; the exact
    // polynomials are not needed for evaluation in characteristic p.
    std::uint64_t M = 1;
    for (int i = 0; i < n; ++i) M *= p;
    ModOps ops{p, M};
    auto raw = compute_raw(ops, n, true);
    auto t = std::make_unique<WittTables>();
    t->p = p;
    t->n = n;
    t->max_exp.assign(2 * n + 1, 0);
    auto conv = [&](std::vector<Map<ModOps>>& src, std::vector<ModPoly>& dst, bool track) {
        for (auto& m : src) {
            auto v = sorted_mod_p(m, p);
            if (track)
                for (auto& [e, c] : v)
                    for (int i = 0; i < 2 * n; ++i) t->max_exp[i] = std::max(t->max_exp[i], e[i]);
            dst.push_back(to_mod(v));
        }
    };
    conv(raw.S, t->S, true);
    conv(raw.P, t->P, true);
    conv(raw.Fr, t->Fr, false);
    std::lock_guard lk(g_poly_mu);
    return *memo.emplace(std::make_pair(p, n), std::move(t)).first->second;
}

std::vector<mpz_class> ghost(const std::vector<mpz_class>& x, std::uint32_t p) {
    std::vector<mpz_class> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mpz_class acc = 0, pj = 1;
        for (std::size_t j = 0; j <= i; ++j) {
            mpz_class t;
            mpz_class ex;
            mpz_ui_pow_ui(ex.get_mpz_t(), p, i - j);
            mpz_pow_ui(t.get_mpz_t(), x[j].get_mpz_t(), ex.get_ui());
            acc += pj * t;
            pj *= p;
        }
        w[i] = acc;
    }
    return w;
}

std::vector<mpz_class> eval_int(const std::vector<IntPoly>& polys, const std::vector<mpz_class>& vars) {
    std::vector<std::map<std::uint32_t, mpz_class>> cache(vars.size());
    auto power = [&](std::size_t v, std::uint32_t ex) -> const mpz_class& {
        auto it = cache[v].find(ex);
        if (it != cache[v].end()) return it->second;
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), vars[v].get_mpz_t(), ex);
        return cache[v].emplace(ex, std::move(pw)).first->second;
    };
    std::vector<mpz_class> out;
    for (const auto& poly : polys) {
        mpz_class acc = 0;
        for (const auto& [e, c] : poly.terms) {
            mpz_class t = c;
            for (std::size_t i = 0; i < vars.size() && i < e.size(); ++i)
                if (e[i]) t *= power(i, e[i]);
            acc += t;
        }
        out.push_back(acc);
    }
    return out;
}

}  // namespace dlab
