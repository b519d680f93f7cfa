#include "displaylab/display.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "displaylab/errors.hpp"
#include "displaylab/fp_linalg.hpp"

namespace dlab {

namespace {

std::vector<int> standard_weights(int h, int d) {
    std::vector<int> w(h, 0);
    for (int i = 0; i < d; ++i) w[i] = 1;
    return w;
}

void check_hd(int h, int d) {
    if (h < 1) fail(Errc::InvalidArgument, "height must be positive");
    if (d < 0 || d > h) fail(Errc::InvalidArgument, "dimension must lie in [0, h]");
}

bool is_dual(const BaseRing* R) { return R->kind() == BaseRing::Kind::DualNumbers; }

std::vector<WittVector> ones(const BaseRing* R, int n, int count) {
    return std::vector<WittVector>(count, WittVector::one(R, n));
}

}  // namespace

// ---------------------------------------------------------------- shapes

Shape Shape::linear(int h, int d) {
    check_hd(h, d);
    Shape s;
    s.kind = Kind::Linear;
    s.h = h;
    s.weights = {standard_weights(h, d)};
    return s;
}

Shape Shape::graded(int h, const std::vector<int>& d) {
    if (d.empty()) fail(Errc::InvalidArgument, "graded shape needs at least one slot");
    Shape s;
    s.kind = Kind::Graded;
    s.h = h;
    for (int x : d) {
        check_hd(h, x);
        s.weights.push_back(standard_weights(h, x));
    }
    return s;
}

Shape Shape::unitary(int h, const std::vector<int>& dh) {
    if (dh.empty()) fail(Errc::InvalidArgument, "unitary shape needs r >= 1");
    const int r = static_cast<int>(dh.size());
    Shape s;
    s.kind = Kind::Unitary;
    s.h = h;
    s.weights.resize(2 * r);
    s.J.resize(2 * r);
    for (int i = 0; i < r; ++i) {
        check_hd(h, dh[i]);
        s.weights[i] = standard_weights(h, dh[i]);
        s.weights[i + r] = standard_weights(h, h - dh[i]);
        std::vector<std::vector<long>> J(h, std::vector<long>(h, 0)), Jt = J;
        for (int a = 0; a < h; ++a) J[a][h - 1 - a] = 1;
        for (int a = 0; a < h; ++a)
            for (int b = 0; b < h; ++b) Jt[a][b] = -J[b][a];
        s.J[i] = J;
        s.J[i + r] = Jt;
    }
    return s;
}

Shape Shape::from_weights(const std::vector<std::vector<int>>& w) {
    if (w.empty() || w[0].empty()) fail(Errc::InvalidArgument, "empty weight data");
    Shape s;
    s.kind = w.size() == 1 ? Kind::Linear : Kind::Graded;
    s.h = static_cast<int>(w[0].size());
    for (const auto& x : w) {
        if (static_cast<int>(x.size()) != s.h) fail(Errc::ShapeMismatch, "slots of different heights");
        for (int v : x)
            if (v != 0 && v != 1) fail(Errc::WeightOutOfRange, "display weights must be 0 or 1");
    }
    s.weights = w;
    return s;
}

int Shape::d(int s) const {
    return static_cast<int>(std::count(weights.at(s).begin(), weights.at(s).end(), 1));
}

bool Shape::standard() const {
    for (int s = 0; s < slots(); ++s)
        if (weights[s] != standard_weights(h, d(s))) return false;
    return true;
}

std::string Shape::describe() const {
    std::ostringstream os;
    os << (kind == Kind::Linear ? "linear" : kind == Kind::Graded ? "graded" : "unitary") << "(h=" << h;
    if (standard()) {
        os << ",d=";
        if (slots() == 1) {
            os << d(0);
        } else {
            os << "[";
            for (int s = 0; s < half(); ++s) os << (s ? "," : "") << d(s);
            os << "]";
        }
    } else {
        os << ",w=[";
        for (int s = 0; s < slots(); ++s) {
            os << (s ? "," : "") << "[";
            for (int i = 0; i < h; ++i) os << (i ? "," : "") << weights[s][i];
            os << "]";
        }
        os << "]";
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------- construction

void validate(const Display& D) {
    const Shape& s = D.shape;
    if (s.slots() < 1 || static_cast<int>(D.U.size()) != s.slots())
        fail(Errc::ShapeMismatch, "display needs one matrix per slot");
    for (const auto& U : D.U) {
        if (U.rows() != s.h || U.cols() != s.h) fail(Errc::ShapeMismatch, "display matrix has the wrong size");
        if (U.ring() != D.U[0].ring()) fail(Errc::RingMismatch, "display slots over different rings");
        if (U.level() != D.U[0].level()) fail(Errc::LevelMismatch, "display slots of different levels");
        if (!is_invertible(U)) fail(Errc::NotUnit, "display matrix is not invertible");
    }
    if (s.kind == Shape::Kind::Unitary && static_cast<int>(D.multiplier.size()) != s.slots())
        fail(Errc::ShapeMismatch, "unitary display needs a multiplier per slot");
}

bool in_parabolic(const WMat& k, const std::vector<int>& w, bool hat) {
    if (!k.square() || k.rows() != static_cast<int>(w.size())) return false;
    const BaseRing* R = k.ring();
    for (int i = 0; i < k.rows(); ++i)
        for (int j = 0; j < k.cols(); ++j) {
            if (w[i] - w[j] != 1) continue;
            const WittVector& x = k.at(i, j);
            if (is_in_I(x)) continue;
            if (hat && is_dual(R) && R->in_eps_ideal(x.component(0))) continue;
            return false;
        }
    return is_invertible(k);
}

void validate(const Parabolic& k) {
    const Shape& s = k.shape;
    if (static_cast<int>(k.k.size()) != s.slots()) fail(Errc::ShapeMismatch, "parabolic needs one matrix per slot");
    if (k.level() < 2) fail(Errc::LengthTooShort, "parabolic elements live at level n+1 >= 2");
    for (int i = 0; i < s.slots(); ++i) {
        if (k.k[i].ring() != k.k[0].ring()) fail(Errc::RingMismatch, "parabolic slots over different rings");
        if (k.k[i].level() != k.k[0].level()) fail(Errc::LevelMismatch, "parabolic slots of different levels");
        if (!in_parabolic(k.k[i], s.weights[i], k.hat)) fail(Errc::InvalidParabolic, "matrix is not in the parabolic");
    }
}

Display make_display(const Shape& s, const std::vector<WMat>& U) {
    Display D{s, U, 0, {}};
    if (s.kind == Shape::Kind::Unitary && !U.empty()) D.multiplier = ones(U[0].ring(), U[0].level(), s.slots());
    validate(D);
    return D;
}

Display identity_display(const Shape& s, const BaseRing* R, int n) {
    return make_display(s, std::vector<WMat>(s.slots(), WMat::identity(R, n, s.h)));
}

Parabolic make_parabolic(const Shape& s, const std::vector<WMat>& k) {
    Parabolic P{s, k, {}, false};
    if (s.kind == Shape::Kind::Unitary && !k.empty()) P.m = ones(k[0].ring(), k[0].level(), s.slots());
    validate(P);
    return P;
}

Parabolic identity_parabolic(const Shape& s, const BaseRing* R, int n1) {
    return make_parabolic(s, std::vector<WMat>(s.slots(), WMat::identity(R, n1, s.h)));
}

Display truncate(const Display& D, int m) {
    Display r = D;
    for (auto& U : r.U) U = mat_truncate(U, m);
    for (auto& c : r.multiplier) c = truncate(c, m);
    return r;
}

Parabolic truncate(const Parabolic& k, int m1) {
    Parabolic r = k;
    for (auto& x : r.k) x = mat_truncate(x, m1);
    for (auto& c : r.m) c = truncate(c, m1);
    return r;
}

// ---------------------------------------------------------------- twisted Frobenius

namespace {

// V^{-1} extended over dual numbers: x = x' + y with x' the constant lift of
// the reduction and y in W(eps R); the leading eps-coordinate of y is dropped.
WittVector vinv_hat(const WittVector& x, bool hat) {
    if (is_in_I(x)) return v_inverse(x);
    const BaseRing* R = x.ring();
    if (!hat || !is_dual(R) || !R->in_eps_ideal(x.component(0)))
        fail(Errc::InvalidParabolic, "B-block entry is not in I");
    std::vector<Elem> lc, yc;
    for (int i = 0; i < x.length(); ++i) lc.push_back(R->make_dual(R->dual_a(x.component(i)), 0));
    WittVector xl(R, lc);
    if (!is_in_I(xl)) fail(Errc::InvalidParabolic, "B-block entry is not in I modulo eps");
    WittVector y = x - xl;
    for (int i = 1; i < y.length(); ++i) yc.push_back(y.component(i));
    return v_inverse(xl) + WittVector(R, yc);
}

}  // namespace

WMat phi_twist(const WMat& k, const std::vector<int>& w, bool hat) {
    if (!k.square() || k.rows() != static_cast<int>(w.size())) fail(Errc::ShapeMismatch, "weights do not match matrix");
    if (k.level() < 2) fail(Errc::LengthTooShort, "twisted Frobenius needs level >= 2");
    const int h = k.rows(), n = k.level() - 1;
    const auto p = static_cast<std::int64_t>(k.ring()->p());
    WMat r(k.ring(), n, h, h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            const WittVector& x = k.at(i, j);
            switch (w[i] - w[j]) {
                case 0: r.at(i, j) = frobenius(x); break;
                case 1: r.at(i, j) = vinv_hat(x, hat); break;
                case -1: r.at(i, j) = witt_scale(frobenius(x), p); break;
                default: fail(Errc::WeightOutOfRange, "weights differ by more than one");
            }
        }
    return r;
}

std::vector<WMat> phi_twist(const Parabolic& k) {
    std::vector<WMat> r;
    for (int s = 0; s < k.shape.slots(); ++s) r.push_back(phi_twist(k.k[s], k.shape.weights[s], k.hat));
    return r;
}

namespace {

void check_compatible(const Parabolic& k, const Display& a) {
    if (k.shape != a.shape) fail(Errc::ShapeMismatch, "shapes differ");
    if (k.ring() != a.ring()) fail(Errc::RingMismatch, "rings differ");
    if (k.level() != a.level() + 1) fail(Errc::LevelMismatch, "parabolic must have level n+1");
}

std::vector<WittVector> multipliers_or_ones(const Parabolic& k) {
    if (!k.m.empty()) return k.m;
    return ones(k.ring(), k.level(), k.shape.slots());
}

}  // namespace

bool is_morphism(const Parabolic& k, const Display& src, const Display& dst) {
    if (src.shape != dst.shape) fail(Errc::ShapeMismatch, "shapes differ");
    if (src.ring() != dst.ring()) fail(Errc::RingMismatch, "rings differ");
    if (src.level() != dst.level()) fail(Errc::LevelMismatch, "levels differ");
    check_compatible(k, src);
    validate(k);
    if (src.central != dst.central) return false;
    const int S = src.shape.slots(), n = src.level();
    const auto ph = phi_twist(k);
    for (int s = 0; s < S; ++s)
        if (mat_truncate(k.k[s], n) * src.U[s] != dst.U[s] * ph[(s + 1) % S]) return false;
    if (src.shape.kind == Shape::Kind::Unitary) {
        const auto m = multipliers_or_ones(k);
        for (int s = 0; s < S; ++s) {
            WittVector want = witt_inverse(truncate(m[s], n)) * dst.multiplier[s] * frobenius(m[(s + 1) % S]);
            if (want != src.multiplier[s]) return false;
        }
    }
    return true;
}

Display twist_conjugate(const Display& U, const Parabolic& k) {
    validate(U);
    check_compatible(k, U);
    validate(k);
    const int S = U.shape.slots(), n = U.level();
    const auto ph = phi_twist(k);
    Display r = U;
    for (int s = 0; s < S; ++s) r.U[s] = inverse(mat_truncate(k.k[s], n)) * U.U[s] * ph[(s + 1) % S];
    if (U.shape.kind == Shape::Kind::Unitary) {
        const auto m = multipliers_or_ones(k);
        for (int s = 0; s < S; ++s)
            r.multiplier[s] = witt_inverse(truncate(m[s], n)) * U.multiplier[s] * frobenius(m[(s + 1) % S]);
    }
    return r;
}

Parabolic compose(const Parabolic& k2, const Parabolic& k1) {
    if (k1.shape != k2.shape) fail(Errc::ShapeMismatch, "shapes differ");
    if (k1.level() != k2.level()) fail(Errc::LevelMismatch, "levels differ");
    Parabolic r = k1;
    r.hat = k1.hat || k2.hat;
    for (int s = 0; s < k1.shape.slots(); ++s) r.k[s] = k2.k[s] * k1.k[s];
    if (!k1.m.empty() || !k2.m.empty()) {
        const auto a = multipliers_or_ones(k2), b = multipliers_or_ones(k1);
        r.m.clear();
        for (std::size_t s = 0; s < a.size(); ++s) r.m.push_back(a[s] * b[s]);
    }
    return r;
}

Parabolic inverse(const Parabolic& k) {
    Parabolic r = k;
    for (auto& x : r.k) x = inverse(x);
    for (auto& c : r.m) c = witt_inverse(c);
    return r;
}

// ---------------------------------------------------------------- brute force

namespace {

struct BFVar {
    int slot, entry, comp;
};

struct BruteForce {
    const Display& src;
    const Display& dst;
    const BruteForceOptions& opt;
    const BaseRing* R;
    int S, h, n;
    bool hat;
    std::vector<std::vector<BFVar>> stages;
    std::vector<std::vector<Elem>> domain_of;  // per variable index in a stage-flattened order
    // comps[slot][entry][comp]
    std::vector<std::vector<std::vector<Elem>>> comps;
    std::vector<Parabolic> out;

    BruteForce(const Display& a, const Display& b, const BruteForceOptions& o)
        : src(a), dst(b), opt(o), R(a.ring()), S(a.shape.slots()), h(a.shape.h), n(a.level()),
          hat(o.residue != nullptr) {}

    bool is_B(int slot, int entry) const {
        const auto& w = src.shape.weights[slot];
        return w[entry / h] - w[entry % h] == 1;
    }

    Elem residue_comp(int slot, int entry, int comp) const {
        return opt.residue->k[slot].at(entry / h, entry % h).component(comp);
    }

    std::vector<Elem> domain(int slot, int entry, int comp) const {
        std::vector<Elem> d;
        if (opt.residue) {
            const fe a = residue_comp(slot, entry, comp).c[0];
            for (fe b = 0; b < R->fq().q(); ++b) d.push_back(R->make_dual(a, b));
        } else {
            for (std::uint64_t i = 0; i < R->cardinality(); ++i) d.push_back(R->element(i));
        }
        return d;
    }

    void plan() {
        stages.assign(n + 1, {});
        comps.assign(S, std::vector<std::vector<Elem>>(h * h, std::vector<Elem>(n + 1, R->zero())));
        for (int s = 0; s < S; ++s)
            for (int e = 0; e < h * h; ++e)
                for (int c = 0; c <= n; ++c) {
                    if (is_B(s, e)) {
                        if (c == 0 && !hat) continue;  // stays zero
                        stages[std::max(c - 1, 0)].push_back({s, e, c});
                    } else {
                        stages[c].push_back({s, e, c});
                    }
                }
    }

    long double size() const {
        long double t = 1;
        const long double per = opt.residue ? static_cast<long double>(R->fq().q()) : static_cast<long double>(R->cardinality());
        for (const auto& st : stages) t *= std::pow(per, static_cast<long double>(st.size()));
        return t;
    }

    WMat build(int slot, int level) const {
        WMat m(R, level, h, h);
        for (int e = 0; e < h * h; ++e) {
            std::vector<Elem> c(comps[slot][e].begin(), comps[slot][e].begin() + level);
            m.at(e / h, e % h) = WittVector(R, c);
        }
        return m;
    }

    bool check(int st) const {
        const int L = st + 2, m = st + 1;
        std::vector<WMat> K;
        for (int s = 0; s < S; ++s) K.push_back(build(s, L));
        if (st == 0)
            for (int s = 0; s < S; ++s)
                if (!is_invertible(mat_truncate(K[s], 1))) return false;
        for (int s = 0; s < S; ++s) {
            const int t = (s + 1) % S;
            WMat lhs = mat_truncate(K[s], m) * mat_truncate(src.U[s], m);
            WMat rhs = mat_truncate(dst.U[s], m) * phi_twist(K[t], src.shape.weights[t], hat);
            if (lhs != rhs) return false;
        }
        return true;
    }

    void emit() {
        Parabolic P;
        P.shape = src.shape;
        P.hat = hat;
        for (int s = 0; s < S; ++s) P.k.push_back(build(s, n + 1));
        if (src.shape.kind == Shape::Kind::Unitary) P.m = ones(R, n + 1, S);
        if (opt.normalize_top && opt.residue) {
            // k - lift(residue) must have vanishing top eps-coordinates
            for (int s = 0; s < S; ++s) {
                WMat lift = lift_to_dual(*opt.residue, R).k[s];
                WMat x = P.k[s] - lift;
                for (const auto& v : x.entries())
                    if (!R->is_zero(v.component(n))) return;
            }
        }
        if (!is_morphism(P, src, dst)) return;
        out.push_back(std::move(P));
    }

    void run(int st) {
        const auto& vars = stages[st];
        std::vector<std::vector<Elem>> dom;
        for (const auto& v : vars) dom.push_back(domain(v.slot, v.entry, v.comp));
        std::vector<std::size_t> idx(vars.size(), 0);
        for (;;) {
            for (std::size_t i = 0; i < vars.size(); ++i) comps[vars[i].slot][vars[i].entry][vars[i].comp] = dom[i][idx[i]];
            if (st < n) {
                if (check(st)) run(st + 1);
            } else {
                emit();
            }
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == dom[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
        for (const auto& v : vars) comps[v.slot][v.entry][v.comp] = R->zero();
    }
};

}  // namespace

long double search_space_size(const Shape& s, const BaseRing* R, int n, const BruteForceOptions& o) {
    if (!R->is_finite()) fail(Errc::UnsupportedBase, "brute force needs a finite base ring");
    Display dummy = identity_display(s, R, n);
    BruteForce bf(dummy, dummy, o);
    bf.plan();
    return bf.size();
}

std::vector<Parabolic> brute_force_isoms(const Display& U1, const Display& U2, const BruteForceOptions& o) {
    validate(U1);
    validate(U2);
    if (U1.shape != U2.shape) fail(Errc::ShapeMismatch, "shapes differ");
    if (U1.ring() != U2.ring()) fail(Errc::RingMismatch, "rings differ");
    if (U1.level() != U2.level()) fail(Errc::LevelMismatch, "levels differ");
    if (!U1.ring()->is_finite()) fail(Errc::UnsupportedBase, "brute force needs a finite base ring");
    if (o.residue) {
        if (!is_dual(U1.ring())) fail(Errc::UnsupportedBase, "residue constraint needs dual numbers");
        if (o.residue->level() != U1.level() + 1) fail(Errc::LevelMismatch, "residue must have level n+1");
    }
    BruteForce bf(U1, U2, o);
    bf.plan();
    if (bf.size() > static_cast<long double>(o.limit))
        fail(Errc::SearchSpaceTooLarge, "search space exceeds the configured limit");
    if (U1.central != U2.central) return {};
    bf.run(0);
    std::sort(bf.out.begin(), bf.out.end(), [](const Parabolic& a, const Parabolic& b) {
        for (std::size_t s = 0; s < a.k.size(); ++s) {
            if (lex_less(a.k[s], b.k[s])) return true;
            if (lex_less(b.k[s], a.k[s])) return false;
        }
        return false;
    });
    return bf.out;
}

// ---------------------------------------------------------------- realization

namespace {

std::vector<WittVector> matvec(const WMat& A, const std::vector<WittVector>& v) {
    std::vector<WittVector> r;
    for (int i = 0; i < A.rows(); ++i) {
        WittVector acc = WittVector::zero(A.ring(), A.level());
        for (int j = 0; j < A.cols(); ++j) acc = acc + A.at(i, j) * v[j];
        r.push_back(acc);
    }
    return r;
}

}  // namespace

std::vector<WittVector> DisplayModule::apply_F(const std::vector<WittVector>& m) const {
    if (static_cast<int>(m.size()) != h) fail(Errc::RankMismatch, "vector has the wrong rank");
    const auto p = static_cast<std::int64_t>(U.ring()->p());
    std::vector<WittVector> y;
    for (int i = 0; i < h; ++i) {
        if (m[i].length() != n + 1) fail(Errc::LevelMismatch, "module vectors live at level n+1");
        y.push_back(i < d ? frobenius(m[i]) : witt_scale(frobenius(m[i]), p));
    }
    return matvec(U, y);
}

std::vector<WittVector> DisplayModule::apply_Vinv(const std::vector<WittVector>& m) const {
    if (static_cast<int>(m.size()) != h) fail(Errc::RankMismatch, "vector has the wrong rank");
    std::vector<WittVector> y;
    for (int i = 0; i < h; ++i) {
        if (m[i].length() != n + 1) fail(Errc::LevelMismatch, "module vectors live at level n+1");
        y.push_back(i < d ? v_inverse(m[i]) : frobenius(m[i]));
    }
    return matvec(U, y);
}

DisplayModule co_realize(const Display& D) {
    validate(D);
    if (D.shape.slots() != 1 || !D.shape.standard()) fail(Errc::ShapeMismatch, "realization needs a linear shape");
    DisplayModule M;
    M.n = D.level();
    M.h = D.shape.h;
    M.d = D.shape.d(0);
    M.U = D.U[0];
    const auto p = static_cast<std::int64_t>(D.ring()->p());
    std::vector<WittVector> a, b;
    for (int i = 0; i < M.h; ++i) {
        a.push_back(WittVector::from_int(D.ring(), M.n, i < M.d ? 1 : p));
        b.push_back(WittVector::from_int(D.ring(), M.n, i < M.d ? p : 1));
    }
    M.Fsharp = M.U * WMat::diag(a);
    M.Vsharp = WMat::diag(b) * inverse(M.U);
    return M;
}

bool intertwines(const WMat& k, const DisplayModule& src, const DisplayModule& dst) {
    if (src.h != dst.h || src.d != dst.d || src.n != dst.n) fail(Errc::ShapeMismatch, "modules of different shapes");
    if (k.rows() != src.h || k.cols() != src.h) fail(Errc::ShapeMismatch, "map has the wrong size");
    if (k.level() != src.n + 1) fail(Errc::LevelMismatch, "map must have level n+1");
    const BaseRing* R = k.ring();
    const int h = src.h, n = src.n;
    const WMat kt = mat_truncate(k, n);
    for (int j = 0; j < h; ++j) {
        std::vector<WittVector> e(h, WittVector::zero(R, n + 1));
        e[j] = WittVector::one(R, n + 1);
        if (dst.apply_F(matvec(k, e)) != matvec(kt, src.apply_F(e))) return false;
        if (j < src.d) e[j] = verschiebung(WittVector::one(R, n));
        auto ke = matvec(k, e);
        for (int i = 0; i < src.d; ++i)
            if (!is_in_I(ke[i])) return false;
        if (dst.apply_Vinv(ke) != matvec(kt, src.apply_Vinv(e))) return false;
    }
    return true;
}

Display twist_central(const Display& U, int c) {
    Display r = U;
    r.central += c;
    return r;
}

// ---------------------------------------------------------------- families

namespace {

using upoly::P;

P poly_det(const Fq& F, const std::vector<std::vector<P>>& M) {
    const int h = static_cast<int>(M.size());
    std::vector<P> D(1u << h);
    D[0] = {1};
    for (unsigned mask = 1; mask < (1u << h); ++mask) {
        const int k = __builtin_popcount(mask) - 1;
        P acc;
        int pos = 0;
        for (int j = 0; j < h; ++j) {
            if (!(mask & (1u << j))) continue;
            P t = upoly::mul(F, M[k][j], D[mask ^ (1u << j)]);
            acc = ((k + pos) % 2 == 0) ? upoly::add(F, acc, t) : upoly::sub(F, acc, t);
            ++pos;
        }
        D[mask] = acc;
    }
    return D[(1u << h) - 1];
}

fe comp0(const WittVector& x) {
    Elem a = x.component(0);
    return a.c.empty() ? 0 : a.c[0];
}

// det of A0 + t (A1 - A0) on leading components
P pencil_det(const Fq& F, const WMat& A0, const WMat& A1) {
    const int h = A0.rows();
    std::vector<std::vector<P>> M(h, std::vector<P>(h));
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            const fe a = comp0(A0.at(i, j)), b = comp0(A1.at(i, j));
            P q{a, F.sub(b, a)};
            upoly::trim(q);
            M[i][j] = q;
        }
    return poly_det(F, M);
}

WMat lift_const(const BaseRing* L, const WMat& A) {
    return map_entries(A, [L](const WittVector& x) {
        return map_components(L, x, [L](const Elem& a) { return L->from_fe(a.c.empty() ? 0 : a.c[0]); });
    });
}

WMat random_invertible(const BaseRing* R, int n, int h, Rng& rng) {
    for (;;) {
        WMat A(R, n, h, h);
        for (auto i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) {
                std::vector<Elem> c;
                for (int l = 0; l < n; ++l) c.push_back(R->random(rng));
                A.at(i, j) = WittVector(R, c);
            }
        if (is_invertible(A)) return A;
    }
}

}  // namespace

Family interpolate_family(const Display& U0, const Display& U1, const InterpolationOptions& o) {
    validate(U0);
    validate(U1);
    if (U0.shape != U1.shape) fail(Errc::ShapeMismatch, "shapes differ");
    if (U0.ring() != U1.ring()) fail(Errc::RingMismatch, "rings differ");
    if (U0.level() != U1.level()) fail(Errc::LevelMismatch, "levels differ");
    const BaseRing* l = U0.ring();
    if (l->kind() != BaseRing::Kind::FiniteField) fail(Errc::UnsupportedBase, "interpolation needs a finite field");
    const Fq& F = l->fq();
    const int S = U0.shape.slots(), n = U0.level(), h = U0.shape.h;

    Family f;
    f.shape = U0.shape;
    f.field = l;
    f.U0 = U0.U;

    auto endpoints_ok = [&](const P& hb) { return upoly::eval(F, hb, 0) != 0 && upoly::eval(F, hb, 1) != 0; };

    bool done = false;
    if (!o.force_two_factor) {
        P prod{1};
        for (int s = 0; s < S; ++s) prod = upoly::mul(F, prod, pencil_det(F, U0.U[s], U1.U[s]));
        P hb = upoly::make_monic(F, prod);
        if (endpoints_ok(hb)) {
            f.hbar = hb;
            f.A = U1.U;
            f.B.assign(S, WMat::identity(l, n, h));
            done = true;
        }
    }
    Rng rng(o.seed);
    for (int attempt = 0; !done && attempt < 32; ++attempt) {
        std::vector<WMat> A, B;
        P prod{1};
        for (int s = 0; s < S; ++s) {
            A.push_back(random_invertible(l, n, h, rng));
            B.push_back(inverse(A.back()) * U1.U[s]);
            prod = upoly::mul(F, prod, pencil_det(F, U0.U[s], A.back()));
            prod = upoly::mul(F, prod, pencil_det(F, WMat::identity(l, n, h), B.back()));
        }
        P hb = upoly::make_monic(F, prod);
        if (!endpoints_ok(hb)) continue;
        f.hbar = hb;
        f.A = A;
        f.B = B;
        f.two_factor = true;
        done = true;
    }
    if (!done) fail(Errc::DegenerateInterpolation, "no chart avoids the endpoints");

    f.ring = BaseRing::localized(l, f.hbar);
    const WittVector t = WittVector::teich(f.ring, n, f.ring->var_t());
    const WMat I = WMat::identity(f.ring, n, h);
    for (int s = 0; s < S; ++s) {
        const WMat u0 = lift_const(f.ring, U0.U[s]);
        WMat Z = u0 + scale(t, lift_const(f.ring, f.A[s]) - u0);
        if (f.two_factor) Z = Z * (I + scale(t, lift_const(f.ring, f.B[s]) - I));
        f.Z.push_back(Z);
    }
    return f;
}

fe embed_field(const BaseRing* from, const BaseRing* to, fe a) {
    if (from == to) return a;
    if (from->kind() != BaseRing::Kind::FiniteField || to->kind() != BaseRing::Kind::FiniteField)
        fail(Errc::NotFiniteField, "field embedding needs finite fields");
    if (from->p() != to->p() || to->e() % from->e() != 0)
        fail(Errc::UnsupportedBase, "no embedding between these fields");
    thread_local std::map<std::pair<const BaseRing*, const BaseRing*>, fe> roots;
    const Fq& T = to->fq();
    auto it = roots.find({from, to});
    if (it == roots.end()) {
        const auto& mod = from->fq().modulus();
        fe root = 0;
        bool found = false;
        for (fe x = 0; x < T.q() && !found; ++x) {
            fe v = 0;
            for (int i = static_cast<int>(mod.size()) - 1; i >= 0; --i) v = T.add(T.mul(v, x), T.from_int(mod[i]));
            if (v == 0) {
                root = x;
                found = true;
            }
        }
        if (!found) fail(Errc::UnsupportedBase, "modulus has no root in the target field");
        it = roots.emplace(std::make_pair(from, to), root).first;
    }
    const auto c = from->fq().coeffs(a);
    fe r = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = T.add(T.mul(r, it->second), T.from_int(c[i]));
    return r;
}

namespace {

fe eval_embedded(const Family& f, const BaseRing* target, const P& g, fe point) {
    const Fq& T = target->fq();
    fe v = 0;
    for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i) v = T.add(T.mul(v, point), embed_field(f.field, target, g[i]));
    return v;
}

void check_point(const Family& f, const BaseRing* target, fe point) {
    if (target->kind() != BaseRing::Kind::FiniteField) fail(Errc::NotFiniteField, "evaluation target must be a finite field");
    if (point >= target->fq().q()) fail(Errc::InvalidArgument, "point is not a field element");
    if (eval_embedded(f, target, f.hbar, point) == 0) fail(Errc::SampleAtPole, "sample point is a pole of the family");
}

}  // namespace

bool is_pole(const Family& f, const BaseRing* target, fe point) { return eval_embedded(f, target, f.hbar, point) == 0; }

Elem evaluate_elem(const Family& f, const BaseRing* target, const Elem& x, fe point) {
    check_point(f, target, point);
    const Fq& T = target->fq();
    P num(x.c.begin(), x.c.end());
    fe v = eval_embedded(f, target, num, point);
    if (x.k > 0) v = T.mul(v, T.inv(T.pow(eval_embedded(f, target, f.hbar, point), static_cast<std::uint64_t>(x.k))));
    return target->from_fe(v);
}

Display evaluate_family(const Family& f, const BaseRing* target, fe point) {
    check_point(f, target, point);
    std::vector<WMat> U;
    for (const auto& Z : f.Z)
        U.push_back(map_entries(Z, [&](const WittVector& x) {
            return map_components(target, x, [&](const Elem& a) { return evaluate_elem(f, target, a, point); });
        }));
    return make_display(f.shape, U);
}

Display evaluate_family_fast(const Family& f, const BaseRing* target, fe point) {
    check_point(f, target, point);
    auto emb = [&](const WMat& A) {
        return map_entries(A, [&](const WittVector& x) {
            return map_components(target, x, [&](const Elem& a) {
                return target->from_fe(embed_field(f.field, target, a.c.empty() ? 0 : a.c[0]));
            });
        });
    };
    const int n = f.U0.at(0).level(), h = f.shape.h;
    const WittVector c = WittVector::teich(target, n, target->from_fe(point));
    const WMat I = WMat::identity(target, n, h);
    std::vector<WMat> U;
    for (std::size_t s = 0; s < f.U0.size(); ++s) {
        const WMat u0 = emb(f.U0[s]);
        WMat Z = u0 + scale(c, emb(f.A[s]) - u0);
        if (f.two_factor) Z = Z * (I + scale(c, emb(f.B[s]) - I));
        U.push_back(Z);
    }
    return make_display(f.shape, U);
}

// ---------------------------------------------------------------- unitary

WMat pairing_matrix(const Shape& s, int slot, const BaseRing* R, int n) {
    if (s.kind != Shape::Kind::Unitary) fail(Errc::ShapeMismatch, "pairing needs a unitary shape");
    WMat J(R, n, s.h, s.h);
    for (int i = 0; i < s.h; ++i)
        for (int j = 0; j < s.h; ++j) J.at(i, j) = WittVector::from_int(R, n, s.J[slot][i][j]);
    return J;
}

Display make_unitary_display(const Shape& s, const std::vector<WMat>& Uh, const std::vector<WittVector>& c0) {
    if (s.kind != Shape::Kind::Unitary) fail(Errc::ShapeMismatch, "unitary construction needs a unitary shape");
    const int r = s.half(), S = s.slots();
    if (static_cast<int>(Uh.size()) != r) fail(Errc::ShapeMismatch, "need one matrix per slot in [0, r)");
    const BaseRing* R = Uh[0].ring();
    const int n = Uh[0].level();
    std::vector<WittVector> c = c0.empty() ? ones(R, n, S) : c0;
    if (static_cast<int>(c.size()) != S) fail(Errc::ShapeMismatch, "need one multiplier per slot");
    std::vector<WMat> U(S);
    for (int i = 0; i < r; ++i) {
        U[i] = Uh[i];
        U[i + r] = scale(c[i], inverse(pairing_matrix(s, i, R, n)) * inverse(transpose(Uh[i])) *
                                   mat_tau(pairing_matrix(s, (i + 1) % S, R, n)));
    }
    Display D{s, U, 0, c};
    validate(D);
    return D;
}

bool unitary_valid(const Display& D) {
    if (D.shape.kind != Shape::Kind::Unitary) return false;
    const int S = D.shape.slots(), r = D.shape.half(), n = D.level();
    for (int i = 0; i < S; ++i) {
        WMat lhs = pairing_matrix(D.shape, i, D.ring(), n) * D.U[(i + r) % S];
        WMat rhs = scale(D.multiplier[i], inverse(transpose(D.U[i])) *
                                              mat_tau(pairing_matrix(D.shape, (i + 1) % S, D.ring(), n)));
        if (lhs != rhs) return false;
    }
    return true;
}

Parabolic make_unitary_parabolic(const Shape& s, const std::vector<WMat>& kh, const std::vector<WittVector>& m) {
    if (s.kind != Shape::Kind::Unitary) fail(Errc::ShapeMismatch, "unitary construction needs a unitary shape");
    const int r = s.half();
    if (static_cast<int>(kh.size()) != r || static_cast<int>(m.size()) != r)
        fail(Errc::ShapeMismatch, "need one matrix and one similitude factor per slot in [0, r)");
    const BaseRing* R = kh[0].ring();
    const int n1 = kh[0].level();
    Parabolic P;
    P.shape = s;
    P.k.resize(2 * r);
    P.m.resize(2 * r);
    for (int i = 0; i < r; ++i) {
        const WMat J = pairing_matrix(s, i, R, n1);
        P.k[i] = kh[i];
        P.k[i + r] = scale(m[i], inverse(J) * inverse(transpose(kh[i])) * J);
        P.m[i] = P.m[i + r] = m[i];
    }
    validate(P);
    return P;
}

// ---------------------------------------------------------------- group enumeration

std::vector<Parabolic> parabolic_group(const Shape& s, const BaseRing* R, int n1, std::uint64_t limit) {
    if (s.kind == Shape::Kind::Unitary) fail(Errc::ShapeMismatch, "group enumeration covers linear and graded shapes");
    if (R->kind() != BaseRing::Kind::FiniteField) fail(Errc::UnsupportedBase, "group enumeration needs a finite field");
    const int h = s.h;
    const std::uint64_t q = R->cardinality();
    std::vector<std::vector<WMat>> per_slot;
    std::uint64_t total = 1;
    for (int sl = 0; sl < s.slots(); ++sl) {
        const auto& w = s.weights[sl];
        // digits: one per entry component, B-block leading components pinned to 0
        std::vector<std::pair<int, int>> digits;
        long double cand = 1;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j)
                for (int c = (w[i] - w[j] == 1 ? 1 : 0); c < n1; ++c) {
                    digits.push_back({i * h + j, c});
                    cand *= static_cast<long double>(q);
                }
        if (cand > static_cast<long double>(limit)) fail(Errc::SearchSpaceTooLarge, "parabolic group enumeration exceeds the limit");
        std::vector<std::uint64_t> v(digits.size(), 0);
        std::vector<WMat> found;
        for (;;) {
            std::vector<std::vector<Elem>> comps(h * h, std::vector<Elem>(n1, R->zero()));
            for (std::size_t t = 0; t < digits.size(); ++t) comps[digits[t].first][digits[t].second] = R->element(v[t]);
            WMat A(R, n1, h, h);
            for (int e = 0; e < h * h; ++e) A.at(e / h, e % h) = WittVector(R, comps[e]);
            if (is_invertible(A)) found.push_back(A);
            std::size_t t = digits.size();
            while (t > 0 && v[t - 1] == q - 1) v[--t] = 0;
            if (t == 0) break;
            ++v[t - 1];
        }
        std::sort(found.begin(), found.end(), [](const WMat& a, const WMat& b) { return lex_less(a, b); });
        total *= found.size();
        if (total > limit) fail(Errc::SearchSpaceTooLarge, "parabolic group exceeds the limit");
        per_slot.push_back(std::move(found));
    }
    std::vector<Parabolic> out;
    out.reserve(total);
    std::vector<std::size_t> idx(per_slot.size(), 0);
    for (;;) {
        Parabolic k{s, {}, {}, false};
        for (std::size_t sl = 0; sl < idx.size(); ++sl) k.k.push_back(per_slot[sl][idx[sl]]);
        out.push_back(std::move(k));
        std::size_t t = idx.size();
        while (t > 0 && idx[t - 1] + 1 == per_slot[t - 1].size()) idx[--t] = 0;
        if (t == 0) break;
        ++idx[t - 1];
    }
    return out;
}

bool lex_less(const Display& a, const Display& b) {
    for (std::size_t s = 0; s < a.U.size() && s < b.U.size(); ++s) {
        if (lex_less(a.U[s], b.U[s])) return true;
        if (lex_less(b.U[s], a.U[s])) return false;
    }
    return a.U.size() < b.U.size();
}

// ---------------------------------------------------------------- dual numbers

namespace {

WMat reduce_mat(const WMat& A) {
    const BaseRing* R = A.ring();
    if (!is_dual(R)) fail(Errc::UnsupportedBase, "reduction mod eps needs dual numbers");
    const BaseRing* F = R->field_ring();
    return map_entries(A, [&](const WittVector& x) {
        return map_components(F, x, [&](const Elem& a) { return F->from_fe(R->dual_a(a)); });
    });
}

WMat lift_mat(const WMat& A, const BaseRing* dual) {
    if (!is_dual(dual) || A.ring() != dual->field_ring()) fail(Errc::RingMismatch, "lift needs the matching dual ring");
    return map_entries(A, [&](const WittVector& x) {
        return map_components(dual, x, [&](const Elem& a) { return dual->make_dual(a.c[0], 0); });
    });
}

}  // namespace

Display reduce_mod_eps(const Display& D) {
    Display r = D;
    for (auto& U : r.U) U = reduce_mat(U);
    for (auto& c : r.multiplier) c = reduce_mat(WMat::diag({c})).at(0, 0);
    return r;
}

Parabolic reduce_mod_eps(const Parabolic& k) {
    Parabolic r = k;
    for (auto& x : r.k) x = reduce_mat(x);
    for (auto& c : r.m) c = reduce_mat(WMat::diag({c})).at(0, 0);
    r.hat = false;
    return r;
}

Display lift_to_dual(const Display& D, const BaseRing* dual) {
    Display r = D;
    for (auto& U : r.U) U = lift_mat(U, dual);
    for (auto& c : r.multiplier) c = lift_mat(WMat::diag({c}), dual).at(0, 0);
    return r;
}

Parabolic lift_to_dual(const Parabolic& k, const BaseRing* dual) {
    Parabolic r = k;
    for (auto& x : r.k) x = lift_mat(x, dual);
    for (auto& c : r.m) c = lift_mat(WMat::diag({c}), dual).at(0, 0);
    return r;
}

namespace {

// Coordinates of W_n(eps R)^{h x h}: entry, then component, then F_p digit of
// the eps-coefficient. Addition there is componentwise, so these are linear.
struct EpsSpace {
    const BaseRing* R;
    int h, n, e;
    std::uint32_t p;

    int dim_entry() const { return n * e; }
    int dim() const { return h * h * n * e; }

    void push(const WMat& X, std::vector<std::uint32_t>& out) const {
        for (const auto& x : X.entries())
            for (int c = 0; c < n; ++c) {
                const Elem a = x.component(c);
                if (R->dual_a(a) != 0) fail(Errc::NotInIdeal, "entry is not in W(eps R)");
                auto d = R->fq().coeffs(R->dual_b(a));
                out.insert(out.end(), d.begin(), d.end());
            }
    }

    WMat make(const std::uint32_t* v) const {
        WMat X(R, n, h, h);
        for (int i = 0; i < h * h; ++i) {
            std::vector<Elem> comps;
            for (int c = 0; c < n; ++c) {
                std::vector<std::uint32_t> d(v + (i * n + c) * e, v + (i * n + c + 1) * e);
                comps.push_back(R->make_dual(0, R->fq().from_coeffs(d)));
            }
            X.at(i / h, i % h) = WittVector(R, comps);
        }
        return X;
    }
};

// append a zero top component: W_n(eps R) -> W_{n+1}(eps R)
WMat extend_top(const WMat& X) {
    return map_entries(X, [](const WittVector& x) {
        auto c = x.components();
        c.push_back(x.ring()->zero());
        return WittVector(x.ring(), c);
    });
}

// Phi-hat(k0 + x) - Phi(k0) for x in W_{n+1}(eps R): only the B-block survives
WMat eps_E(const WMat& x, const std::vector<int>& w) {
    const int h = x.rows(), n = x.level() - 1;
    WMat r(x.ring(), n, h, h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            if (w[i] - w[j] != 1) continue;
            auto c = x.at(i, j).components();
            c.erase(c.begin());
            r.at(i, j) = WittVector(x.ring(), c);
        }
    return r;
}

struct SquareZeroProblem {
    const Display& U;
    const Display& O;
    EpsSpace sp;
    int S;
    std::vector<WMat> Oinv;

    SquareZeroProblem(const Display& u, const Display& o)
        : U(u), O(o),
          sp{u.ring(), u.shape.h, u.level(), static_cast<int>(u.ring()->e()), u.ring()->p()},
          S(u.shape.slots()) {
        for (const auto& M : O.U) Oinv.push_back(inverse(M));
    }

    // x -> U E(x) O^{-1}, slotwise with the graded shift
    std::vector<WMat> L(const std::vector<WMat>& x) const {
        std::vector<WMat> r;
        for (int s = 0; s < S; ++s) {
            const int t = (s + 1) % S;
            r.push_back(U.U[s] * eps_E(extend_top(x[t]), U.shape.weights[t]) * Oinv[s]);
        }
        return r;
    }

    bool nilpotent() const {
        const int D = S * sp.dim();
        for (int b = 0; b < D; ++b) {
            std::vector<std::uint32_t> v(D, 0);
            v[b] = 1;
            std::vector<WMat> x;
            for (int s = 0; s < S; ++s) x.push_back(sp.make(v.data() + s * sp.dim()));
            bool zero = false;
            for (int step = 0; step <= D && !zero; ++step) {
                x = L(x);
                zero = std::all_of(x.begin(), x.end(), [](const WMat& m) { return m.is_zero(); });
            }
            if (!zero) return false;
        }
        return true;
    }
};

void check_square_zero(const Display& U, const Display& O) {
    validate(U);
    validate(O);
    if (!is_dual(U.ring())) fail(Errc::UnsupportedBase, "square-zero lifting needs dual numbers");
    if (U.shape != O.shape) fail(Errc::ShapeMismatch, "shapes differ");
    if (U.ring() != O.ring()) fail(Errc::RingMismatch, "rings differ");
    if (U.level() != O.level()) fail(Errc::LevelMismatch, "levels differ");
}

std::vector<WMat> residual(const Display& U, const Display& O, const Parabolic& K0) {
    const int S = U.shape.slots(), n = U.level();
    const auto ph = phi_twist(K0);
    std::vector<WMat> r;
    for (int s = 0; s < S; ++s) r.push_back(U.U[s] * ph[(s + 1) % S] - mat_truncate(K0.k[s], n) * O.U[s]);
    return r;
}

Parabolic assemble(const Parabolic& K0, const std::vector<WMat>& x) {
    Parabolic k = K0;
    k.hat = true;
    for (std::size_t s = 0; s < x.size(); ++s) k.k[s] = K0.k[s] + extend_top(x[s]);
    return k;
}

Parabolic prepare_residue(const Display& U, const Display& O, const Parabolic& h0) {
    check_square_zero(U, O);
    if (h0.ring() != U.ring()->field_ring()) fail(Errc::RingMismatch, "h0 must live over the residue field");
    if (h0.shape != U.shape) fail(Errc::ShapeMismatch, "shapes differ");
    if (!is_morphism(h0, reduce_mod_eps(O), reduce_mod_eps(U))) fail(Errc::NoSolution, "h0 is not a morphism mod eps");
    return lift_to_dual(h0, U.ring());
}

}  // namespace

bool square_zero_nilpotent(const Display& U, const Display& O) {
    check_square_zero(U, O);
    return SquareZeroProblem(U, O).nilpotent();
}

Parabolic lift_morphism_square_zero(const Display& U, const Display& O, const Parabolic& h0) {
    const Parabolic K0 = prepare_residue(U, O, h0);
    SquareZeroProblem pr(U, O);
    if (!pr.nilpotent()) fail(Errc::NotNilpotent, "the linearized Frobenius is not nilpotent");
    const auto R0 = residual(U, O, K0);
    std::vector<WMat> x0;
    for (int s = 0; s < pr.S; ++s) x0.push_back(R0[s] * pr.Oinv[s]);
    // Neumann series x = x0 + L(x0) + L^2(x0) + ...
    std::vector<WMat> x = x0, term = x0;
    for (int step = 0; step <= pr.S * pr.sp.dim(); ++step) {
        term = pr.L(term);
        if (std::all_of(term.begin(), term.end(), [](const WMat& m) { return m.is_zero(); })) break;
        for (int s = 0; s < pr.S; ++s) x[s] = x[s] + term[s];
    }
    Parabolic k = assemble(K0, x);
    if (!is_morphism(k, O, U)) fail(Errc::NoSolution, "lift failed to verify");
    return k;
}

Parabolic lift_morphism_square_zero_linear(const Display& U, const Display& O, const Parabolic& h0) {
    const Parabolic K0 = prepare_residue(U, O, h0);
    SquareZeroProblem pr(U, O);
    const int D = pr.sp.dim(), S = pr.S;
    fp::Mat A(S * D, S * D);
    for (int b = 0; b < S * D; ++b) {
        std::vector<std::uint32_t> v(S * D, 0);
        v[b] = 1;
        std::vector<WMat> x;
        for (int s = 0; s < S; ++s) x.push_back(pr.sp.make(v.data() + s * D));
        const auto Lx = pr.L(x);
        std::vector<std::uint32_t> col;
        for (int s = 0; s < S; ++s) pr.sp.push(x[s] - Lx[s], col);
        for (int r = 0; r < S * D; ++r) A.at(r, b) = col[r];
    }
    // solve x - L(x) = R O^{-1}
    const auto R0 = residual(U, O, K0);
    std::vector<std::uint32_t> rhs;
    for (int s = 0; s < S; ++s) pr.sp.push(R0[s] * pr.Oinv[s], rhs);
    auto sol = fp::solve(A, rhs, pr.sp.p);
    if (!sol) fail(Errc::NoSolution, "linear system is inconsistent");
    if (!sol->kernel.empty()) fail(Errc::NotNilpotent, "solution is not unique");
    std::vector<WMat> x;
    for (int s = 0; s < S; ++s) x.push_back(pr.sp.make(sol->x.data() + s * D));
    return assemble(K0, x);
}

WMat unipotent_plus(const Shape& s, const std::vector<std::vector<Elem>>& N, const BaseRing* dual, int n) {
    if (s.slots() != 1 || !s.standard()) fail(Errc::ShapeMismatch, "unipotent needs a linear shape");
    const int h = s.h, d = s.d(0);
    if (static_cast<int>(N.size()) != d) fail(Errc::ShapeMismatch, "N must be d x (h-d)");
    WMat E = WMat::identity(dual, n, h);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(N[i].size()) != h - d) fail(Errc::ShapeMismatch, "N must be d x (h-d)");
        for (int j = 0; j < h - d; ++j) {
            if (!dual->in_eps_ideal(N[i][j])) fail(Errc::NotInIdeal, "N must have entries in eps R");
            E.at(i, d + j) = WittVector::teich(dual, n, N[i][j]);
        }
    }
    return E;
}

std::vector<std::vector<Elem>> deformation_difference(const Display& U, const Display& Uref) {
    check_square_zero(U, Uref);
    if (U.shape.slots() != 1 || !U.shape.standard()) fail(Errc::ShapeMismatch, "deformations need a linear shape");
    const Display Ub = reduce_mod_eps(U);
    if (Ub != reduce_mod_eps(Uref)) fail(Errc::NotSameReduction, "displays differ mod eps");
    // The identity mod eps lifts uniquely to a hat-morphism Uref -> U; its
    // B-block linear part is the class. Standard morphisms are exactly the
    // hat-morphisms with vanishing linear part.
    const Parabolic one = identity_parabolic(U.shape, Ub.ring(), U.level() + 1);
    const Parabolic k = lift_morphism_square_zero(U, Uref, one);
    const int h = U.shape.h, d = U.shape.d(0);
    std::vector<std::vector<Elem>> N(d, std::vector<Elem>(h - d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < h - d; ++j) N[i][j] = k.k[0].at(i, d + j).component(0);
    return N;
}

}  // namespace dlab
