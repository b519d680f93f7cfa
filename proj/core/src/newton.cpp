#include "displaylab/newton.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "displaylab/errors.hpp"

namespace dlab {

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational NewtonPoint::total() const {
    Rational t = 0;
    for (const auto& x : slopes) t += x;
    return t;
}

NewtonPoint NewtonPoint::negated() const {
    std::vector<Rational> s;
    for (const auto& x : slopes) s.push_back(-x);
    return make_newton_point(std::move(s));
}

std::string NewtonPoint::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < slopes.size(); ++i) out += (i ? "," : "") + to_string(slopes[i]);
    return out + ")";
}

NewtonPoint make_newton_point(std::vector<Rational> slopes) {
    std::sort(slopes.begin(), slopes.end(), [](const Rational& a, const Rational& b) { return a > b; });
    NewtonPoint nu;
    nu.h = static_cast<int>(slopes.size());
    nu.slopes = std::move(slopes);
    return nu;
}

// Berkowitz: p_{k+1} = T_k p_k with T_k lower triangular Toeplitz, first column
// (1, -a, -R S, -R A S, ..., -R A^{k-1} S) for the bordered leading block.
std::vector<WittVector> charpoly(const WMat& A) {
    if (!A.square()) fail(Errc::ShapeMismatch, "charpoly needs a square matrix");
    const BaseRing* R = A.ring();
    const int h = A.rows(), n = A.level();
    std::vector<WittVector> p{WittVector::one(R, n)};
    for (int k = 0; k < h; ++k) {
        std::vector<WittVector> col{WittVector::one(R, n), -A.at(k, k)};
        // S = column k above the diagonal; repeatedly apply the leading block
        std::vector<WittVector> S(k);
        for (int i = 0; i < k; ++i) S[i] = A.at(i, k);
        for (int t = 0; t < k; ++t) {
            WittVector rs = WittVector::zero(R, n);
            for (int i = 0; i < k; ++i) rs = rs + A.at(k, i) * S[i];
            col.push_back(-rs);
            std::vector<WittVector> next(k, WittVector::zero(R, n));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) next[i] = next[i] + A.at(i, j) * S[j];
            S = std::move(next);
        }
        std::vector<WittVector> q(k + 2, WittVector::zero(R, n));
        for (int i = 0; i < k + 2; ++i)
            for (int j = 0; j <= std::min(i, k); ++j) q[i] = q[i] + col[i - j] * p[j];
        p = std::move(q);
    }
    return p;
}

std::vector<Rational> polygon_slopes(const std::vector<std::optional<int>>& v, int cap) {
    const int h = static_cast<int>(v.size()) - 1;
    if (h < 0 || !v[0] || *v[0] != 0) fail(Errc::InvalidArgument, "polygon needs v_0 = 0");
    if (!v[h]) fail(Errc::InsufficientPrecision, "constant coefficient vanishes at this level");
    std::vector<std::pair<int, int>> hull;
    auto cross = [](std::pair<int, int> o, std::pair<int, int> a, std::pair<int, int> b) {
        return static_cast<std::int64_t>(a.first - o.first) * (b.second - o.second) -
               static_cast<std::int64_t>(a.second - o.second) * (b.first - o.first);
    };
    for (int i = 0; i <= h; ++i) {
        if (!v[i]) continue;
        const std::pair<int, int> pt{i, *v[i]};
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
        hull.push_back(pt);
    }
    std::vector<Rational> out;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const auto [x0, y0] = hull[s];
        const auto [x1, y1] = hull[s + 1];
        const Rational slope(y1 - y0, x1 - x0);
        for (int i = x0 + 1; i < x1; ++i)
            if (!v[i] && Rational(y0) + slope * (i - x0) > Rational(cap))
                fail(Errc::InsufficientPrecision, "coefficient " + std::to_string(i) + " vanishes at this level but could lower the polygon");
        for (int i = x0; i < x1; ++i) out.push_back(slope);
    }
    return out;
}

namespace {

WittVector p_power(const BaseRing* R, int n, int k) {
    return witt_pow(WittVector::from_int(R, n, R->p()), static_cast<std::uint64_t>(k));
}

std::vector<std::vector<int>> dominant(const Shape& s) {
    auto w = s.weights;
    for (auto& x : w) std::sort(x.begin(), x.end(), std::greater<>());
    return w;
}

NewtonPoint closed_ordinary(const std::vector<std::vector<int>>& w, int h, int central) {
    const int S = static_cast<int>(w.size());
    std::vector<Rational> sl;
    for (int i = 0; i < h; ++i) {
        int sum = 0;
        for (const auto& x : w) sum += x[i];
        sl.push_back(Rational(-sum, S) - central);
    }
    return make_newton_point(std::move(sl));
}

}  // namespace

NewtonPoint newton_point(const Display& U) {
    const BaseRing* R = U.ring();
    if (R->kind() != BaseRing::Kind::FiniteField) fail(Errc::NotFiniteField, "Newton points need a finite field base");
    const int S = U.shape.slots(), h = U.shape.h, n = U.level(), e = R->e();
    const int m = e / std::gcd(S, e);  // tau^{S m} is the identity on the base

    // b_s = U_s F(mu_{s+1}(p)^-1) = p^{-top_s} P_s with P_s integral
    WMat B = WMat::identity(R, n, h);
    int shift = 0;
    for (int s = 0; s < S; ++s) {
        const auto& lam = U.shape.weights[(s + 1) % S];
        const int top = *std::max_element(lam.begin(), lam.end());
        std::vector<WittVector> dg;
        for (int x : lam) dg.push_back(p_power(R, n, top - x));
        B = B * mat_tau_pow(U.U[s] * WMat::diag(dg), s);
        shift += top;
    }
    WMat N = B;
    for (int t = 1; t < m; ++t) N = N * mat_tau_pow(B, S * t);
    shift *= m;

    const auto c = charpoly(N);
    std::vector<std::optional<int>> v;
    for (const auto& x : c) {
        if (x.is_zero()) v.emplace_back();
        else v.emplace_back(valuation(x));
    }
    std::vector<Rational> sl;
    for (const auto& a : polygon_slopes(v, n)) sl.push_back((a - shift) / (S * m) - U.central);
    return make_newton_point(std::move(sl));
}

bool dominance(const NewtonPoint& a, const NewtonPoint& b) {
    if (a.h != b.h) fail(Errc::ShapeMismatch, "Newton points of different heights");
    if (a.total() != b.total()) fail(Errc::TotalMismatch, a.str() + " vs " + b.str());
    Rational sa = 0, sb = 0;
    for (int i = 0; i < a.h; ++i) {
        sa += a.slopes[i];
        sb += b.slopes[i];
        if (sa > sb) return false;
    }
    return true;
}

NewtonPoint ordinary_point(const Shape& s, int central) {
    const auto w = dominant(s);
    NewtonPoint nu = closed_ordinary(w, s.h, central);
    // confirm against the diagonal representative itself, once per weight pattern
    thread_local std::set<std::pair<std::vector<std::vector<int>>, int>> seen;
    if (seen.insert({w, central}).second) {
        Shape t = s;
        t.weights = w;
        const BaseRing* Fp = BaseRing::finite_field(3, 1);
        Display D{t, std::vector<WMat>(t.slots(), WMat::identity(Fp, t.slots() * s.h + 2, s.h)), central, {}};
        if (newton_point(D) != nu) throw std::logic_error("ordinary point: diagonal representative disagrees");
    }
    return nu;
}

bool mazur_check(const Display& U) { return dominance(newton_point(U), ordinary_point(U.shape, U.central)); }

ScanResult family_newton_scan(const Family& f, const BaseRing* target, const std::vector<fe>& points) {
    ScanResult res;
    for (fe x : points) res.rows.push_back({x, newton_point(evaluate_family(f, target, x)), false});
    for (const auto& row : res.rows) {
        const bool top = std::all_of(res.rows.begin(), res.rows.end(),
                                     [&](const ScanRow& o) { return dominance(o.nu, row.nu); });
        if (top) {
            res.maximal = row.nu;
            break;
        }
    }
    if (res.maximal)
        for (auto& row : res.rows) {
            row.below_max = true;
            if (row.nu != *res.maximal) res.special.push_back(row.point);
        }
    return res;
}

std::vector<fe> regular_points(const Family& f, const BaseRing* target) {
    if (target->kind() != BaseRing::Kind::FiniteField) fail(Errc::NotFiniteField, "scan target must be a finite field");
    std::vector<fe> out;
    for (fe x = 0; x < target->fq().q(); ++x)
        if (!is_pole(f, target, x)) out.push_back(x);
    return out;
}

}  // namespace dlab
