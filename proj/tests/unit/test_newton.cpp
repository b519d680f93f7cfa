#include <doctest.h>

#include "displaylab/errors.hpp"
#include "displaylab/newton.hpp"
#include "testutil.hpp"

using namespace dlab;

namespace {

NewtonPoint np(std::initializer_list<Rational> xs) { return make_newton_point(std::vector<Rational>(xs)); }

WMat antidiag(const BaseRing* R, int n) {
    WMat A(R, n, 2, 2);
    A.at(0, 1) = WittVector::one(R, n);
    A.at(1, 0) = WittVector::one(R, n);
    return A;
}

// 2x2 linear, weights (1,0), by trace and determinant of p b = U diag(1, p)
NewtonPoint two_by_two(const Display& D) {
    const BaseRing* R = D.ring();
    const int n = D.level();
    const WMat& U = D.U[0];
    const WittVector p = WittVector::from_int(R, n, R->p());
    const WittVector tr = U.at(0, 0) + p * U.at(1, 1);
    const int vd = valuation(det(U)) + 1;
    const int vt = tr.is_zero() ? 1000 : valuation(tr);
    if (2 * vt <= vd) return np({Rational(vt - 1), Rational(vd - vt - 1)});
    return np({Rational(vd, 2) - 1, Rational(vd, 2) - 1});
}

}  // namespace

TEST_CASE("rationals and Newton point formatting") {
    CHECK(to_string(Rational(-1, 2)) == "-1/2");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK(np({Rational(-1), Rational(0)}).str() == "(0,-1)");
    CHECK(np({Rational(-1), Rational(0)}).negated().str() == "(1,0)");
}

TEST_CASE("charpoly against small cases") {
    const BaseRing* F5 = BaseRing::finite_field(5, 1);
    WMat A(F5, 3, 2, 2);
    A.at(0, 0) = WittVector::from_int(F5, 3, 2);
    A.at(0, 1) = WittVector::from_int(F5, 3, 3);
    A.at(1, 0) = WittVector::from_int(F5, 3, 7);
    A.at(1, 1) = WittVector::from_int(F5, 3, 11);
    auto c = charpoly(A);
    REQUIRE(c.size() == 3);
    CHECK(c[1] == WittVector::from_int(F5, 3, -13));
    CHECK(c[2] == WittVector::from_int(F5, 3, 22 - 21));
    // constant term is (-1)^h det and c1 = -trace on random 4x4 matrices
    Rng rng(1);
    const BaseRing* F9 = BaseRing::finite_field(3, 2);
    for (int t = 0; t < 20; ++t) {
        auto M = dlt::random_mat(F9, 3, 4, rng);
        auto cp = charpoly(M);
        CHECK(cp[4] == det(M));
        WittVector tr = WittVector::zero(F9, 3);
        for (int i = 0; i < 4; ++i) tr = tr + M.at(i, i);
        CHECK(cp[1] == -tr);
        // Cayley-Hamilton
        WMat acc(F9, 3, 4, 4), P = WMat::identity(F9, 3, 4);
        for (int k = 4; k >= 0; --k) {
            acc = acc + scale(cp[k], P);
            P = P * M;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("polygon slopes and precision") {
    using V = std::vector<std::optional<int>>;
    CHECK(polygon_slopes(V{0, 0, 1}, 5) == std::vector<Rational>{0, 1});
    CHECK(polygon_slopes(V{0, std::nullopt, 1}, 5) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(polygon_slopes(V{0, 2, 1}, 5) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    // an unknown middle coefficient that could sit below the chord
    CHECK_THROWS_AS(polygon_slopes(V{0, std::nullopt, 5}, 2), Error);
    CHECK_THROWS_AS(polygon_slopes(V{0, 0, std::nullopt}, 4), Error);
}

TEST_CASE("worked slope examples") {
    for (int e : {1, 2}) {
        const BaseRing* R = BaseRing::finite_field(3, e);
        CHECK(newton_point(identity_display(Shape::linear(1, 0), R, 3)) == np({0}));
        CHECK(newton_point(identity_display(Shape::linear(2, 1), R, 4)) == np({0, -1}));
        CHECK(newton_point(make_display(Shape::linear(2, 1), {antidiag(R, 4)})) == np({Rational(-1, 2), Rational(-1, 2)}));
    }
    CHECK(newton_point(identity_display(Shape::linear(1, 1), BaseRing::finite_field(5, 1), 3)) == np({-1}));
}

TEST_CASE("errors") {
    const BaseRing* F3 = BaseRing::finite_field(3, 1);
    try {
        newton_point(make_display(Shape::linear(2, 1), {antidiag(F3, 1)}));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InsufficientPrecision);
    }
    CHECK_THROWS_AS(newton_point(identity_display(Shape::linear(2, 1), F3, 1)), Error);
    CHECK_THROWS_AS(newton_point(identity_display(Shape::linear(2, 1), BaseRing::poly(F3), 2)), Error);
    CHECK_THROWS_AS(dominance(np({0, -1}), np({0, 0})), Error);
}

TEST_CASE("dominance examples and order axioms") {
    const auto ss = np({Rational(-1, 2), Rational(-1, 2)}), ord = np({0, -1});
    CHECK(dominance(ss, ss));
    CHECK(dominance(ss, ord));
    CHECK_FALSE(dominance(ord, ss));

    Rng rng(2);
    auto random_point = [&](int h, Rational total) {
        std::vector<Rational> x;
        Rational sum = 0;
        for (int i = 0; i + 1 < h; ++i) {
            x.emplace_back(static_cast<std::int64_t>(rng.range(-6, 6)), static_cast<std::int64_t>(rng.range(1, 3)));
            sum += x.back();
        }
        x.push_back(total - sum);
        return make_newton_point(x);
    };
    for (int t = 0; t < 2000; ++t) {
        const int h = static_cast<int>(rng.range(1, 4));
        auto a = random_point(h, -1), b = random_point(h, -1), c = random_point(h, -1);
        CHECK(dominance(a, a));
        if (dominance(a, b) && dominance(b, a)) CHECK(a == b);
        if (dominance(a, b) && dominance(b, c)) CHECK(dominance(a, c));
    }
}

TEST_CASE("ordinary points") {
    CHECK(ordinary_point(Shape::linear(2, 1)) == np({0, -1}));
    CHECK(ordinary_point(Shape::linear(1, 1)) == np({-1}));
    CHECK(ordinary_point(Shape::graded(1, {1, 0})) == np({Rational(-1, 2)}));
    CHECK(ordinary_point(Shape::graded(3, {2, 1})) == np({0, Rational(-1, 2), -1}));
    CHECK(ordinary_point(Shape::linear(2, 1), 1) == np({-1, -2}));
}

TEST_CASE("twist invariance, totals, precision and the 2x2 oracle") {
    Rng rng(3);
    const BaseRing* F3 = BaseRing::finite_field(3, 1);
    const BaseRing* F9 = BaseRing::finite_field(3, 2);
    int compared = 0;
    for (const Shape& s : {Shape::linear(2, 1), Shape::linear(3, 1), Shape::graded(2, {1, 0}), Shape::graded(2, {1, 1, 0})}) {
        for (const BaseRing* R : {F3, F9}) {
            const int n = 7;  // Witt lengths stop at 8
            for (int t = 0; t < 15; ++t) {
                auto U = dlt::random_display(s, R, n + 1, rng);
                auto k = dlt::random_parabolic(s, R, n + 1, rng);
                const auto nu = newton_point(U);
                int dsum = 0;
                for (int i = 0; i < s.slots(); ++i) dsum += s.d(i);
                CHECK(nu.total() == Rational(-dsum, s.slots()));
                for (const auto& x : nu.slopes) CHECK((x <= Rational(0) && x >= Rational(-1)));
                CHECK(newton_point(twist_conjugate(truncate(U, n), k)) == newton_point(truncate(U, n)));
                try {
                    CHECK(newton_point(truncate(U, n - 2)) == nu);
                } catch (const Error& e) {
                    CHECK(e.code() == Errc::InsufficientPrecision);
                }
                CHECK(mazur_check(U));
                if (s == Shape::linear(2, 1) && R == F3) {
                    CHECK(nu == two_by_two(U));
                    ++compared;
                }
            }
        }
    }
    CHECK(compared == 15);
    // central shifts move every slope
    auto U = dlt::random_display(Shape::linear(2, 1), F3, 5, rng);
    CHECK(newton_point(twist_central(U, 1)).total() == newton_point(U).total() - 2);
    CHECK(mazur_check(twist_central(U, 1)));
}

TEST_CASE("Teichmuller-entry family is dominated by the ordinary point") {
    const BaseRing* F3 = BaseRing::finite_field(3, 1);
    const Shape s = Shape::linear(2, 1);
    int count = 0, ss = 0;
    for (int code = 0; code < 81; ++code) {
        WMat A(F3, 3, 2, 2);
        int c = code;
        for (int i = 0; i < 4; ++i, c /= 3) A.at(i / 2, i % 2) = WittVector::teich(F3, 3, F3->from_int(c % 3));
        if (!is_invertible(A)) continue;
        auto D = make_display(s, {A});
        CHECK(mazur_check(D));
        CHECK(newton_point(D) == two_by_two(D));
        if (newton_point(D).slopes[0] != Rational(0)) ++ss;
        ++count;
    }
    CHECK(count == 48);
    CHECK(ss == 12);  // a = 0: the 12 invertible matrices with vanishing top-left entry
}

TEST_CASE("interpolation scan between identity and antidiagonal") {
    const BaseRing* F3 = BaseRing::finite_field(3, 1);
    const BaseRing* F81 = BaseRing::finite_field(3, 4);
    const Shape s = Shape::linear(2, 1);
    auto fam = interpolate_family(identity_display(s, F3, 6), make_display(s, {antidiag(F3, 6)}));
    const auto pts = regular_points(fam, F81);
    CHECK(pts.size() + upoly::deg(fam.hbar) >= 81);
    const auto res = family_newton_scan(fam, F81, pts);
    REQUIRE(res.maximal);
    CHECK(*res.maximal == np({0, -1}));
    CHECK(!res.special.empty());
    CHECK(res.special.size() < pts.size() / 2);
    for (const auto& row : res.rows) {
        CHECK(row.below_max);
        CHECK(dominance(row.nu, *res.maximal));
        if (row.nu != *res.maximal) CHECK(row.nu == np({Rational(-1, 2), Rational(-1, 2)}));
    }
    // constant family
    auto flat = interpolate_family(identity_display(s, F3, 6), identity_display(s, F3, 6));
    const auto cres = family_newton_scan(flat, F81, regular_points(flat, F81));
    CHECK(cres.special.empty());
    for (const auto& row : cres.rows) CHECK(row.nu == np({0, -1}));
}
