#pragma once
#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "displaylab/display.hpp"

namespace dlab {

using Rational = boost::rational<std::int64_t>;
std::string to_string(const Rational& q);  // "a/b", or "a" when b = 1

// Slopes of b = U F(mu(p)^-1), sorted nonincreasing. For weights in {0,1} they lie in [-1, 0].
struct NewtonPoint {
    int h = 0;
    std::vector<Rational> slopes;

    Rational total() const;
    NewtonPoint negated() const;  // p-divisible group convention
    std::string str() const;      // "(0,-1)"
    bool operator==(const NewtonPoint& o) const { return h == o.h && slopes == o.slopes; }
    bool operator!=(const NewtonPoint& o) const { return !(*this == o); }
};

NewtonPoint make_newton_point(std::vector<Rational> slopes);  // sorts

// det(x - A) = x^h + c[1] x^{h-1} + ... + c[h], division free
std::vector<WittVector> charpoly(const WMat& A);

// Lower convex hull of (i, v_i), i = 0..h, v_0 = 0. nullopt entries are only known
// to be >= cap; throws InsufficientPrecision if one of them could touch the hull.
std::vector<Rational> polygon_slopes(const std::vector<std::optional<int>>& v, int cap);

NewtonPoint newton_point(const Display& U);

// nu1 <= nu2 in the dominance order (majorization at equal totals)
bool dominance(const NewtonPoint& nu1, const NewtonPoint& nu2);

NewtonPoint ordinary_point(const Shape& s, int central = 0);
bool mazur_check(const Display& U);

struct ScanRow {
    fe point = 0;
    NewtonPoint nu;
    bool below_max = false;  // nu <= the maximal sampled value
};
struct ScanResult {
    std::vector<ScanRow> rows;
    std::optional<NewtonPoint> maximal;  // a sampled value dominating every sampled value
    std::vector<fe> special;             // points where a strictly smaller value occurs
};
ScanResult family_newton_scan(const Family& f, const BaseRing* target, const std::vector<fe>& points);
// every element of the target field that is not a pole, in index order
std::vector<fe> regular_points(const Family& f, const BaseRing* target);

}  // namespace dlab
