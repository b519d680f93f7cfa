#include "displaylab/basering.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "displaylab/errors.hpp"

namespace dlab {

namespace {

std::mutex g_mu;
std::map<std::string, std::unique_ptr<BaseRing>>& registry() {
    static std::map<std::string, std::unique_ptr<BaseRing>> r;
    return r;
}

std::string key_of(int kind, std::uint32_t p, const std::vector<std::uint32_t>& mod, const upoly::P& h) {
    std::ostringstream os;
    os << kind << ':' << p << ':';
    for (auto c : mod) os << c << ',';
    os << ':';
    for (auto c : h) os << c << ',';
    return os.str();
}

using upoly::P;

P to_poly(const Elem& a) { return P(a.c.begin(), a.c.end()); }

Elem from_poly(const P& p, int k = 0) {
    Elem r;
    r.c.assign(p.begin(), p.end());
    r.k = k;
    return r;
}

P poly_pow(const Fq& F, P a, std::uint64_t k) {
    P r = {1};
    while (k) {
        if (k & 1) r = upoly::mul(F, r, a);
        k >>= 1;
        if (k) a = upoly::mul(F, a, a);
    }
    return r;
}

}  // namespace

// The constructor is private, so registration goes through this helper.
struct RingFactory {
    static const BaseRing* intern(const std::string& key, std::unique_ptr<BaseRing> r) {
        auto [it, ok] = registry().emplace(key, std::move(r));
        return it->second.get();
    }
};

const BaseRing* BaseRing::finite_field(std::uint32_t p, int e) {
    if (p < 3 || p > 97 || !is_prime(p)) fail(Errc::InvalidArgument, "p must be an odd prime in [3,97]");
    if (e < 1) fail(Errc::InvalidArgument, "extension degree must be positive");
    return finite_field(p, smallest_irreducible(p, e));
}

const BaseRing* BaseRing::finite_field(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
    if (p < 3 || p > 97 || !is_prime(p)) fail(Errc::InvalidArgument, "p must be an odd prime in [3,97]");
    std::lock_guard lk(g_mu);
    auto key = key_of(0, p, modulus, {});
    if (auto it = registry().find(key); it != registry().end()) return it->second.get();
    std::unique_ptr<BaseRing> r(new BaseRing());
    r->kind_ = Kind::FiniteField;
    r->F_ = std::make_shared<const Fq>(p, modulus);
    return RingFactory::intern(key, std::move(r));
}

const BaseRing* BaseRing::poly(const BaseRing* field) {
    if (field->kind_ != Kind::FiniteField) fail(Errc::InvalidArgument, "Poly needs a finite field");
    std::lock_guard lk(g_mu);
    auto key = key_of(1, field->p(), field->fq().modulus(), {});
    if (auto it = registry().find(key); it != registry().end()) return it->second.get();
    std::unique_ptr<BaseRing> r(new BaseRing());
    r->kind_ = Kind::Poly;
    r->F_ = field->F_;
    r->field_ = field;
    return RingFactory::intern(key, std::move(r));
}

const BaseRing* BaseRing::localized(const BaseRing* field, const upoly::P& h0) {
    if (field->kind_ != Kind::FiniteField) fail(Errc::InvalidArgument, "LocalizedPoly needs a finite field");
    P h = h0;
    upoly::trim(h);
    if (h.empty() || h.back() != 1) fail(Errc::InvalidArgument, "h must be monic");
    std::lock_guard lk(g_mu);
    auto key = key_of(2, field->p(), field->fq().modulus(), h);
    if (auto it = registry().find(key); it != registry().end()) return it->second.get();
    std::unique_ptr<BaseRing> r(new BaseRing());
    r->kind_ = Kind::LocalizedPoly;
    r->F_ = field->F_;
    r->field_ = field;
    r->h_ = h;
    return RingFactory::intern(key, std::move(r));
}

const BaseRing* BaseRing::dual(const BaseRing* field) {
    if (field->kind_ != Kind::FiniteField) fail(Errc::InvalidArgument, "DualNumbers needs a finite field");
    std::lock_guard lk(g_mu);
    auto key = key_of(3, field->p(), field->fq().modulus(), {});
    if (auto it = registry().find(key); it != registry().end()) return it->second.get();
    std::unique_ptr<BaseRing> r(new BaseRing());
    r->kind_ = Kind::DualNumbers;
    r->F_ = field->F_;
    r->field_ = field;
    return RingFactory::intern(key, std::move(r));
}

std::string BaseRing::name() const {
    std::ostringstream os;
    os << "F_" << p();
    if (e() > 1) os << '^' << e();
    switch (kind_) {
        case Kind::FiniteField: break;
        case Kind::Poly: os << "[t]"; break;
        case Kind::LocalizedPoly: os << "[t]_h"; break;
        case Kind::DualNumbers: os << "[eps]"; break;
    }
    return os.str();
}

void BaseRing::canon(Elem& a) const {
    if (kind_ == Kind::Poly || kind_ == Kind::LocalizedPoly) {
        while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
    }
    if (kind_ != Kind::LocalizedPoly) return;
    if (a.c.empty()) {
        a.k = 0;
        return;
    }
    while (a.k > 0) {
        P q, r;
        upoly::divmod(*F_, to_poly(a), h_, q, r);
        if (!r.empty()) break;
        a.c.assign(q.begin(), q.end());
        --a.k;
    }
}

Elem BaseRing::zero() const {
    switch (kind_) {
        case Kind::FiniteField: return Elem{{0}, 0};
        case Kind::DualNumbers: return Elem{{0, 0}, 0};
        default: return Elem{};
    }
}

Elem BaseRing::one() const { return from_fe(1); }

Elem BaseRing::from_fe(fe a) const {
    switch (kind_) {
        case Kind::FiniteField: return Elem{{a}, 0};
        case Kind::DualNumbers: return Elem{{a, 0}, 0};
        default: {
            Elem r;
            if (a) r.c.push_back(a);
            return r;
        }
    }
}

Elem BaseRing::from_int(std::int64_t v) const { return from_fe(F_->from_int(v)); }

Elem BaseRing::var_t() const {
    if (kind_ != Kind::Poly && kind_ != Kind::LocalizedPoly) fail(Errc::InvalidArgument, "ring has no variable t");
    Elem r;
    r.c = {0, 1};
    canon(r);
    return r;
}

Elem BaseRing::eps() const {
    if (kind_ != Kind::DualNumbers) fail(Errc::InvalidArgument, "ring has no eps");
    return Elem{{0, 1}, 0};
}

Elem BaseRing::make_fraction(const upoly::P& num, int k) const {
    Elem r = from_poly(num, kind_ == Kind::LocalizedPoly ? k : 0);
    canon(r);
    return r;
}

Elem BaseRing::make_dual(fe a, fe b) const { return Elem{{a, b}, 0}; }

Elem BaseRing::dual_part(const Elem& a) const { return Elem{{0, a.c[1]}, 0}; }

Elem BaseRing::add(const Elem& a, const Elem& b) const {
    const Fq& F = *F_;
    switch (kind_) {
        case Kind::FiniteField: return Elem{{F.add(a.c[0], b.c[0])}, 0};
        case Kind::DualNumbers: return Elem{{F.add(a.c[0], b.c[0]), F.add(a.c[1], b.c[1])}, 0};
        case Kind::Poly: return from_poly(upoly::add(F, to_poly(a), to_poly(b)));
        case Kind::LocalizedPoly: {
            if (a.c.empty()) return b;
            if (b.c.empty()) return a;
            const int K = std::max(a.k, b.k);
            P x = upoly::mul(F, to_poly(a), poly_pow(F, h_, K - a.k));
            P y = upoly::mul(F, to_poly(b), poly_pow(F, h_, K - b.k));
            Elem r = from_poly(upoly::add(F, x, y), K);
            canon(r);
            return r;
        }
    }
    return {};
}

Elem BaseRing::neg(const Elem& a) const {
    Elem r = a;
    for (auto& c : r.c) c = F_->neg(c);
    return r;
}

Elem BaseRing::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem BaseRing::mul(const Elem& a, const Elem& b) const {
    const Fq& F = *F_;
    switch (kind_) {
        case Kind::FiniteField: return Elem{{F.mul(a.c[0], b.c[0])}, 0};
        case Kind::DualNumbers:
            return Elem{{F.mul(a.c[0], b.c[0]), F.add(F.mul(a.c[0], b.c[1]), F.mul(a.c[1], b.c[0]))}, 0};
        case Kind::Poly: return from_poly(upoly::mul(F, to_poly(a), to_poly(b)));
        case Kind::LocalizedPoly: {
            Elem r = from_poly(upoly::mul(F, to_poly(a), to_poly(b)), a.k + b.k);
            canon(r);
            return r;
        }
    }
    return {};
}

Elem BaseRing::pow(const Elem& a0, std::uint64_t k) const {
    if (kind_ == Kind::FiniteField) return Elem{{F_->pow(a0.c[0], k)}, 0};
    Elem r = one(), a = a0;
    while (k) {
        if (k & 1) r = mul(r, a);
        k >>= 1;
        if (k) a = mul(a, a);
    }
    return r;
}

Elem BaseRing::frob(const Elem& a) const {
    const Fq& F = *F_;
    switch (kind_) {
        case Kind::FiniteField: return Elem{{F.frob(a.c[0])}, 0};
        case Kind::DualNumbers: return Elem{{F.frob(a.c[0]), 0}, 0};
        case Kind::Poly:
        case Kind::LocalizedPoly: {
            // (sum c_i t^i)^p = sum c_i^p t^{ip}
            Elem r;
            if (!a.c.empty()) {
                r.c.assign((a.c.size() - 1) * p() + 1, 0);
                for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i * p()] = F.frob(a.c[i]);
            }
            r.k = a.k * static_cast<int>(p());
            canon(r);
            return r;
        }
    }
    return {};
}

bool BaseRing::is_zero(const Elem& a) const {
    switch (kind_) {
        case Kind::FiniteField: return a.c[0] == 0;
        case Kind::DualNumbers: return a.c[0] == 0 && a.c[1] == 0;
        default: return a.c.empty();
    }
}

bool BaseRing::is_unit(const Elem& a) const {
    switch (kind_) {
        case Kind::FiniteField: return a.c[0] != 0;
        case Kind::DualNumbers: return a.c[0] != 0;
        case Kind::Poly: return a.c.size() == 1;
        case Kind::LocalizedPoly: {
            if (a.c.empty()) return false;
            P g = to_poly(a);
            while (upoly::deg(g) >= upoly::deg(h_) && upoly::deg(h_) > 0) {
                P q, r;
                upoly::divmod(*F_, g, h_, q, r);
                if (!r.empty()) break;
                g = q;
            }
            return g.size() == 1;
        }
    }
    return false;
}

Elem BaseRing::inv(const Elem& a) const {
    if (!is_unit(a)) fail(Errc::NotUnit, "element of " + name() + " is not a unit");
    const Fq& F = *F_;
    switch (kind_) {
        case Kind::FiniteField: return Elem{{F.inv(a.c[0])}, 0};
        case Kind::DualNumbers: {
            const fe ia = F.inv(a.c[0]);
            return Elem{{ia, F.neg(F.mul(F.mul(ia, ia), a.c[1]))}, 0};
        }
        case Kind::Poly: return Elem{{F.inv(a.c[0])}, 0};
        case Kind::LocalizedPoly: {
            // a = c h^m / h^k  ->  a^{-1} = c^{-1} h^k / h^m
            P g = to_poly(a);
            int m = 0;
            while (g.size() > 1) {
                P q, r;
                upoly::divmod(F, g, h_, q, r);
                g = q;
                ++m;
            }
            Elem r = from_poly(upoly::scale(F, poly_pow(F, h_, a.k), F.inv(g[0])), m);
            canon(r);
            return r;
        }
    }
    return {};
}

std::uint64_t BaseRing::cardinality() const {
    if (kind_ == Kind::FiniteField) return F_->q();
    if (kind_ == Kind::DualNumbers) return F_->q() * F_->q();
    fail(Errc::UnsupportedBase, "ring is infinite");
}

Elem BaseRing::element(std::uint64_t idx) const {
    if (kind_ == Kind::FiniteField) return Elem{{idx}, 0};
    if (kind_ == Kind::DualNumbers) return Elem{{idx % F_->q(), idx / F_->q()}, 0};
    fail(Errc::UnsupportedBase, "ring is infinite");
}

std::uint64_t BaseRing::index(const Elem& a) const {
    if (kind_ == Kind::FiniteField) return a.c[0];
    if (kind_ == Kind::DualNumbers) return a.c[0] + a.c[1] * F_->q();
    fail(Errc::UnsupportedBase, "ring is infinite");
}

Elem BaseRing::random(Rng& rng) const {
    const std::uint64_t q = F_->q();
    switch (kind_) {
        case Kind::FiniteField: return Elem{{rng.below(q)}, 0};
        case Kind::DualNumbers: return Elem{{rng.below(q), rng.below(q)}, 0};
        case Kind::Poly:
        case Kind::LocalizedPoly: {
            Elem r;
            const int d = static_cast<int>(rng.below(3));
            for (int i = 0; i <= d; ++i) r.c.push_back(rng.below(q));
            if (kind_ == Kind::LocalizedPoly) r.k = static_cast<int>(rng.below(2));
            canon(r);
            return r;
        }
    }
    return {};
}

bool BaseRing::valid(const Elem& a) const {
    const std::uint64_t q = F_->q();
    for (auto c : a.c)
        if (c >= q) return false;
    switch (kind_) {
        case Kind::FiniteField: return a.c.size() == 1 && a.k == 0;
        case Kind::DualNumbers: return a.c.size() == 2 && a.k == 0;
        case Kind::Poly: return a.k == 0 && (a.c.empty() || a.c.back() != 0);
        case Kind::LocalizedPoly: {
            if (a.k < 0 || (!a.c.empty() && a.c.back() == 0)) return false;
            Elem b = a;
            canon(b);
            return b == a;
        }
    }
    return false;
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::LevelTooLarge: return "LevelTooLarge";
        case Errc::RingMismatch: return "RingMismatch";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::LengthTooShort: return "LengthTooShort";
        case Errc::NotInI: return "NotInI";
        case Errc::NotInIdeal: return "NotInIdeal";
        case Errc::NotUnit: return "NotUnit";
        case Errc::InvalidParabolic: return "InvalidParabolic";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::LevelMismatch: return "LevelMismatch";
        case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case Errc::NotNilpotent: return "NotNilpotent";
        case Errc::NoSolution: return "NoSolution";
        case Errc::NotSameReduction: return "NotSameReduction";
        case Errc::DegenerateInterpolation: return "DegenerateInterpolation";
        case Errc::SampleAtPole: return "SampleAtPole";
        case Errc::WidthMismatch: return "WidthMismatch";
        case Errc::RankMismatch: return "RankMismatch";
        case Errc::PeriodMismatch: return "PeriodMismatch";
        case Errc::UnsupportedBase: return "UnsupportedBase";
        case Errc::WeightOutOfRange: return "WeightOutOfRange";
        case Errc::NotUnitary: return "NotUnitary";
        case Errc::InvalidMultidegree: return "InvalidMultidegree";
        case Errc::InsufficientLevel: return "InsufficientLevel";
        case Errc::WidthExceedsP: return "WidthExceedsP";
        case Errc::IterationLeavesParabolic: return "IterationLeavesParabolic";
        case Errc::EvenSubset: return "EvenSubset";
        case Errc::InsufficientPrecision: return "InsufficientPrecision";
        case Errc::NotFiniteField: return "NotFiniteField";
        case Errc::TotalMismatch: return "TotalMismatch";
        case Errc::TranslationMultidegree: return "TranslationMultidegree";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace dlab
