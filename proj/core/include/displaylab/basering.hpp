#pragma once
#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "displaylab/field.hpp"
#include "displaylab/rng.hpp"

namespace dlab {

// Value of a base ring element. Meaning of c depends on the ring:
//   FiniteField   c = {a}
//   Poly          c = coefficients in t (trimmed), zero is empty
//   LocalizedPoly c / h^k, k minimal
//   DualNumbers   c = {a, b} meaning a + b*eps
struct Elem {
    boost::container::small_vector<fe, 2> c;
    int k = 0;

    bool operator==(const Elem& o) const { return k == o.k && c == o.c; }
    std::strong_ordering operator<=>(const Elem& o) const {
        if (auto r = k <=> o.k; r != 0) return r;
        if (auto r = c.size() <=> o.c.size(); r != 0) return r;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (auto r = c[i] <=> o.c[i]; r != 0) return r;
        return std::strong_ordering::equal;
    }
};

class BaseRing {
public:
    enum class Kind { FiniteField, Poly, LocalizedPoly, DualNumbers };

    // Rings are interned: structurally equal rings share one pointer.
    static const BaseRing* finite_field(std::uint32_t p, int e);
    static const BaseRing* finite_field(std::uint32_t p, const std::vector<std::uint32_t>& modulus);
    static const BaseRing* poly(const BaseRing* field);
    static const BaseRing* localized(const BaseRing* field, const upoly::P& h);
    static const BaseRing* dual(const BaseRing* field);

    Kind kind() const { return kind_; }
    std::uint32_t p() const { return F_->p(); }
    int e() const { return F_->e(); }
    const Fq& fq() const { return *F_; }
    // the underlying finite field ring (self for FiniteField)
    const BaseRing* field_ring() const { return field_ ? field_ : this; }
    const upoly::P& h() const { return h_; }
    std::string name() const;

    Elem zero() const;
    Elem one() const;
    Elem from_int(std::int64_t v) const;
    Elem from_fe(fe a) const;
    Elem var_t() const;  // Poly / LocalizedPoly generator
    Elem eps() const;    // DualNumbers generator
    Elem make_fraction(const upoly::P& num, int k) const;  // LocalizedPoly num / h^k

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, std::uint64_t k) const;
    Elem frob(const Elem& a) const;  // a^p
    bool is_zero(const Elem& a) const;
    bool is_one(const Elem& a) const { return a == one(); }
    bool is_unit(const Elem& a) const;
    Elem inv(const Elem& a) const;  // throws NotUnit

    // dual numbers
    Elem dual_part(const Elem& a) const;   // b*eps
    fe dual_a(const Elem& a) const { return a.c[0]; }
    fe dual_b(const Elem& a) const { return a.c[1]; }
    Elem make_dual(fe a, fe b) const;
    bool in_eps_ideal(const Elem& a) const { return a.c[0] == 0; }

    // enumeration of finite rings (FiniteField, DualNumbers)
    bool is_finite() const { return kind_ == Kind::FiniteField || kind_ == Kind::DualNumbers; }
    std::uint64_t cardinality() const;
    Elem element(std::uint64_t idx) const;
    std::uint64_t index(const Elem& a) const;

    Elem random(Rng& rng) const;
    bool valid(const Elem& a) const;

private:
    BaseRing() = default;
    void canon(Elem& a) const;

    Kind kind_ = Kind::FiniteField;
    std::shared_ptr<const Fq> F_;
    const BaseRing* field_ = nullptr;
    upoly::P h_;
};

}  // namespace dlab
