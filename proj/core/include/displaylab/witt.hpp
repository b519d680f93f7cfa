#pragma once
#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <utility>
#include <vector>

#include "displaylab/basering.hpp"
#include "displaylab/wittpoly.hpp"

namespace dlab {

// Truncated p-typical Witt vector of length 1..8.
//
// Over a finite field the value is kept as an element of the Galois ring
// W_n(F_q) = (Z/p^n)[x]/(lift of the field modulus); components are recovered
// on demand. Other base rings store components and use the universal
// polynomials.
class WittVector {
public:
    using GR = boost::container::small_vector<std::uint64_t, 4>;

    WittVector() = default;
    WittVector(const BaseRing* R, const std::vector<Elem>& comps);

    static WittVector zero(const BaseRing* R, int n);
    static WittVector one(const BaseRing* R, int n);
    static WittVector from_int(const BaseRing* R, int n, std::int64_t v);
    static WittVector teich(const BaseRing* R, int n, const Elem& a);

    const BaseRing* ring() const { return R_; }
    int length() const { return n_; }
    bool fast() const { return R_ && R_->kind() == BaseRing::Kind::FiniteField; }

    Elem component(int i) const;
    std::vector<Elem> components() const;
    bool is_zero() const;
    bool is_one() const;

    bool operator==(const WittVector& o) const;
    bool operator!=(const WittVector& o) const { return !(*this == o); }

    // Galois ring access (finite fields only)
    const GR& gr() const { return y_; }
    static WittVector from_gr(const BaseRing* R, int n, GR y);

private:
    friend struct WittImpl;
    const BaseRing* R_ = nullptr;
    int n_ = 0;
    std::vector<Elem> comps_;
    GR y_;
};

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_sub(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_scale(const WittVector& a, std::int64_t m);
WittVector witt_pow(const WittVector& a, std::uint64_t k);

WittVector frobenius(const WittVector& a);     // W_{n+1} -> W_n
WittVector verschiebung(const WittVector& a);  // W_n -> W_{n+1}
WittVector v_inverse(const WittVector& a);     // I_{n+1} -> W_n
WittVector tau(const WittVector& a);           // componentwise p-th power, same length
WittVector tau_pow(const WittVector& a, int k);  // tau^k; negative k needs a finite field
WittVector truncate(const WittVector& a, int m);

bool is_in_I(const WittVector& a);
bool is_unit(const WittVector& a);
WittVector witt_inverse(const WittVector& a);  // NotUnit otherwise
// least i with x_i != 0, or length if zero (finite fields)
int valuation(const WittVector& a);

// Reference implementations through the universal polynomials; also valid for
// finite fields (used to cross-check the Galois ring path).
WittVector witt_add_poly(const WittVector& a, const WittVector& b);
WittVector witt_mul_poly(const WittVector& a, const WittVector& b);
WittVector frobenius_poly(const WittVector& a);

// Norman splitting of a in W_n(eps R) over dual numbers.
std::pair<Elem, WittVector> norman_split(const WittVector& a);
WittVector norman_combine(const BaseRing* R, const Elem& lin, const WittVector& vpart);

// Lexicographic order on component lists, used for deterministic output.
bool lex_less(const WittVector& a, const WittVector& b);

// Map through a ring homomorphism acting on components (reduction mod eps,
// evaluation of t, field embeddings).
template <class Fn>
WittVector map_components(const BaseRing* target, const WittVector& a, Fn&& f) {
    std::vector<Elem> c;
    c.reserve(a.length());
    for (int i = 0; i < a.length(); ++i) c.push_back(f(a.component(i)));
    return WittVector(target, c);
}

inline WittVector operator+(const WittVector& a, const WittVector& b) { return witt_add(a, b); }
inline WittVector operator-(const WittVector& a, const WittVector& b) { return witt_sub(a, b); }
inline WittVector operator-(const WittVector& a) { return witt_neg(a); }
inline WittVector operator*(const WittVector& a, const WittVector& b) { return witt_mul(a, b); }

}  // namespace dlab
