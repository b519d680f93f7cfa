#pragma once
#include <cstdint>
#include <memory>
#include <vector>

namespace dlab {

// Elements of F_{p^e} are packed as sum c_i p^i, c_i the coefficients of the
// canonical representative modulo the defining polynomial.
using fe = std::uint64_t;

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
bool is_prime(std::uint64_t n);

// Lexicographically smallest monic irreducible of degree e over F_p, ordered by
// the coefficient vector read from the top (x^{e-1}) down to the constant term.
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, int e);
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f);

class Fq {
public:
    Fq(std::uint32_t p, int e);
    Fq(std::uint32_t p, std::vector<std::uint32_t> modulus);

    std::uint32_t p() const { return p_; }
    int e() const { return e_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return mod_; }

    fe add(fe a, fe b) const;
    fe sub(fe a, fe b) const { return add(a, neg(b)); }
    fe neg(fe a) const;
    fe mul(fe a, fe b) const;
    fe inv(fe a) const;  // a != 0
    fe pow(fe a, std::uint64_t k) const;
    fe frob(fe a) const { return pow(a, p_); }
    fe frob_inv(fe a) const;
    fe from_int(std::int64_t v) const;

    std::vector<std::uint32_t> coeffs(fe a) const;
    fe from_coeffs(const std::vector<std::uint32_t>& c) const;
    std::uint32_t coeff(fe a, int i) const;

private:
    void init_tables();
    fe mul_slow(fe a, fe b) const;

    std::uint32_t p_;
    int e_;
    std::uint64_t q_;
    std::vector<std::uint32_t> mod_;
    std::vector<std::uint64_t> ppow_;
    // log/exp tables for moderate q, full addition table for small q
    std::vector<std::uint32_t> log_, exp_;
    std::vector<std::uint16_t> addt_;
};

// Dense univariate polynomials over F_q, low degree first, trimmed.
namespace upoly {
using P = std::vector<fe>;
void trim(P& a);
P add(const Fq& F, const P& a, const P& b);
P sub(const Fq& F, const P& a, const P& b);
P mul(const Fq& F, const P& a, const P& b);
P scale(const Fq& F, const P& a, fe c);
void divmod(const Fq& F, const P& a, const P& b, P& quo, P& rem);
P mod(const Fq& F, const P& a, const P& b);
P gcd(const Fq& F, P a, P b);
P make_monic(const Fq& F, const P& a);
fe eval(const Fq& F, const P& a, fe x);
int deg(const P& a);
}  // namespace upoly

}  // namespace dlab
