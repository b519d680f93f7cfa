#pragma once
#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dlab {

constexpr int kMaxLevel = 8;

// Exponent vector; variables x_0..x_{n-1} are slots 0..n-1, y_0..y_{n-1} are
// slots n..2n-1. The Frobenius polynomials use x_0..x_n only.
using Exps = std::array<std::uint32_t, 2 * kMaxLevel + 1>;

struct IntPoly {
    std::vector<std::pair<Exps, mpz_class>> terms;  // sorted by exponent, no zero coefficients
    std::size_t size() const { return terms.size(); }
    std::string to_string(int n) const;
};

struct UniversalWittPolys {
    std::uint32_t p = 0;
    int n = 0;
    std::vector<IntPoly> S;   // sum
    std::vector<IntPoly> P;   // product
    std::vector<IntPoly> Fr;  // Frobenius W_{n+1} -> W_n, in x_0..x_n
};

// Exact integer polynomials, memoized in memory and (if DISPLAYLAB_CACHE is set)
// on disk. Throws LevelTooLarge for n > 8.
const UniversalWittPolys& compute_witt_polys(std::uint32_t p, int n);

// Sparse mod-p image used by the evaluators. Each term lists (variable, exponent)
// pairs for its nonzero exponents.
struct ModTerm {
    std::uint32_t coef;
    std::vector<std::pair<std::uint8_t, std::uint32_t>> vars;
};
struct ModPoly {
    std::vector<ModTerm> terms;
};
struct WittTables {
    std::uint32_t p = 0;
    int n = 0;
    std::vector<ModPoly> S, P, Fr;
    std::vector<std::uint32_t> max_exp;  // per variable, over S and P
};
const WittTables& witt_tables(std::uint32_t p, int n);

// Ghost components of an integer-lift Witt vector.
std::vector<mpz_class> ghost(const std::vector<mpz_class>& x, std::uint32_t p);
// Evaluate S or P over integers (test-only cross-validation path).
std::vector<mpz_class> eval_int(const std::vector<IntPoly>& polys, const std::vector<mpz_class>& vars);

}  // namespace dlab
