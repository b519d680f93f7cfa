#include "displaylab/fp_linalg.hpp"

#include "displaylab/field.hpp"

namespace dlab::fp {

std::optional<Solution> solve(Mat A, std::vector<std::uint32_t> b, std::uint32_t p) {
    const int R = A.rows, C = A.cols;
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < C && r < R; ++c) {
        int piv = -1;
        for (int i = r; i < R; ++i)
            if (A.at(i, c) % p) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < C; ++j) std::swap(A.at(piv, j), A.at(r, j));
            std::swap(b[piv], b[r]);
        }
        const std::uint64_t inv = powmod64(A.at(r, c), p - 2, p);
        for (int j = 0; j < C; ++j) A.at(r, j) = static_cast<std::uint32_t>(A.at(r, j) * inv % p);
        b[r] = static_cast<std::uint32_t>(b[r] * inv % p);
        for (int i = 0; i < R; ++i) {
            if (i == r || A.at(i, c) == 0) continue;
            const std::uint64_t f = A.at(i, c);
            for (int j = 0; j < C; ++j)
                A.at(i, j) = static_cast<std::uint32_t>((A.at(i, j) + (p - f) * A.at(r, j)) % p);
            b[i] = static_cast<std::uint32_t>((b[i] + (p - f) * b[r]) % p);
        }
        pivcol.push_back(c);
        ++r;
    }
    for (int i = r; i < R; ++i)
        if (b[i] % p) return std::nullopt;

    Solution s;
    s.rank = r;
    s.x.assign(C, 0);
    for (int i = 0; i < r; ++i) s.x[pivcol[i]] = b[i];
    std::vector<char> is_piv(C, 0);
    for (int c : pivcol) is_piv[c] = 1;
    for (int f = 0; f < C; ++f) {
        if (is_piv[f]) continue;
        std::vector<std::uint32_t> v(C, 0);
        v[f] = 1;
        for (int i = 0; i < r; ++i) v[pivcol[i]] = (p - A.at(i, f)) % p;
        s.kernel.push_back(std::move(v));
    }
    return s;
}

}  // namespace dlab::fp
