#pragma once
#include <cstdint>
#include <optional>
#include <vector>

namespace dlab::fp {

// Dense matrix over F_p, row major.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<std::uint32_t> a;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
    std::uint32_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    std::uint32_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

struct Solution {
    std::vector<std::uint32_t> x;                 // one particular solution
    std::vector<std::vector<std::uint32_t>> kernel;  // basis of the null space
    int rank = 0;
};

// Solve A x = b over F_p; nullopt if inconsistent.
std::optional<Solution> solve(Mat A, std::vector<std::uint32_t> b, std::uint32_t p);

}  // namespace dlab::fp
