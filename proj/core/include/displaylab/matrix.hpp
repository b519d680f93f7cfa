#pragma once
#include <functional>
#include <vector>

#include "displaylab/witt.hpp"

namespace dlab {

// Dense matrix of Witt vectors of one common length over one base ring.
class WMat {
public:
    WMat() = default;
    WMat(const BaseRing* R, int n, int rows, int cols);  // zero matrix

    static WMat identity(const BaseRing* R, int n, int h);
    static WMat diag(const std::vector<WittVector>& d);
    static WMat from_rows(const std::vector<std::vector<WittVector>>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    const BaseRing* ring() const { return R_; }
    int level() const { return n_; }
    bool square() const { return r_ == c_; }

    WittVector& at(int i, int j) { return a_[i * c_ + j]; }
    const WittVector& at(int i, int j) const { return a_[i * c_ + j]; }
    const std::vector<WittVector>& entries() const { return a_; }

    WMat block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const WMat& b);

    bool operator==(const WMat& o) const;
    bool operator!=(const WMat& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_identity() const;

private:
    const BaseRing* R_ = nullptr;
    int n_ = 0;
    int r_ = 0, c_ = 0;
    std::vector<WittVector> a_;
};

WMat operator*(const WMat& a, const WMat& b);
WMat operator+(const WMat& a, const WMat& b);
WMat operator-(const WMat& a, const WMat& b);
WMat operator-(const WMat& a);
WMat scale(const WittVector& s, const WMat& a);
WMat scale_int(const WMat& a, std::int64_t m);

// entrywise maps
WMat map_entries(const WMat& a, const std::function<WittVector(const WittVector&)>& f);
WMat mat_tau(const WMat& a);
WMat mat_tau_pow(const WMat& a, int k);
WMat mat_frobenius(const WMat& a);  // level n+1 -> n
WMat mat_truncate(const WMat& a, int m);
WMat transpose(const WMat& a);
WMat kron(const WMat& a, const WMat& b);

WittVector det(const WMat& a);
bool is_invertible(const WMat& a);
WMat inverse(const WMat& a);  // NotUnit when singular

bool lex_less(const WMat& a, const WMat& b);

}  // namespace dlab
