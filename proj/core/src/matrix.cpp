#include "displaylab/matrix.hpp"

#include "displaylab/errors.hpp"

namespace dlab {

WMat::WMat(const BaseRing* R, int n, int rows, int cols)
    : R_(R), n_(n), r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, WittVector::zero(R, n)) {}

WMat WMat::identity(const BaseRing* R, int n, int h) {
    WMat m(R, n, h, h);
    for (int i = 0; i < h; ++i) m.at(i, i) = WittVector::one(R, n);
    return m;
}

WMat WMat::diag(const std::vector<WittVector>& d) {
    if (d.empty()) fail(Errc::InvalidArgument, "empty diagonal");
    WMat m(d[0].ring(), d[0].length(), static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

WMat WMat::from_rows(const std::vector<std::vector<WittVector>>& rows) {
    if (rows.empty() || rows[0].empty()) fail(Errc::InvalidArgument, "empty matrix");
    const WittVector& w = rows[0][0];
    WMat m(w.ring(), w.length(), static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.r_; ++i) {
        if (static_cast<int>(rows[i].size()) != m.c_) fail(Errc::InvalidArgument, "ragged matrix");
        for (int j = 0; j < m.c_; ++j) {
            if (rows[i][j].ring() != w.ring()) fail(Errc::RingMismatch, "matrix entries over different rings");
            if (rows[i][j].length() != w.length()) fail(Errc::LengthMismatch, "matrix entries of different lengths");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

WMat WMat::block(int r0, int c0, int nr, int nc) const {
    WMat b(R_, n_, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
    return b;
}

void WMat::set_block(int r0, int c0, const WMat& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

bool WMat::operator==(const WMat& o) const {
    return R_ == o.R_ && n_ == o.n_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

bool WMat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool WMat::is_identity() const { return square() && *this == identity(R_, n_, r_); }

namespace {
void check_shape(const WMat& a, const WMat& b) {
    if (a.ring() != b.ring()) fail(Errc::RingMismatch, "matrices over different rings");
    if (a.level() != b.level()) fail(Errc::LevelMismatch, "matrices of different levels");
}
}  // namespace

WMat operator*(const WMat& a, const WMat& b) {
    check_shape(a, b);
    if (a.cols() != b.rows()) fail(Errc::RankMismatch, "matrix product dimensions");
    WMat r(a.ring(), a.level(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            WittVector acc = WittVector::zero(a.ring(), a.level());
            for (int k = 0; k < a.cols(); ++k) {
                if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
                acc = acc + a.at(i, k) * b.at(k, j);
            }
            r.at(i, j) = acc;
        }
    return r;
}

WMat operator+(const WMat& a, const WMat& b) {
    check_shape(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) fail(Errc::RankMismatch, "matrix sum dimensions");
    WMat r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

WMat operator-(const WMat& a) { return map_entries(a, [](const WittVector& x) { return -x; }); }
WMat operator-(const WMat& a, const WMat& b) { return a + (-b); }

WMat scale(const WittVector& s, const WMat& a) {
    return map_entries(a, [&](const WittVector& x) { return s * x; });
}

WMat scale_int(const WMat& a, std::int64_t m) {
    return map_entries(a, [&](const WittVector& x) { return witt_scale(x, m); });
}

WMat map_entries(const WMat& a, const std::function<WittVector(const WittVector&)>& f) {
    if (a.rows() == 0 || a.cols() == 0) return a;
    std::vector<std::vector<WittVector>> rows(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) rows[i].push_back(f(a.at(i, j)));
    return WMat::from_rows(rows);
}

WMat mat_tau(const WMat& a) { return map_entries(a, [](const WittVector& x) { return tau(x); }); }
WMat mat_tau_pow(const WMat& a, int k) {
    return map_entries(a, [k](const WittVector& x) { return tau_pow(x, k); });
}
WMat mat_frobenius(const WMat& a) { return map_entries(a, [](const WittVector& x) { return frobenius(x); }); }
WMat mat_truncate(const WMat& a, int m) {
    return map_entries(a, [m](const WittVector& x) { return truncate(x, m); });
}

WMat transpose(const WMat& a) {
    WMat r(a.ring(), a.level(), a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
    return r;
}

WMat kron(const WMat& a, const WMat& b) {
    check_shape(a, b);
    WMat r(a.ring(), a.level(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    return r;
}

namespace {

// Division-free determinant by expansion along rows, memoized over column subsets.
WittVector det_subsets(const WMat& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    const int h = static_cast<int>(rows.size());
    if (h == 0) return WittVector::one(a.ring(), a.level());
    if (h > 12) fail(Errc::InvalidArgument, "matrix too large for subset determinant");
    // D[mask] = det of rows[0..popcount-1] x cols in mask
    std::vector<WittVector> D(1u << h, WittVector::zero(a.ring(), a.level()));
    D[0] = WittVector::one(a.ring(), a.level());
    for (unsigned mask = 1; mask < (1u << h); ++mask) {
        const int k = __builtin_popcount(mask) - 1;  // row index being placed
        WittVector acc = WittVector::zero(a.ring(), a.level());
        int pos = 0;  // position of column j among the columns of mask
        // Laplace along the last row: sign by position of j within mask
        for (int j = 0; j < h; ++j) {
            if (!(mask & (1u << j))) continue;
            const WittVector& x = a.at(rows[k], cols[j]);
            const int sign = ((k + pos) % 2 == 0) ? 1 : -1;
            ++pos;
            if (x.is_zero() || D[mask ^ (1u << j)].is_zero()) continue;
            WittVector t = x * D[mask ^ (1u << j)];
            acc = sign > 0 ? acc + t : acc - t;
        }
        D[mask] = acc;
    }
    return D[(1u << h) - 1];
}

bool local_ring(const BaseRing* R) {
    return R->kind() == BaseRing::Kind::FiniteField || R->kind() == BaseRing::Kind::DualNumbers;
}

}  // namespace

WittVector det(const WMat& a) {
    if (!a.square()) fail(Errc::RankMismatch, "determinant of a non-square matrix");
    std::vector<int> idx(a.rows());
    for (int i = 0; i < a.rows(); ++i) idx[i] = i;
    if (local_ring(a.ring())) {
        // elimination with unit pivots; falls back when no unit pivot exists
        WMat m = a;
        const int h = a.rows();
        WittVector d = WittVector::one(a.ring(), a.level());
        bool ok = true;
        for (int c = 0; c < h && ok; ++c) {
            int piv = -1;
            for (int r = c; r < h; ++r)
                if (is_unit(m.at(r, c))) {
                    piv = r;
                    break;
                }
            if (piv < 0) {
                ok = false;
                break;
            }
            if (piv != c) {
                for (int j = 0; j < h; ++j) std::swap(m.at(piv, j), m.at(c, j));
                d = -d;
            }
            d = d * m.at(c, c);
            const WittVector inv = witt_inverse(m.at(c, c));
            for (int r = c + 1; r < h; ++r) {
                if (m.at(r, c).is_zero()) continue;
                const WittVector f = m.at(r, c) * inv;
                for (int j = c; j < h; ++j) m.at(r, j) = m.at(r, j) - f * m.at(c, j);
            }
        }
        if (ok) return d;
    }
    return det_subsets(a, idx, idx);
}

bool is_invertible(const WMat& a) { return a.square() && is_unit(det(a)); }

WMat inverse(const WMat& a) {
    if (!a.square()) fail(Errc::RankMismatch, "inverse of a non-square matrix");
    const int h = a.rows();
    if (local_ring(a.ring())) {
        WMat m = a, inv = WMat::identity(a.ring(), a.level(), h);
        for (int c = 0; c < h; ++c) {
            int piv = -1;
            for (int r = c; r < h; ++r)
                if (is_unit(m.at(r, c))) {
                    piv = r;
                    break;
                }
            if (piv < 0) fail(Errc::NotUnit, "matrix is not invertible");
            if (piv != c)
                for (int j = 0; j < h; ++j) {
                    std::swap(m.at(piv, j), m.at(c, j));
                    std::swap(inv.at(piv, j), inv.at(c, j));
                }
            const WittVector pi = witt_inverse(m.at(c, c));
            for (int j = 0; j < h; ++j) {
                m.at(c, j) = m.at(c, j) * pi;
                inv.at(c, j) = inv.at(c, j) * pi;
            }
            for (int r = 0; r < h; ++r) {
                if (r == c || m.at(r, c).is_zero()) continue;
                const WittVector f = m.at(r, c);
                for (int j = 0; j < h; ++j) {
                    m.at(r, j) = m.at(r, j) - f * m.at(c, j);
                    inv.at(r, j) = inv.at(r, j) - f * inv.at(c, j);
                }
            }
        }
        return inv;
    }
    // adjugate over non-local rings
    const WittVector d = det(a);
    if (!is_unit(d)) fail(Errc::NotUnit, "matrix is not invertible");
    const WittVector di = witt_inverse(d);
    WMat r(a.ring(), a.level(), h, h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            std::vector<int> rows, cols;
            for (int k = 0; k < h; ++k) {
                if (k != j) rows.push_back(k);
                if (k != i) cols.push_back(k);
            }
            WittVector c = det_subsets(a, rows, cols) * di;
            r.at(i, j) = ((i + j) % 2 == 0) ? c : -c;
        }
    return r;
}

bool lex_less(const WMat& a, const WMat& b) {
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        if (lex_less(a.entries()[i], b.entries()[i])) return true;
        if (lex_less(b.entries()[i], a.entries()[i])) return false;
    }
    return false;
}

}  // namespace dlab
