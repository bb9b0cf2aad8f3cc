#pragma once

#include <cstdint>
#include <vector>

#include "congsec/bits.hpp"
#include "congsec/errors.hpp"

namespace congsec::gf2 {

// Square matrix over GF(2), rows packed into uint64 words. Dimensions in
// this project stay tiny (branching programs of a handful of nodes), so a
// single word per row would do, but we keep it general.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), wpr_((n + 63) / 64), rows_(size_t(n) * wpr_, 0) {}

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    int n() const { return n_; }

    bool get(int r, int c) const {
        return (rows_[size_t(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(int r, int c, bool v) {
        uint64_t m = uint64_t(1) << (c & 63);
        auto& w = rows_[size_t(r) * wpr_ + (c >> 6)];
        if (v) w |= m; else w &= ~m;
    }
    void flip(int r, int c) {
        rows_[size_t(r) * wpr_ + (c >> 6)] ^= uint64_t(1) << (c & 63);
    }

    Matrix& operator^=(const Matrix& o) {
        for (size_t i = 0; i < rows_.size(); ++i) rows_[i] ^= o.rows_[i];
        return *this;
    }
    friend Matrix operator^(Matrix a, const Matrix& b) { a ^= b; return a; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix c(a.n_);
        for (int i = 0; i < a.n_; ++i) {
            uint64_t* crow = &c.rows_[size_t(i) * c.wpr_];
            for (int k = 0; k < a.n_; ++k) {
                if (a.get(i, k)) {
                    const uint64_t* brow = &b.rows_[size_t(k) * b.wpr_];
                    for (int w = 0; w < b.wpr_; ++w) crow[w] ^= brow[w];
                }
            }
        }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_;
    }

    // Determinant by in-place elimination.
    bool det() const {
        Matrix m = *this;
        for (int col = 0; col < n_; ++col) {
            int pivot = -1;
            for (int r = col; r < n_; ++r)
                if (m.get(r, col)) { pivot = r; break; }
            if (pivot < 0) return false;
            if (pivot != col) m.swap_rows(pivot, col);
            for (int r = col + 1; r < n_; ++r)
                if (m.get(r, col)) m.xor_row(r, col);
        }
        return true;
    }

    void xor_row(int dst, int src) {
        uint64_t* d = &rows_[size_t(dst) * wpr_];
        const uint64_t* s = &rows_[size_t(src) * wpr_];
        for (int w = 0; w < wpr_; ++w) d[w] ^= s[w];
    }
    void swap_rows(int a, int b) {
        for (int w = 0; w < wpr_; ++w)
            std::swap(rows_[size_t(a) * wpr_ + w], rows_[size_t(b) * wpr_ + w]);
    }

    BitString to_bits() const {
        BitString b(size_t(n_) * n_);
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c)
                if (get(r, c)) b.set(size_t(r) * n_ + c, true);
        return b;
    }
    static Matrix from_bits(const BitString& b, int n) {
        if (b.size() != size_t(n) * n) throw internal_error("gf2::Matrix::from_bits size");
        Matrix m(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (b.get(size_t(r) * n + c)) m.set(r, c, true);
        return m;
    }

private:
    int n_ = 0;
    int wpr_ = 0;
    std::vector<uint64_t> rows_;
};

// Upper unitriangular matrix from n(n-1)/2 free bits (row-major above the
// diagonal).
inline Matrix unitriangular_from_bits(BitReader& rd, int n) {
    Matrix m = Matrix::identity(n);
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c)
            if (rd.take_bit()) m.set(r, c, true);
    return m;
}

// Identity plus n-1 free bits in the last column above the diagonal.
inline Matrix last_column_from_bits(BitReader& rd, int n) {
    Matrix m = Matrix::identity(n);
    for (int r = 0; r + 1 < n; ++r)
        if (rd.take_bit()) m.set(r, n - 1, true);
    return m;
}

inline Matrix matrix_from_bits(BitReader& rd, int n) {
    Matrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (rd.take_bit()) m.set(r, c, true);
    return m;
}

} // namespace congsec::gf2
