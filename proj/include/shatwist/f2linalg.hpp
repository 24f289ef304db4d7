#pragma once
// Dense linear algebra over GF(2).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace shatwist {

using BitVector = std::vector<std::uint8_t>;

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static BitMatrix from_rows(const std::vector<std::vector<int>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows[0].size() : 0;
        BitMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            require(rows[i].size() == c, "ragged row list");
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j] & 1);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const {
        check(i, j);
        return (data_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }

    void set(std::size_t i, std::size_t j, bool v) {
        check(i, j);
        std::uint64_t bit = std::uint64_t{1} << (j % 64);
        auto& w = data_[i * words_ + j / 64];
        w = v ? (w | bit) : (w & ~bit);
    }

    void flip(std::size_t i, std::size_t j) {
        check(i, j);
        data_[i * words_ + j / 64] ^= std::uint64_t{1} << (j % 64);
    }

    // Copies `src` into this matrix with its top-left corner at (r0, c0).
    void paste(const BitMatrix& src, std::size_t r0, std::size_t c0) {
        require(r0 + src.rows() <= rows_ && c0 + src.cols() <= cols_, "paste out of range");
        for (std::size_t i = 0; i < src.rows(); ++i)
            for (std::size_t j = 0; j < src.cols(); ++j) set(r0 + i, c0 + j, src.get(i, j));
    }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (get(i, j)) t.set(j, i, true);
        return t;
    }

    BitVector apply(const BitVector& v) const {
        require(v.size() == cols_, "vector length does not match column count");
        BitVector out(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint8_t acc = 0;
            for (std::size_t j = 0; j < cols_; ++j) acc ^= static_cast<std::uint8_t>(get(i, j) & (v[j] & 1));
            out[i] = acc;
        }
        return out;
    }

    BitMatrix operator+(const BitMatrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in sum");
        BitMatrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] ^= o.data_[k];
        return r;
    }

    BitMatrix operator*(const BitMatrix& o) const {
        require(cols_ == o.rows_, "shape mismatch in product");
        BitMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k)
                if (get(i, k))
                    for (std::size_t w = 0; w < o.words_; ++w) r.data_[i * r.words_ + w] ^= o.data_[k * o.words_ + w];
        return r;
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool is_zero() const {
        for (auto w : data_)
            if (w) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (get(i, j) != get(j, i)) return false;
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) s.push_back(get(i, j) ? '1' : '0');
            s.push_back('\n');
        }
        return s;
    }

private:
    friend struct Echelon;
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw contract_violation("BitMatrix index out of range");
    }
    void xor_row(std::size_t dst, std::size_t src) {
        for (std::size_t w = 0; w < words_; ++w) data_[dst * words_ + w] ^= data_[src * words_ + w];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t w = 0; w < words_; ++w) std::swap(data_[a * words_ + w], data_[b * words_ + w]);
    }

    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;
};

// Reduced row echelon form of an augmented system [m | w].
struct Echelon {
    BitMatrix rref;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row

    explicit Echelon(BitMatrix m, std::size_t ncols) : rref(std::move(m)) {
        std::size_t r = 0;
        for (std::size_t c = 0; c < ncols && r < rref.rows(); ++c) {
            std::size_t p = r;
            while (p < rref.rows() && !rref.get(p, c)) ++p;
            if (p == rref.rows()) continue;
            rref.swap_rows(p, r);
            for (std::size_t i = 0; i < rref.rows(); ++i)
                if (i != r && rref.get(i, c)) rref.xor_row(i, r);
            pivots.push_back(c);
            ++r;
        }
    }
};

inline std::size_t rank(const BitMatrix& m) { return Echelon(m, m.cols()).pivots.size(); }

// Basis of the right kernel, one vector per free column in ascending order.
inline std::vector<BitVector> kernel_basis(const BitMatrix& m) {
    Echelon e(m, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVector v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            if (e.rref.get(r, f)) v[e.pivots[r]] = 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

// Some v with m v = w, free variables set to zero; nullopt if w is outside the image.
inline std::optional<BitVector> solve(const BitMatrix& m, const BitVector& w) {
    require(w.size() == m.rows(), "right-hand side length does not match row count");
    BitMatrix aug(m.rows(), m.cols() + 1);
    aug.paste(m, 0, 0);
    for (std::size_t i = 0; i < m.rows(); ++i) aug.set(i, m.cols(), w[i] & 1);
    Echelon e(aug, m.cols());
    for (std::size_t r = e.pivots.size(); r < m.rows(); ++r)
        if (e.rref.get(r, m.cols())) return std::nullopt;
    BitVector v(m.cols(), 0);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = e.rref.get(r, m.cols());
    return v;
}

// All 2^dim vectors of the span of `basis` (length `len`), starting with zero.
inline std::vector<BitVector> span(const std::vector<BitVector>& basis, std::size_t len) {
    require(basis.size() < 31, "span too large to enumerate");
    std::vector<BitVector> out;
    out.reserve(std::size_t{1} << basis.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << basis.size()); ++mask) {
        BitVector v(len, 0);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (mask >> b & 1)
                for (std::size_t i = 0; i < len; ++i) v[i] ^= basis[b][i];
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace shatwist
