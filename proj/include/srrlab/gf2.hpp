#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srrlab/caps.hpp"
#include "srrlab/errors.hpp"

// Exact linear algebra over GF(2), bit-packed into 64-bit words.
//
// Index convention: logical bit positions are 0-based inside this namespace;
// everything that crosses a public/domain boundary (pivot column lists,
// supports) is 1-based, matching the [n] notation used throughout the
// project. Conversion happens exactly once, at those boundaries.

namespace srrlab {

class BinaryVector {
public:
    explicit BinaryVector(int len) : len_(len), w_(words_for(len), 0) {
        if (len < 0) throw UsageError("BinaryVector: negative length");
    }

    static BinaryVector zeros(int len) { return BinaryVector(len); }

    // Builds a vector of length n from a 1-based support.
    static BinaryVector from_support(int n, const std::vector<int>& support) {
        BinaryVector v(n);
        int prev = 0;
        for (int s : support) {
            if (s < 1 || s > n) throw UsageError("support index " + std::to_string(s) + " out of range [1," + std::to_string(n) + "]");
            if (s <= prev) throw UsageError("support must be strictly increasing");
            prev = s;
            v.set(s - 1, true);
        }
        return v;
    }

    static BinaryVector from_string(const std::string& bits) {
        BinaryVector v(static_cast<int>(bits.size()));
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') v.set(static_cast<int>(i), true);
            else if (bits[i] != '0') throw UsageError("BinaryVector::from_string: bad character");
        }
        return v;
    }

    int size() const { return len_; }

    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(int i, bool b) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (b) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }

    void flip(int i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BinaryVector& operator^=(const BinaryVector& o) {
        if (o.len_ != len_) throw UsageError("BinaryVector xor: length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    friend BinaryVector operator^(BinaryVector a, const BinaryVector& b) { a ^= b; return a; }

    bool operator==(const BinaryVector& o) const { return len_ == o.len_ && w_ == o.w_; }
    bool operator!=(const BinaryVector& o) const { return !(*this == o); }

    int weight() const {
        int c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    bool is_zero() const {
        for (std::uint64_t w : w_) if (w) return false;
        return true;
    }

    // Parity of the AND with `o` (the GF(2) inner product).
    bool dot(const BinaryVector& o) const {
        if (o.len_ != len_) throw UsageError("BinaryVector dot: length mismatch");
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= (w_[i] & o.w_[i]);
        return std::popcount(acc) & 1;
    }

    // True iff every set bit of `o` is also set here.
    bool contains(const BinaryVector& o) const {
        if (o.len_ != len_) throw UsageError("BinaryVector contains: length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i)
            if ((w_[i] & o.w_[i]) != o.w_[i]) return false;
        return true;
    }

    // 1-based sorted support.
    std::vector<int> support() const {
        std::vector<int> s;
        for (int i = 0; i < len_; ++i)
            if (get(i)) s.push_back(i + 1);
        return s;
    }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(len_), '0');
        for (int i = 0; i < len_; ++i) if (get(i)) s[static_cast<std::size_t>(i)] = '1';
        return s;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    static std::size_t words_for(int len) { return static_cast<std::size_t>((len + 63) / 64); }

    int len_;
    std::vector<std::uint64_t> w_;
};

class BinaryMatrix {
public:
    BinaryMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64),
          w_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(wpr_), 0) {
        if (rows < 1 || cols < 1) throw UsageError("BinaryMatrix: rows and cols must be >= 1");
    }

    static BinaryMatrix identity(int n) {
        BinaryMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static BinaryMatrix from_strings(const std::vector<std::string>& rows) {
        if (rows.empty()) throw UsageError("BinaryMatrix::from_strings: no rows");
        BinaryMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
        for (int r = 0; r < m.rows_; ++r) {
            if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != m.cols_)
                throw UsageError("BinaryMatrix::from_strings: ragged rows");
            for (int c = 0; c < m.cols_; ++c) {
                char ch = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                if (ch == '1') m.set(r, c, true);
                else if (ch != '0') throw UsageError("BinaryMatrix::from_strings: bad character");
            }
        }
        return m;
    }

    static BinaryMatrix from_rows(const std::vector<BinaryVector>& rows) {
        if (rows.empty()) throw UsageError("BinaryMatrix::from_rows: no rows");
        BinaryMatrix m(static_cast<int>(rows.size()), rows[0].size());
        for (int r = 0; r < m.rows_; ++r) m.set_row(r, rows[static_cast<std::size_t>(r)]);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (w_[idx(r) + static_cast<std::size_t>(c >> 6)] >> (c & 63)) & 1u;
    }

    void set(int r, int c, bool b) {
        std::uint64_t m = std::uint64_t(1) << (c & 63);
        std::size_t i = idx(r) + static_cast<std::size_t>(c >> 6);
        if (b) w_[i] |= m; else w_[i] &= ~m;
    }

    BinaryVector row(int r) const {
        BinaryVector v(cols_);
        for (int c = 0; c < cols_; ++c) v.set(c, get(r, c));
        return v;
    }

    void set_row(int r, const BinaryVector& v) {
        if (v.size() != cols_) throw UsageError("BinaryMatrix::set_row: length mismatch");
        for (int c = 0; c < cols_; ++c) set(r, c, v.get(c));
    }

    BinaryVector column(int c) const {
        BinaryVector v(rows_);
        for (int r = 0; r < rows_; ++r) v.set(r, get(r, c));
        return v;
    }

    // M * x^T, x of length cols; result of length rows.
    BinaryVector mul_vec(const BinaryVector& x) const {
        if (x.size() != cols_) throw UsageError("BinaryMatrix::mul_vec: dimension mismatch");
        BinaryVector out(rows_);
        for (int r = 0; r < rows_; ++r) {
            std::uint64_t acc = 0;
            const std::uint64_t* rw = &w_[idx(r)];
            const auto& xw = x.words();
            for (int i = 0; i < wpr_; ++i) acc ^= (rw[static_cast<std::size_t>(i)] & xw[static_cast<std::size_t>(i)]);
            out.set(r, std::popcount(acc) & 1);
        }
        return out;
    }

    BinaryMatrix transposed() const {
        BinaryMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }

    bool operator==(const BinaryMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
    }
    bool operator!=(const BinaryMatrix& o) const { return !(*this == o); }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < wpr_; ++i)
            std::swap(w_[idx(a) + static_cast<std::size_t>(i)], w_[idx(b) + static_cast<std::size_t>(i)]);
    }

    // row[dst] ^= row[src]
    void xor_row(int dst, int src) {
        for (int i = 0; i < wpr_; ++i)
            w_[idx(dst) + static_cast<std::size_t>(i)] ^= w_[idx(src) + static_cast<std::size_t>(i)];
    }

private:
    std::size_t idx(int r) const { return static_cast<std::size_t>(r) * static_cast<std::size_t>(wpr_); }

    int rows_, cols_, wpr_;
    std::vector<std::uint64_t> w_;
};

struct RrefResult {
    BinaryMatrix R;
    std::vector<int> pivots; // 1-based column indices, strictly increasing
};

inline RrefResult rref(const BinaryMatrix& M) {
    BinaryMatrix R = M;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < R.cols() && r < R.rows(); ++c) {
        int p = -1;
        for (int i = r; i < R.rows(); ++i)
            if (R.get(i, c)) { p = i; break; }
        if (p < 0) continue;
        R.swap_rows(r, p);
        for (int i = 0; i < R.rows(); ++i)
            if (i != r && R.get(i, c)) R.xor_row(i, r);
        pivots.push_back(c + 1);
        ++r;
    }
    return {std::move(R), std::move(pivots)};
}

inline int rank(const BinaryMatrix& M) {
    return static_cast<int>(rref(M).pivots.size());
}

// Basis of {x : M x^T = 0}; size = cols - rank. Deterministic: one vector per
// non-pivot column, in ascending column order.
inline std::vector<BinaryVector> nullspace_basis(const BinaryMatrix& M) {
    RrefResult rr = rref(M);
    std::vector<bool> is_pivot(static_cast<std::size_t>(M.cols()), false);
    for (int p : rr.pivots) is_pivot[static_cast<std::size_t>(p - 1)] = true;
    std::vector<BinaryVector> basis;
    for (int j = 0; j < M.cols(); ++j) {
        if (is_pivot[static_cast<std::size_t>(j)]) continue;
        BinaryVector x(M.cols());
        x.set(j, true);
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            if (rr.R.get(static_cast<int>(i), j)) x.set(rr.pivots[i] - 1, true);
        basis.push_back(std::move(x));
    }
    return basis;
}

// One solution x of M x^T = b, or nullopt when inconsistent.
inline std::optional<BinaryVector> solve(const BinaryMatrix& M, const BinaryVector& b) {
    if (b.size() != M.rows()) throw UsageError("solve: b.len must equal M.rows");
    BinaryMatrix aug(M.rows(), M.cols() + 1);
    for (int r = 0; r < M.rows(); ++r) {
        for (int c = 0; c < M.cols(); ++c) aug.set(r, c, M.get(r, c));
        aug.set(r, M.cols(), b.get(r));
    }
    RrefResult rr = rref(aug);
    for (int p : rr.pivots)
        if (p == M.cols() + 1) return std::nullopt;
    BinaryVector x(M.cols());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
        if (rr.R.get(static_cast<int>(i), M.cols())) x.set(rr.pivots[i] - 1, true);
    return x;
}

// Visits all 2^|basis| span elements exactly once, all-zero vector first
// (Gray-code order: one basis XOR per step). The basis must be linearly
// independent; this is validated up front because silent duplicates would
// corrupt every downstream count.
inline void for_each_in_span(const std::vector<BinaryVector>& basis, std::uint64_t cap,
                             const std::function<void(const BinaryVector&)>& fn) {
    const int k = static_cast<int>(basis.size());
    int len = k > 0 ? basis[0].size() : 0;
    for (const auto& v : basis)
        if (v.size() != len) throw UsageError("enumerate_span: basis vectors differ in length");
    if (k >= 63 || (k > 0 && (std::uint64_t(1) << k) > cap))
        throw CapError("span too large: 2^" + std::to_string(k) + " exceeds cap " + std::to_string(cap));
    if (k > 0 && rank(BinaryMatrix::from_rows(basis)) != k)
        throw UsageError("enumerate_span: basis is linearly dependent");
    if (k == 0) {
        // Span of the empty basis is exactly the zero vector; its length is
        // unknown from the input, so report the zero vector of length 0.
        fn(BinaryVector(0));
        return;
    }
    BinaryVector cur(len);
    fn(cur);
    const std::uint64_t total = std::uint64_t(1) << k;
    for (std::uint64_t i = 1; i < total; ++i) {
        cur ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        fn(cur);
    }
}

// Materialized convenience wrapper (small spans / tests).
inline std::vector<BinaryVector> enumerate_span(const std::vector<BinaryVector>& basis, std::uint64_t cap) {
    std::vector<BinaryVector> out;
    for_each_in_span(basis, cap, [&](const BinaryVector& v) { out.push_back(v); });
    return out;
}

} // namespace srrlab
