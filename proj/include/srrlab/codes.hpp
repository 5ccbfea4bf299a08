#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "srrlab/caps.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/gf2.hpp"
#include "srrlab/rational.hpp"

// The linear-code model: a concrete generator matrix plus derived data, and
// constructors for the standard families. Analyses bind to the concrete
// matrix, never to the equivalence class — permuting columns changes which
// server stores what, and therefore changes the service rates. Moving to a
// systematic form is always explicit and opt-in (systematic_form).

namespace srrlab {

struct WeightEnumerator {
    std::vector<BigInt> A; // A[w] = number of codewords of weight w, w = 0..n

    int min_positive_weight() const {
        for (std::size_t w = 1; w < A.size(); ++w)
            if (A[w] > 0) return static_cast<int>(w);
        throw InternalError("weight enumerator of a zero-dimensional code has no positive weight");
    }
};

namespace detail {

inline std::vector<std::vector<BigInt>> binomial_table(int n) {
    std::vector<std::vector<BigInt>> C(static_cast<std::size_t>(n + 1),
                                       std::vector<BigInt>(static_cast<std::size_t>(n + 1), 0));
    for (int i = 0; i <= n; ++i) {
        C[static_cast<std::size_t>(i)][0] = 1;
        for (int j = 1; j <= i; ++j)
            C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                C[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                C[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
    return C;
}

// MacWilliams transform: enumerator of the dual-of-`B` side. B is the
// enumerator of a dimension-`dim` code of length n; the result is the
// enumerator of its dual (dimension n - dim):
//   A_j = 2^{-dim} * sum_i B_i * K_j(i),  K_j(i) = sum_s (-1)^s C(i,s) C(n-i,j-s)
inline WeightEnumerator macwilliams(const WeightEnumerator& B, int n, int dim) {
    auto C = binomial_table(n);
    auto binom = [&](int a, int b) -> BigInt {
        if (b < 0 || b > a || a < 0) return 0;
        return C[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    };
    BigInt denom = BigInt(1) << dim;
    WeightEnumerator out;
    out.A.assign(static_cast<std::size_t>(n + 1), 0);
    for (int j = 0; j <= n; ++j) {
        BigInt acc = 0;
        for (int i = 0; i <= n; ++i) {
            if (B.A[static_cast<std::size_t>(i)] == 0) continue;
            BigInt K = 0;
            for (int s = 0; s <= j; ++s) {
                BigInt term = binom(i, s) * binom(n - i, j - s);
                if (s & 1) K -= term; else K += term;
            }
            acc += B.A[static_cast<std::size_t>(i)] * K;
        }
        internal_check(acc % denom == 0, "MacWilliams transform produced a non-integral count");
        internal_check(acc >= 0, "MacWilliams transform produced a negative count");
        out.A[static_cast<std::size_t>(j)] = acc / denom;
    }
    return out;
}

// Enumerator by direct span enumeration of `basis` (dimension = |basis|).
inline WeightEnumerator direct_enumerator(const std::vector<BinaryVector>& basis, int n, std::uint64_t cap) {
    WeightEnumerator we;
    we.A.assign(static_cast<std::size_t>(n + 1), 0);
    if (basis.empty()) {
        we.A[0] = 1;
        return we;
    }
    for_each_in_span(basis, cap, [&](const BinaryVector& v) {
        we.A[static_cast<std::size_t>(v.weight())] += 1;
    });
    return we;
}

} // namespace detail

class LinearCode {
public:
    // Rejects rank-deficient input, naming the first dependent row: the
    // storage model assigns one object per generator row, so redundant rows
    // are a modelling error, not something to silently fix.
    static LinearCode from_generator(const BinaryMatrix& M) {
        std::vector<std::pair<int, BinaryVector>> reduced; // (pivot bit, row)
        for (int r = 0; r < M.rows(); ++r) {
            BinaryVector cur = M.row(r);
            for (const auto& [p, v] : reduced)
                if (cur.get(p)) cur ^= v;
            if (cur.is_zero())
                throw UsageError("generator not full rank: row " + std::to_string(r + 1) +
                                 " depends on the rows above it");
            int pivot = 0;
            while (!cur.get(pivot)) ++pivot;
            reduced.emplace_back(pivot, std::move(cur));
        }
        return LinearCode(M);
    }

    const BinaryMatrix& generator() const { return G_; }
    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<BinaryVector>& dual_basis() const { return dual_basis_; }

    // object (1-based row) -> 1-based column j with column_j = e_object;
    // smallest such column. Objects without a unit column are absent.
    const std::map<int, int>& systematic_map() const { return systematic_map_; }

    std::optional<int> systematic_column(int object) const {
        auto it = systematic_map_.find(object);
        if (it == systematic_map_.end()) return std::nullopt;
        return it->second;
    }

    // 1-based column accessor.
    BinaryVector column(int j) const {
        if (j < 1 || j > n_) throw UsageError("column index out of range");
        return G_.column(j - 1);
    }

    bool is_dual_codeword(const BinaryVector& v) const {
        return v.size() == n_ && G_.mul_vec(v).is_zero();
    }

    LinearCode dual() const {
        if (k_ == n_) throw UsageError("dual is trivial: code has dimension n");
        return from_generator(BinaryMatrix::from_rows(dual_basis_));
    }

    // Exact weight distribution, computed on the smaller of the code / dual
    // sides; the MacWilliams transform converts when the dual side is smaller.
    const WeightEnumerator& weight_enumerator(std::uint64_t cap = Caps{}.dual_enum) const {
        std::lock_guard<std::mutex> lock(cache_->m);
        if (!cache_->we) {
            int small = std::min(k_, n_ - k_);
            if ((std::uint64_t(1) << small) > cap)
                throw CapError("weight enumerator: 2^" + std::to_string(small) +
                               " enumeration exceeds cap " + std::to_string(cap));
            if (n_ - k_ < k_) {
                WeightEnumerator B = detail::direct_enumerator(dual_basis_, n_, cap);
                cache_->we = detail::macwilliams(B, n_, n_ - k_);
            } else {
                std::vector<BinaryVector> rows;
                for (int r = 0; r < k_; ++r) rows.push_back(G_.row(r));
                cache_->we = detail::direct_enumerator(rows, n_, cap);
            }
            internal_check(cache_->we->A[0] == 1, "weight enumerator must have A_0 = 1");
            BigInt total = 0;
            for (const auto& a : cache_->we->A) total += a;
            internal_check(total == BigInt(1) << k_, "weight enumerator counts must sum to 2^k");
        }
        return *cache_->we;
    }

    const WeightEnumerator& dual_weight_enumerator(std::uint64_t cap = Caps{}.dual_enum) const {
        if (k_ == n_) throw UsageError("dual is trivial: code has dimension n");
        std::lock_guard<std::mutex> lock(cache_->m);
        if (!cache_->dwe) {
            int small = std::min(k_, n_ - k_);
            if ((std::uint64_t(1) << small) > cap)
                throw CapError("dual weight enumerator: 2^" + std::to_string(small) +
                               " enumeration exceeds cap " + std::to_string(cap));
            if (n_ - k_ <= k_) {
                cache_->dwe = detail::direct_enumerator(dual_basis_, n_, cap);
            } else {
                std::vector<BinaryVector> rows;
                for (int r = 0; r < k_; ++r) rows.push_back(G_.row(r));
                WeightEnumerator A = detail::direct_enumerator(rows, n_, cap);
                cache_->dwe = detail::macwilliams(A, n_, k_);
            }
        }
        return *cache_->dwe;
    }

    int min_distance(std::uint64_t cap = Caps{}.dual_enum) const {
        return weight_enumerator(cap).min_positive_weight();
    }

    // Minimum weight over nonzero dual codewords; requires k < n.
    int dual_distance(std::uint64_t cap = Caps{}.dual_enum) const {
        return dual_weight_enumerator(cap).min_positive_weight();
    }

    // All codeword supports of weight exactly w (the zero word is excluded,
    // so w = 0 yields nothing), optionally only those containing the 1-based
    // coordinate `restrict_to`. Sorted lexicographically.
    std::vector<std::vector<int>> min_weight_codewords(int w, std::optional<int> restrict_to = std::nullopt,
                                                       std::uint64_t cap = Caps{}.dual_enum) const {
        if (restrict_to && (*restrict_to < 1 || *restrict_to > n_))
            throw UsageError("restrict_to coordinate out of range");
        std::vector<std::vector<int>> out;
        if (w <= 0) return out;
        if (k_ >= 63 || (std::uint64_t(1) << k_) > cap)
            throw CapError("codeword enumeration: 2^" + std::to_string(k_) +
                           " exceeds cap " + std::to_string(cap));
        std::vector<BinaryVector> rows;
        for (int r = 0; r < k_; ++r) rows.push_back(G_.row(r));
        for_each_in_span(rows, cap, [&](const BinaryVector& v) {
            if (v.weight() != w) return;
            if (restrict_to && !v.get(*restrict_to - 1)) return;
            out.push_back(v.support());
        });
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    explicit LinearCode(const BinaryMatrix& M)
        : G_(M), n_(M.cols()), k_(M.rows()), dual_basis_(nullspace_basis(M)),
          cache_(std::make_shared<Cache>()) {
        for (int j = 0; j < n_; ++j) {
            BinaryVector col = G_.column(j);
            if (col.weight() != 1) continue;
            int obj = col.support()[0];
            if (systematic_map_.find(obj) == systematic_map_.end())
                systematic_map_[obj] = j + 1;
        }
    }

    struct Cache {
        std::mutex m;
        std::optional<WeightEnumerator> we;
        std::optional<WeightEnumerator> dwe;
    };

    BinaryMatrix G_;
    int n_, k_;
    std::vector<BinaryVector> dual_basis_;
    std::map<int, int> systematic_map_;
    std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------
// Family constructors
// ---------------------------------------------------------------------------

// Evaluation-style simplex generator: column j (1-based) is the binary
// representation of j with row 1 holding the most significant bit, so
// column 1 = e_r. r x (2^r - 1).
inline BinaryMatrix simplex_eval_matrix(int r) {
    if (r < 2) throw UsageError("simplex: parameter must be >= 2");
    int n = (1 << r) - 1;
    BinaryMatrix M(r, n);
    for (int j = 1; j <= n; ++j)
        for (int row = 0; row < r; ++row)
            if ((j >> (r - 1 - row)) & 1) M.set(row, j - 1, true);
    return M;
}

enum class SimplexForm { evaluation, systematic };

struct SystematicForm {
    LinearCode code;
    // 1-based: new column t holds old column perm[t-1].
    std::vector<int> perm;
};

// Row-reduce, then move the pivot columns to the front (stable: pivots in
// ascending order, then the remaining columns in ascending order). The
// permutation is returned so the caller can map servers back; whether the
// permuted matrix is the one to analyze is the caller's decision — the
// service rates are a property of the concrete matrix.
inline SystematicForm systematic_form(const LinearCode& c) {
    RrefResult rr = rref(c.generator());
    internal_check(static_cast<int>(rr.pivots.size()) == c.k(), "full-rank generator lost rank in rref");
    std::vector<bool> is_pivot(static_cast<std::size_t>(c.n()) + 1, false);
    for (int p : rr.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<int> perm = rr.pivots;
    for (int j = 1; j <= c.n(); ++j)
        if (!is_pivot[static_cast<std::size_t>(j)]) perm.push_back(j);
    BinaryMatrix N(c.k(), c.n());
    for (int t = 0; t < c.n(); ++t) {
        int old = perm[static_cast<std::size_t>(t)] - 1;
        for (int row = 0; row < c.k(); ++row) N.set(row, t, rr.R.get(row, old));
    }
    return {LinearCode::from_generator(N), std::move(perm)};
}

inline LinearCode simplex(int r, SimplexForm form = SimplexForm::evaluation) {
    LinearCode ev = LinearCode::from_generator(simplex_eval_matrix(r));
    if (form == SimplexForm::evaluation) return ev;
    return systematic_form(ev).code;
}

// [2^r - 1, 2^r - 1 - r, 3] Hamming code in the same coordinates as the
// evaluation simplex (its dual): the generator is the RREF-canonical basis of
// the simplex generator's nullspace. Every object gets a systematic (unit)
// column at its pivot. Note a literal [I_k | P] layout cannot exist in these
// coordinates for r >= 4: the four evaluation columns 2^r-4 .. 2^r-1 sum to
// zero, so there is a codeword supported entirely on the trailing r
// coordinates and the leading k coordinates are not an information set.
// (For r = 3 the construction happens to come out exactly as [I_4 | P].)
inline LinearCode hamming(int r) {
    if (r < 2) throw UsageError("hamming: parameter must be >= 2");
    BinaryMatrix GS = simplex_eval_matrix(r);
    std::vector<BinaryVector> ns = nullspace_basis(GS);
    RrefResult rr = rref(BinaryMatrix::from_rows(ns));
    return LinearCode::from_generator(rr.R);
}

inline LinearCode repetition(int n) {
    if (n < 1) throw UsageError("repetition: length must be >= 1");
    BinaryMatrix M(1, n);
    for (int j = 0; j < n; ++j) M.set(0, j, true);
    return LinearCode::from_generator(M);
}

// Single parity check [n, n-1, 2]: rows e_i + e_n.
inline LinearCode spc(int n) {
    if (n < 2) throw UsageError("spc: length must be >= 2");
    BinaryMatrix M(n - 1, n);
    for (int i = 0; i < n - 1; ++i) {
        M.set(i, i, true);
        M.set(i, n - 1, true);
    }
    return LinearCode::from_generator(M);
}

// Monomial-evaluation generator of RM(r, m): one row per monomial of degree
// <= r (ordered by degree, then lexicographically by variable set); column
// j+1 evaluates at the point with binary representation j, x_1 = most
// significant bit.
inline LinearCode reed_muller(int r, int m) {
    if (m < 1 || r < 0 || r > m) throw UsageError("reed_muller: need 0 <= r <= m, m >= 1");
    int n = 1 << m;
    std::vector<std::vector<int>> monomials;
    for (int mask = 0; mask < (1 << m); ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) > r) continue;
        std::vector<int> vars;
        for (int i = 1; i <= m; ++i)
            if (mask & (1 << (i - 1))) vars.push_back(i);
        monomials.push_back(std::move(vars));
    }
    std::sort(monomials.begin(), monomials.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    BinaryMatrix M(static_cast<int>(monomials.size()), n);
    for (int row = 0; row < static_cast<int>(monomials.size()); ++row) {
        for (int p = 0; p < n; ++p) {
            bool val = true;
            for (int var : monomials[static_cast<std::size_t>(row)])
                val = val && ((p >> (m - var)) & 1);
            if (val) M.set(row, p, true);
        }
    }
    return LinearCode::from_generator(M);
}

// Uniformly random full-rank k x n generator, deterministic per seed.
// Scheme (fixed contract, documented in the README): std::mt19937_64 seeded
// with `seed`; rows drawn row-major as 64-bit words masked to n bits; the
// whole matrix is redrawn (engine state continues) until it has rank k.
inline LinearCode random_code(int n, int k, std::uint64_t seed) {
    if (k < 1 || n < 1 || k > n) throw UsageError("random_code: need 1 <= k <= n");
    std::mt19937_64 eng(seed);
    int wpr = (n + 63) / 64;
    std::uint64_t last_mask = (n % 64 == 0) ? ~std::uint64_t(0) : ((std::uint64_t(1) << (n % 64)) - 1);
    while (true) {
        BinaryMatrix M(k, n);
        for (int r = 0; r < k; ++r) {
            for (int w = 0; w < wpr; ++w) {
                std::uint64_t word = eng();
                if (w == wpr - 1) word &= last_mask;
                for (int b = 0; b < 64; ++b) {
                    int c = w * 64 + b;
                    if (c >= n) break;
                    if ((word >> b) & 1) M.set(r, c, true);
                }
            }
        }
        if (rank(M) == k) return LinearCode::from_generator(M);
    }
}

} // namespace srrlab
