#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "srrlab/caps.hpp"
#include "srrlab/codes.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/gf2.hpp"

// Recovery sets: a set R of server indices recovers object l when the
// corresponding generator columns sum to e_l. Only inclusion-minimal sets
// matter for rate analysis (any allocation to a non-minimal set is dominated),
// so that is what the enumerator returns.

namespace srrlab {

struct RecoverySet {
    int object;               // 1-based
    std::vector<int> servers; // 1-based, sorted
};

namespace detail {

// All incidence vectors of subsets whose columns sum to e_l form a coset:
// one particular solution plus the span of the dual basis. Enumerates that
// coset (2^(n-k) vectors) instead of all 2^n subsets.
inline std::vector<BinaryVector> recovery_coset(const LinearCode& c, int object, std::uint64_t cap) {
    if (object < 1 || object > c.k())
        throw UsageError("object index " + std::to_string(object) + " out of range [1," + std::to_string(c.k()) + "]");
    int dim = c.n() - c.k();
    if (dim >= 63 || (std::uint64_t(1) << dim) > cap)
        throw CapError("recovery coset too large: 2^" + std::to_string(dim) +
                       " exceeds cap " + std::to_string(cap));
    BinaryVector e(c.k());
    e.set(object - 1, true);
    auto x0 = solve(c.generator(), e);
    internal_check(x0.has_value(), "e_l not in the column space of a full-rank generator");
    std::vector<BinaryVector> coset;
    coset.reserve(std::size_t(1) << dim);
    if (dim == 0) {
        coset.push_back(*x0);
        return coset;
    }
    BinaryVector cur = *x0;
    coset.push_back(cur);
    const std::uint64_t total = std::uint64_t(1) << dim;
    const auto& basis = c.dual_basis();
    for (std::uint64_t i = 1; i < total; ++i) {
        cur ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        coset.push_back(cur);
    }
    return coset;
}

inline bool support_subset(const BinaryVector& a, const BinaryVector& b) {
    // a's support contained in b's support
    return b.contains(a);
}

} // namespace detail

// Exactly the inclusion-minimal supports among {x : G x^T = e_l}, sorted by
// size then lexicographically (part of the output contract: reports must be
// deterministic).
inline std::vector<std::vector<int>> minimal_recovery_sets(const LinearCode& c, int object,
                                                           std::uint64_t cap = Caps{}.dual_enum) {
    std::vector<BinaryVector> coset = detail::recovery_coset(c, object, cap);
    // Sort by weight: a set can only be dominated by one of strictly smaller
    // weight, so the filter below never needs to look ahead. (The collection
    // of inclusion-minimal elements is unique, so intra-weight order is
    // irrelevant; the deterministic output order is imposed at the end.)
    std::sort(coset.begin(), coset.end(), [](const BinaryVector& a, const BinaryVector& b) {
        return a.weight() < b.weight();
    });
    std::vector<BinaryVector> minimal;
    for (const auto& v : coset) {
        if (v.is_zero()) continue; // cannot happen (e_l != 0) but harmless
        bool dominated = false;
        for (const auto& m : minimal) {
            if (detail::support_subset(m, v)) { dominated = true; break; }
        }
        if (!dominated) minimal.push_back(v);
    }
    std::vector<std::vector<int>> out;
    out.reserve(minimal.size());
    for (const auto& v : minimal) out.push_back(v.support());
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// (a, all minimal recovery sets of the minimum size a).
inline std::pair<int, std::vector<std::vector<int>>> smallest_recovery_sets(const LinearCode& c, int object,
                                                                            std::uint64_t cap = Caps{}.dual_enum) {
    std::vector<std::vector<int>> all = minimal_recovery_sets(c, object, cap);
    internal_check(!all.empty(), "every object of a full-rank generator has a recovery set");
    std::size_t a = all[0].size();
    std::vector<std::vector<int>> sets;
    for (const auto& s : all) {
        if (s.size() > a) break;
        sets.push_back(s);
    }
    return {static_cast<int>(a), std::move(sets)};
}

struct RecoveryCheck {
    bool ok = false;
    std::vector<int> witness; // subset of R whose columns sum to e_l (when ok)
};

// Does span{columns of R} contain e_l? The witness is a subset of R whose
// columns sum to e_l exactly.
inline RecoveryCheck is_recovery_set(const LinearCode& c, int object, const std::vector<int>& R) {
    if (object < 1 || object > c.k()) throw UsageError("object index out of range");
    for (int j : R)
        if (j < 1 || j > c.n()) throw UsageError("server index " + std::to_string(j) + " out of range");
    if (R.empty()) return {};
    BinaryMatrix sub(c.k(), static_cast<int>(R.size()));
    for (int t = 0; t < static_cast<int>(R.size()); ++t)
        for (int row = 0; row < c.k(); ++row)
            sub.set(row, t, c.generator().get(row, R[static_cast<std::size_t>(t)] - 1));
    BinaryVector e(c.k());
    e.set(object - 1, true);
    auto x = solve(sub, e);
    if (!x) return {};
    RecoveryCheck rc;
    rc.ok = true;
    for (int t = 0; t < static_cast<int>(R.size()); ++t)
        if (x->get(t)) rc.witness.push_back(R[static_cast<std::size_t>(t)]);
    std::sort(rc.witness.begin(), rc.witness.end());
    return rc;
}

// R is a minimal recovery set iff its columns sum to e_l and are linearly
// independent (a dependency inside R would yield a smaller recovery subset).
inline bool is_minimal_recovery_set(const LinearCode& c, int object, const std::vector<int>& R) {
    if (R.empty()) return false;
    BinaryVector chi = BinaryVector::from_support(c.n(), R);
    BinaryVector e(c.k());
    e.set(object - 1, true);
    if (c.generator().mul_vec(chi) != e) return false;
    BinaryMatrix sub(c.k(), static_cast<int>(R.size()));
    for (int t = 0; t < static_cast<int>(R.size()); ++t)
        for (int row = 0; row < c.k(); ++row)
            sub.set(row, t, c.generator().get(row, R[static_cast<std::size_t>(t)] - 1));
    return rank(sub) == static_cast<int>(R.size());
}

// For two distinct minimal recovery sets of the same object, the symmetric
// difference is the support of a nonzero dual codeword, hence has weight at
// least the dual distance. Returns its incidence vector after asserting both
// facts.
inline BinaryVector symmetric_difference_check(const LinearCode& c, int object,
                                               const std::vector<int>& R1, const std::vector<int>& R2,
                                               std::uint64_t cap = Caps{}.dual_enum) {
    if (R1 == R2) throw UsageError("symmetric_difference_check: the two sets must differ");
    if (!is_minimal_recovery_set(c, object, R1))
        throw UsageError("symmetric_difference_check: first set is not a minimal recovery set");
    if (!is_minimal_recovery_set(c, object, R2))
        throw UsageError("symmetric_difference_check: second set is not a minimal recovery set");
    BinaryVector chi = BinaryVector::from_support(c.n(), R1) ^ BinaryVector::from_support(c.n(), R2);
    internal_check(!chi.is_zero(), "distinct sets have nonzero symmetric difference");
    internal_check(c.is_dual_codeword(chi), "symmetric difference of recovery sets must be a dual codeword");
    internal_check(chi.weight() >= c.dual_distance(cap),
                   "dual codeword weight below the dual distance");
    return chi;
}

} // namespace srrlab
