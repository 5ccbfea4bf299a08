#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srrlab/caps.hpp"
#include "srrlab/codes.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/gf2.hpp"
#include "srrlab/rational.hpp"
#include "srrlab/recovery.hpp"

// Parity-check families orthogonal on a coordinate set O: every member
// contains O, pairwise intersections are exactly O. The maximum family size
// J_O drives both the decoding guarantee (majority over 1+J votes) and the
// lower rate bound 1+J (the members' differences I \ O are pairwise disjoint
// recovery sets). Maximizing J is a maximum-clique problem on the
// compatibility graph; solved exactly by branch and bound with a greedy
// colouring bound under a node budget.

namespace srrlab {

struct OrthogonalFamily {
    std::vector<int> O;                     // 1-based, sorted
    std::vector<std::vector<int>> members;  // each contains O; sorted (size, lex)
    int J = 0;                              // = members.size()
    bool exact = true;                      // false => lower bound only
};

enum class FamilySearch { exact, greedy };

// All dual-codeword supports I with O included in I (the zero word is never a
// support), sorted by size then lexicographically. An optional weight cap
// drops candidates heavier than the cap — downstream searches over a capped
// candidate list only yield lower bounds.
inline std::vector<std::vector<int>> parity_checks_through(const LinearCode& c, const std::vector<int>& O,
                                                           std::uint64_t cap = Caps{}.dual_enum,
                                                           std::optional<int> weight_cap = std::nullopt) {
    for (int j : O)
        if (j < 1 || j > c.n()) throw UsageError("coordinate " + std::to_string(j) + " out of range");
    int dim = c.n() - c.k();
    if (dim >= 63 || (std::uint64_t(1) << dim) > cap)
        throw CapError("dual span too large: 2^" + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
    BinaryVector maskO = BinaryVector::from_support(c.n(), O);
    std::vector<std::vector<int>> out;
    if (dim > 0) {
        for_each_in_span(c.dual_basis(), cap, [&](const BinaryVector& v) {
            if (v.is_zero()) return;
            if (!v.contains(maskO)) return;
            if (weight_cap && v.weight() > *weight_cap) return;
            out.push_back(v.support());
        });
    }
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

namespace detail {

class CliqueSearch {
public:
    CliqueSearch(const std::vector<std::vector<std::uint64_t>>& adj, int m, std::uint64_t budget)
        : adj_(adj), m_(m), words_((m + 63) / 64), budget_(budget) {}

    // Returns (best clique as vertex indices, search completed exactly).
    std::pair<std::vector<int>, bool> run(const std::vector<int>& seed) {
        best_ = seed;
        std::vector<std::uint64_t> P(static_cast<std::size_t>(words_), 0);
        for (int v = 0; v < m_; ++v) P[static_cast<std::size_t>(v >> 6)] |= std::uint64_t(1) << (v & 63);
        cur_.clear();
        aborted_ = false;
        expand(P);
        return {best_, !aborted_};
    }

private:
    void expand(std::vector<std::uint64_t> P) {
        if (aborted_) return;
        if (++nodes_ > budget_) { aborted_ = true; return; }
        // Greedy colouring of the vertices in P, in vertex order: the colour
        // count bounds the clique size inside P.
        std::vector<int> verts;
        for (int v = 0; v < m_; ++v)
            if (P[static_cast<std::size_t>(v >> 6)] >> (v & 63) & 1) verts.push_back(v);
        if (verts.empty()) return;
        std::vector<int> color(verts.size(), 0);
        std::vector<std::vector<std::uint64_t>> classes; // occupancy mask per colour class
        for (std::size_t i = 0; i < verts.size(); ++i) {
            int v = verts[i];
            std::size_t cl = 0;
            for (; cl < classes.size(); ++cl) {
                bool conflict = false;
                for (int w = 0; w < words_; ++w)
                    if (classes[cl][static_cast<std::size_t>(w)] & adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) { conflict = true; break; }
                if (!conflict) break;
            }
            if (cl == classes.size()) classes.emplace_back(static_cast<std::size_t>(words_), 0);
            classes[cl][static_cast<std::size_t>(v >> 6)] |= std::uint64_t(1) << (v & 63);
            color[i] = static_cast<int>(cl) + 1;
        }
        // Branch on vertices in descending colour (classic ordering): once
        // cur.size + colour <= best, the rest of P cannot beat the incumbent.
        std::vector<std::size_t> order(verts.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return color[a] < color[b]; });
        for (std::size_t t = order.size(); t-- > 0;) {
            if (aborted_) return;
            std::size_t i = order[t];
            int v = verts[i];
            if (static_cast<int>(cur_.size()) + color[i] <= static_cast<int>(best_.size())) return;
            cur_.push_back(v);
            if (cur_.size() > best_.size()) best_ = cur_;
            std::vector<std::uint64_t> P2(static_cast<std::size_t>(words_));
            bool nonempty = false;
            for (int w = 0; w < words_; ++w) {
                P2[static_cast<std::size_t>(w)] = P[static_cast<std::size_t>(w)] & adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
                nonempty = nonempty || P2[static_cast<std::size_t>(w)];
            }
            if (nonempty) expand(std::move(P2));
            cur_.pop_back();
            P[static_cast<std::size_t>(v >> 6)] &= ~(std::uint64_t(1) << (v & 63));
        }
    }

    const std::vector<std::vector<std::uint64_t>>& adj_;
    int m_, words_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::vector<int> cur_, best_;
};

} // namespace detail

// Maximum (or greedy-maximal) family of parity checks orthogonal on O.
// Candidates are proper supersets of O only: a member equal to O itself would
// contribute no recovery set (I \ O empty) and is not counted as a check
// orthogonal on O. Exact mode runs branch and bound; exceeding the node
// budget demotes the result to a lower bound (exact = false), as does a
// candidate weight cap or greedy mode.
inline OrthogonalFamily max_orthogonal_family(const LinearCode& c, const std::vector<int>& O,
                                              FamilySearch mode = FamilySearch::exact,
                                              Caps caps = {},
                                              std::optional<int> weight_cap = std::nullopt) {
    std::vector<int> Osorted = O;
    std::sort(Osorted.begin(), Osorted.end());
    std::vector<std::vector<int>> cands = parity_checks_through(c, Osorted, caps.dual_enum, weight_cap);
    cands.erase(std::remove(cands.begin(), cands.end(), Osorted), cands.end());

    OrthogonalFamily fam;
    fam.O = Osorted;
    fam.exact = !weight_cap.has_value();

    const int m = static_cast<int>(cands.size());
    std::vector<BinaryVector> inc;
    inc.reserve(cands.size());
    for (const auto& s : cands) inc.push_back(BinaryVector::from_support(c.n(), s));
    BinaryVector maskO = BinaryVector::from_support(c.n(), Osorted);

    auto compatible = [&](int u, int v) {
        // intersection of supports equals O exactly
        const auto& a = inc[static_cast<std::size_t>(u)].words();
        const auto& b = inc[static_cast<std::size_t>(v)].words();
        const auto& o = maskO.words();
        for (std::size_t w = 0; w < a.size(); ++w)
            if ((a[w] & b[w]) != o[w]) return false;
        return true;
    };

    std::vector<int> chosen;
    if (mode == FamilySearch::greedy) {
        for (int v = 0; v < m; ++v) {
            bool ok = true;
            for (int u : chosen)
                if (!compatible(u, v)) { ok = false; break; }
            if (ok) chosen.push_back(v);
        }
        fam.exact = false; // maximal, not necessarily maximum
    } else {
        std::vector<std::vector<std::uint64_t>> adj(
            static_cast<std::size_t>(m), std::vector<std::uint64_t>(static_cast<std::size_t>((m + 63) / 64), 0));
        for (int u = 0; u < m; ++u)
            for (int v = u + 1; v < m; ++v)
                if (compatible(u, v)) {
                    adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v >> 6)] |= std::uint64_t(1) << (v & 63);
                    adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u >> 6)] |= std::uint64_t(1) << (u & 63);
                }
        // Greedy incumbent first: gives the branch and bound a strong floor.
        std::vector<int> seed;
        for (int v = 0; v < m; ++v) {
            bool ok = true;
            for (int u : seed)
                if (!compatible(u, v)) { ok = false; break; }
            if (ok) seed.push_back(v);
        }
        detail::CliqueSearch search(adj, m, caps.clique_nodes);
        auto [best, completed] = search.run(seed);
        chosen = best;
        if (!completed) fam.exact = false;
    }

    for (int v : chosen) fam.members.push_back(cands[static_cast<std::size_t>(v)]);
    std::sort(fam.members.begin(), fam.members.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    fam.J = static_cast<int>(fam.members.size());
    return fam;
}

// Validates the three structural invariants of a family (used by tests and
// by code that builds families by hand).
inline void validate_orthogonal_family(const LinearCode& c, const OrthogonalFamily& fam) {
    BinaryVector maskO = BinaryVector::from_support(c.n(), fam.O);
    std::vector<BinaryVector> inc;
    for (const auto& I : fam.members) {
        BinaryVector v = BinaryVector::from_support(c.n(), I);
        internal_check(c.is_dual_codeword(v), "family member is not a dual-codeword support");
        internal_check(v.contains(maskO), "family member does not contain O");
        inc.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < inc.size(); ++i)
        for (std::size_t j = i + 1; j < inc.size(); ++j) {
            const auto& a = inc[i].words();
            const auto& b = inc[j].words();
            for (std::size_t w = 0; w < a.size(); ++w)
                internal_check((a[w] & b[w]) == maskO.words()[w],
                               "two family members intersect outside O");
        }
    internal_check(fam.J == static_cast<int>(fam.members.size()), "J must equal the member count");
}

// J <= (n - a) / max{a, d_dual - a} with a = |O|.
inline Rational j_upper_bound(const LinearCode& c, const std::vector<int>& O,
                              std::uint64_t cap = Caps{}.dual_enum) {
    if (O.empty()) throw UsageError("j_upper_bound: O must be nonempty");
    int a = static_cast<int>(O.size());
    int dd = c.dual_distance(cap);
    int denom = std::max(a, dd - a);
    internal_check(denom >= 1, "j_upper_bound denominator must be positive");
    return Rational(c.n() - a, denom);
}

// Best orthogonal family over all smallest recovery sets of the object: the
// rate lower bound 1+J holds for each choice of O, so the maximum over the
// (few) smallest sets is reported; ties keep the lexicographically first O.
inline std::pair<std::vector<int>, OrthogonalFamily> best_family_over_smallest(
    const LinearCode& c, int object, Caps caps = {}) {
    auto [a, sets] = smallest_recovery_sets(c, object, caps.dual_enum);
    (void)a;
    std::optional<std::pair<std::vector<int>, OrthogonalFamily>> best;
    for (const auto& O : sets) {
        OrthogonalFamily fam = max_orthogonal_family(c, O, FamilySearch::exact, caps);
        if (!best || fam.J > best->second.J) best = {O, std::move(fam)};
    }
    internal_check(best.has_value(), "object has at least one smallest recovery set");
    return *best;
}

// The 1 + J pairwise disjoint recovery sets built from the best family:
// O itself plus the differences I \ O.
inline std::vector<std::vector<int>> disjoint_recovery_sets(const LinearCode& c, int object, Caps caps = {}) {
    auto [O, fam] = best_family_over_smallest(c, object, caps);
    std::vector<std::vector<int>> out;
    out.push_back(O);
    BinaryVector maskO = BinaryVector::from_support(c.n(), O);
    for (const auto& I : fam.members) {
        std::vector<int> diff;
        for (int j : I)
            if (!maskO.get(j - 1)) diff.push_back(j);
        out.push_back(std::move(diff));
    }
    // Every returned set must be a verified recovery set, pairwise disjoint.
    BinaryVector seen(c.n());
    for (const auto& R : out) {
        internal_check(is_recovery_set(c, object, R).ok, "disjoint family member failed recovery validation");
        for (int j : R) {
            internal_check(!seen.get(j - 1), "disjoint recovery sets overlap");
            seen.set(j - 1, true);
        }
    }
    return out;
}

} // namespace srrlab
