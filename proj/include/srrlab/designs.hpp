#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "srrlab/caps.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/rational.hpp"

// t-design verification by direct counting (desk scale: C(15,2) = 105
// pairs — no probabilistic shortcuts), design reduction (puncturing all
// blocks through a fixed point set), and the double-counting identity that
// connects replication, block count, and block size.

namespace srrlab {

struct BlockCollection {
    int v = 0;                             // points are 1..v
    std::vector<std::vector<int>> blocks;  // each block: sorted subset of [v]
};

struct DesignReport {
    int t = 0;
    int v = 0;
    bool is_design = false;
    std::optional<int> block_size;                  // uniform size, when uniform
    std::optional<std::pair<int, int>> offending_sizes; // two distinct sizes, when not
    std::optional<BigInt> lambda;                   // common t-subset coverage, when uniform
    std::optional<BigInt> replication;              // common per-point count, when uniform
    bool repeated_blocks = false;                   // multiset semantics: repeats allowed, flagged
};

namespace detail {

// Visits all t-subsets of {1..v} in lexicographic order.
template <typename Fn>
inline void for_each_subset(int v, int t, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        fn(idx);
        int i = t - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == v - (t - 1 - i)) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < t; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline BigInt binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    BigInt num = 1;
    for (int i = 0; i < r; ++i) {
        num *= (n - i);
        num /= (i + 1);
    }
    return num;
}

} // namespace detail

// Exact verdict: every t-subset of the point set must lie in the same number
// lambda >= 1 of blocks, and block sizes must be uniform. Per-point counts
// (replication) are reported whenever they are uniform, independent of the
// verdict at level t.
inline DesignReport check_t_design(const BlockCollection& bc, int t, std::uint64_t cap = Caps{}.dual_enum) {
    if (t < 1) throw UsageError("check_t_design: t must be >= 1");
    if (bc.v < 1) throw UsageError("check_t_design: ground set must be nonempty");
    for (const auto& b : bc.blocks) {
        if (b.empty()) throw UsageError("check_t_design: blocks must be nonempty");
        for (int p : b)
            if (p < 1 || p > bc.v) throw UsageError("check_t_design: block point out of range");
    }
    DesignReport rep;
    rep.t = t;
    rep.v = bc.v;
    if (bc.blocks.empty()) return rep; // no blocks: not a design, nothing uniform

    // Uniform block size?
    std::size_t size0 = bc.blocks[0].size();
    bool uniform = true;
    for (const auto& b : bc.blocks) {
        if (b.size() != size0) {
            uniform = false;
            rep.offending_sizes = {static_cast<int>(size0), static_cast<int>(b.size())};
            break;
        }
    }
    if (uniform) rep.block_size = static_cast<int>(size0);

    // Repeated blocks (multiset semantics): flagged, not rejected.
    {
        std::vector<std::vector<int>> sorted_blocks = bc.blocks;
        for (auto& b : sorted_blocks) std::sort(b.begin(), b.end());
        std::sort(sorted_blocks.begin(), sorted_blocks.end());
        rep.repeated_blocks = std::adjacent_find(sorted_blocks.begin(), sorted_blocks.end()) != sorted_blocks.end();
    }

    if (t > bc.v) throw UsageError("check_t_design: t exceeds the number of points");
    if (detail::binomial(bc.v, t) > BigInt(cap))
        throw CapError("check_t_design: C(" + std::to_string(bc.v) + "," + std::to_string(t) +
                       ") t-subsets exceed cap " + std::to_string(cap));

    // Block incidence as bitmasks over points (v <= 4096 by .gm bounds; use
    // vector<bool>-free words for the subset test).
    std::vector<std::vector<std::uint64_t>> masks;
    int words = (bc.v + 63) / 64;
    for (const auto& b : bc.blocks) {
        std::vector<std::uint64_t> m(static_cast<std::size_t>(words), 0);
        for (int p : b) m[static_cast<std::size_t>((p - 1) >> 6)] |= std::uint64_t(1) << ((p - 1) & 63);
        masks.push_back(std::move(m));
    }

    // Per-point counts (t = 1 coverage) for the replication report.
    std::vector<BigInt> point_count(static_cast<std::size_t>(bc.v), 0);
    for (const auto& b : bc.blocks)
        for (int p : b) point_count[static_cast<std::size_t>(p - 1)] += 1;
    bool repl_uniform = true;
    for (int p = 1; p < bc.v; ++p)
        if (point_count[static_cast<std::size_t>(p)] != point_count[0]) { repl_uniform = false; break; }
    if (repl_uniform) rep.replication = point_count[0];

    // Coverage of every t-subset.
    std::optional<BigInt> lambda;
    bool balanced = true;
    detail::for_each_subset(bc.v, t, [&](const std::vector<int>& sub) {
        if (!balanced) return;
        std::vector<std::uint64_t> sm(static_cast<std::size_t>(words), 0);
        for (int p : sub) sm[static_cast<std::size_t>((p - 1) >> 6)] |= std::uint64_t(1) << ((p - 1) & 63);
        BigInt cnt = 0;
        for (const auto& m : masks) {
            bool inside = true;
            for (int w = 0; w < words; ++w)
                if ((m[static_cast<std::size_t>(w)] & sm[static_cast<std::size_t>(w)]) != sm[static_cast<std::size_t>(w)]) { inside = false; break; }
            if (inside) cnt += 1;
        }
        if (!lambda) lambda = cnt;
        else if (*lambda != cnt) balanced = false;
    });
    if (balanced && lambda && *lambda >= 1) rep.lambda = lambda;
    rep.is_design = uniform && balanced && lambda.has_value() && *lambda >= 1;
    return rep;
}

// Design reduction: keep the blocks containing Z, remove Z from them, and
// relabel the remaining points 1..v-|Z| order-preservingly (so the result is
// again a BlockCollection over an initial segment). A t-design reduces to a
// (t - |Z|)-design.
inline BlockCollection reduce_design(const BlockCollection& bc, const std::vector<int>& Z) {
    std::set<int> zset(Z.begin(), Z.end());
    for (int z : zset)
        if (z < 1 || z > bc.v) throw UsageError("reduce_design: point out of range");
    if (zset.empty()) return bc;
    // relabel map for [v] \ Z
    std::map<int, int> relabel;
    int next = 1;
    for (int p = 1; p <= bc.v; ++p)
        if (!zset.count(p)) relabel[p] = next++;
    BlockCollection out;
    out.v = bc.v - static_cast<int>(zset.size());
    for (const auto& b : bc.blocks) {
        bool contains_all = true;
        for (int z : zset)
            if (std::find(b.begin(), b.end(), z) == b.end()) { contains_all = false; break; }
        if (!contains_all) continue;
        if (b.size() <= zset.size())
            throw UsageError("reduce_design: |Z| must be smaller than the block size");
        std::vector<int> nb;
        for (int p : b)
            if (!zset.count(p)) nb.push_back(relabel[p]);
        std::sort(nb.begin(), nb.end());
        out.blocks.push_back(std::move(nb));
    }
    return out;
}

// (v - 1) * d_c == gamma * (d_dual - 1): the double-counting identity behind
// the design-route rate. All inputs must be positive.
inline bool counting_identity(long v_minus_1, long d_c, long gamma, long d_dual) {
    if (v_minus_1 <= 0 || d_c <= 0 || gamma <= 0 || d_dual <= 0)
        throw UsageError("counting_identity: all inputs must be positive");
    return BigInt(v_minus_1) * d_c == BigInt(gamma) * (d_dual - 1);
}

} // namespace srrlab
