#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "srrlab/caps.hpp"
#include "srrlab/checks.hpp"
#include "srrlab/codes.hpp"
#include "srrlab/designs.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/gf2.hpp"
#include "srrlab/recovery.hpp"

// One-step majority-logic decoding. A vote set for an object consists of a
// direct estimate (parity of the received word over the smallest recovery
// set O) plus one estimate per member I of an orthogonal family (parity over
// I \ O). The position sets are pairwise disjoint, so an error in one
// position corrupts at most one vote; with J checks, any floor(J/2) errors
// leave a strict majority of the 1+J votes correct.

namespace srrlab {

struct VoteSet {
    int object = 0;
    std::vector<int> direct;                  // the recovery set O, 1-based sorted
    std::vector<std::vector<int>> check_sums; // each I \ O, pairwise disjoint
};

namespace detail {

inline void validate_votes(const LinearCode& c, const VoteSet& v) {
    internal_check(is_recovery_set(c, v.object, v.direct).ok, "direct vote must recover the object");
    BinaryVector used = BinaryVector::from_support(c.n(), v.direct);
    for (const auto& cs : v.check_sums) {
        internal_check(is_recovery_set(c, v.object, cs).ok, "every check sum must recover the object");
        BinaryVector mask = BinaryVector::from_support(c.n(), cs);
        for (int pos : cs)
            internal_check(!used.get(pos - 1), "vote position sets must be pairwise disjoint");
        used ^= mask;
    }
}

} // namespace detail

// Votes from an explicitly given orthogonal family (validated against the
// code): direct = the family's base set, one check sum per member.
inline VoteSet build_votes(const LinearCode& c, int object, const OrthogonalFamily& fam) {
    validate_orthogonal_family(c, fam);
    VoteSet v;
    v.object = object;
    v.direct = fam.O;
    for (const auto& member : fam.members) {
        std::vector<int> cs;
        cs.reserve(member.size() - fam.O.size());
        std::set_difference(member.begin(), member.end(), fam.O.begin(), fam.O.end(),
                            std::back_inserter(cs));
        v.check_sums.push_back(std::move(cs));
    }
    detail::validate_votes(c, v);
    return v;
}

// Votes from the best orthogonal family over all smallest recovery sets:
// 1 + J estimates. Coordinates without a systematic column work the same
// way — the direct vote is just their smallest recovery set.
inline VoteSet build_votes(const LinearCode& c, int object, const Caps& caps = Caps{}) {
    auto [base, fam] = best_family_over_smallest(c, object, caps);
    (void)base;
    return build_votes(c, object, fam);
}

// Majority vote among the parities; a tie goes to 0.
inline int decode_symbol(const VoteSet& v, const BinaryVector& y) {
    auto parity_over = [&](const std::vector<int>& positions) {
        int p = 0;
        for (int pos : positions) {
            if (pos < 1 || pos > static_cast<int>(y.size()))
                throw UsageError("received word is shorter than a vote position");
            p ^= y.get(pos - 1) ? 1 : 0;
        }
        return p;
    };
    int ones = parity_over(v.direct);
    int total = 1 + static_cast<int>(v.check_sums.size());
    for (const auto& cs : v.check_sums) ones += parity_over(cs);
    return 2 * ones > total ? 1 : 0;
}

struct CapabilityReport {
    bool ok = false;
    std::optional<std::vector<int>> counterexample; // minimal-weight failing pattern
    std::uint64_t patterns_checked = 0;
};

namespace detail {

// A pattern defeats the decoder for some codeword iff it corrupts at least
// half of the votes: corrupting k of the v votes leaves v-k correct, and the
// all-zeros and all-ones information cases together succeed exactly when
// 2k < v (a tie already fails for the symbol value 1, since ties resolve
// to 0). Votes are corrupted independently because the sets are disjoint.
inline bool pattern_defeats(const VoteSet& v, const std::vector<int>& pattern) {
    auto overlap_parity = [&](const std::vector<int>& s) {
        std::size_t i = 0, j = 0;
        int p = 0;
        while (i < s.size() && j < pattern.size()) {
            if (s[i] == pattern[j]) { p ^= 1; ++i; ++j; }
            else if (s[i] < pattern[j]) ++i;
            else ++j;
        }
        return p;
    };
    int wrong = overlap_parity(v.direct);
    const int total = 1 + static_cast<int>(v.check_sums.size());
    for (const auto& cs : v.check_sums) wrong += overlap_parity(cs);
    return 2 * wrong >= total;
}

} // namespace detail

// Exhaustive check that decoding recovers the object's symbol for every
// codeword and every error pattern of weight <= t. By linearity the votes on
// codeword + error split into the true symbol plus the error's overlap
// parities, so only the patterns need enumerating (weight-ascending, lex
// within weight); the first failure is therefore a minimal-weight one.
inline CapabilityReport verify_capability_with(const VoteSet& v, int n, int t,
                                               std::uint64_t cap = Caps{}.dual_enum) {
    if (t < 0) throw UsageError("error weight must be nonnegative");
    const int tmax = std::min(t, n);
    BigInt total = 0;
    for (int w = 1; w <= tmax; ++w) total += detail::binomial(n, w);
    if (total > cap)
        throw CapError("too many error patterns: " + total.str() + " exceeds cap " + std::to_string(cap));

    CapabilityReport rep;
    rep.ok = true;
    for (int w = 1; w <= tmax && rep.ok; ++w) {
        detail::for_each_subset(n, w, [&](const std::vector<int>& pattern) {
            if (!rep.ok) return;
            ++rep.patterns_checked;
            if (detail::pattern_defeats(v, pattern)) {
                rep.ok = false;
                rep.counterexample = pattern;
            }
        });
    }
    return rep;
}

inline CapabilityReport verify_capability(const LinearCode& c, int object, int t,
                                          const Caps& caps = Caps{}) {
    VoteSet v = build_votes(c, object, caps);
    return verify_capability_with(v, c.n(), t, caps.dual_enum);
}

// Randomized spot check over `samples` patterns of weight uniform in 1..t
// with uniformly drawn supports; deterministic for a fixed seed. Stops at
// the first failing pattern.
inline CapabilityReport verify_capability_sampled(const VoteSet& v, int n, int t,
                                                  std::uint64_t samples, std::uint64_t seed) {
    if (t < 1) throw UsageError("sampled verification needs an error weight of at least 1");
    const int tmax = std::min(t, n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> weight_dist(1, tmax);
    std::uniform_int_distribution<int> pos_dist(1, n);
    CapabilityReport rep;
    rep.ok = true;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const int w = weight_dist(rng);
        std::vector<int> pattern;
        while (static_cast<int>(pattern.size()) < w) {
            int pos = pos_dist(rng);
            if (std::find(pattern.begin(), pattern.end(), pos) == pattern.end()) pattern.push_back(pos);
        }
        std::sort(pattern.begin(), pattern.end());
        ++rep.patterns_checked;
        if (detail::pattern_defeats(v, pattern)) {
            rep.ok = false;
            rep.counterexample = pattern;
            break;
        }
    }
    return rep;
}

// Convenience full-message decode: one vote set per coordinate.
inline std::vector<int> decode_message(const LinearCode& c, const BinaryVector& y,
                                       const Caps& caps = Caps{}) {
    if (static_cast<int>(y.size()) != c.n())
        throw UsageError("received word length must equal the code length");
    std::vector<int> message;
    message.reserve(static_cast<std::size_t>(c.k()));
    for (int obj = 1; obj <= c.k(); ++obj)
        message.push_back(decode_symbol(build_votes(c, obj, caps), y));
    return message;
}

} // namespace srrlab
