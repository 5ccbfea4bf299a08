#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srrlab/caps.hpp"
#include "srrlab/checks.hpp"
#include "srrlab/codes.hpp"
#include "srrlab/designs.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/lp.hpp"
#include "srrlab/rational.hpp"
#include "srrlab/recovery.hpp"

// Exact service-rate computations. The central quantity is the per-object
// axis intercept of the service rate region: the largest demand for one
// object, all others idle, that the servers can carry. It is computed as a
// fractional packing LP over the object's minimal recovery sets with unit
// capacity per server; the intercept equals the coordinate-wise maximum
// (a cited equality this library takes as given), and the bound triple
//   1 + J  <=  lambda  <=  1 + (n-a)/max{d_dual - a, a}  <=  1 + (n-a)/(d_dual - a)
// sandwiches it. The design route certifies the exact value whenever the
// punctured minimum-weight dual supports through the object's unit column
// form a 1-design.

namespace srrlab {

enum class SolStatus { optimal, infeasible };

// Exact LP optimum with both certificates. `primal` lists only the recovery
// sets carrying nonzero rate, in (size, lex) order; `dual` has one entry per
// server (1-based server i at dual[i-1]).
struct LPSolution {
    int object = 0;
    Rational value;
    std::vector<std::pair<std::vector<int>, Rational>> primal;
    std::vector<Rational> dual;
    SolStatus status = SolStatus::optimal;
};

// Largest rate for `object` alone: maximize sum x_R over the object's minimal
// recovery sets subject to per-server unit capacity, x >= 0. Always solvable
// (x = 0 is feasible; the total is bounded by n), so status is optimal.
inline LPSolution max_demand(const LinearCode& c, int object, const Caps& caps = Caps{}) {
    const auto sets = minimal_recovery_sets(c, object, caps.dual_enum);
    internal_check(!sets.empty(), "every object admits at least one recovery set");
    const int n = c.n();
    const std::size_t m = sets.size();

    LpProblem p;
    p.c.assign(m, Rational(1));
    p.A_ub.assign(static_cast<std::size_t>(n), std::vector<Rational>(m, Rational(0)));
    p.b_ub.assign(static_cast<std::size_t>(n), Rational(1));
    for (std::size_t v = 0; v < m; ++v)
        for (int s : sets[v]) p.A_ub[static_cast<std::size_t>(s - 1)][v] = 1;

    LpOutcome out = solve_lp(p);
    internal_check(out.status == LpStatus::optimal, "axis-intercept LP must reach an optimum");

    LPSolution sol;
    sol.object = object;
    sol.value = out.value;
    sol.status = SolStatus::optimal;
    for (std::size_t v = 0; v < m; ++v)
        if (out.x[v] != 0) sol.primal.emplace_back(sets[v], out.x[v]);
    sol.dual = out.y_ub;
    return sol;
}

// One positive-rate assignment of a recovery set to an object.
struct AllocationEntry {
    int object = 0;
    std::vector<int> servers;
    Rational rate;
};

// Farkas-style witness of infeasibility: y_demand (one per object, free sign)
// and y_server >= 0 satisfy, for every object i and every minimal recovery
// set R of i, y_demand[i] + sum_{l in R} y_server[l] >= 0, while
// sum_i y_demand[i] * demand[i] + sum_l y_server[l] < 0:
// no nonnegative allocation can meet the demand within unit capacities.
struct InfeasibilityCertificate {
    std::vector<Rational> y_demand;
    std::vector<Rational> y_server;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<AllocationEntry> allocation;
    std::optional<InfeasibilityCertificate> certificate;
};

// Can the servers carry `demand` (one rate per object) simultaneously?
// Splits each object's rate across its minimal recovery sets; a feasible
// split is returned (nonzero entries only), otherwise a certificate.
inline FeasibilityResult feasible(const LinearCode& c, const std::vector<Rational>& demand,
                                  const Caps& caps = Caps{}) {
    if (static_cast<int>(demand.size()) != c.k())
        throw UsageError("demand must list exactly one rate per object (expected " +
                         std::to_string(c.k()) + " entries, got " + std::to_string(demand.size()) + ")");
    for (const auto& d : demand)
        if (d < 0) throw UsageError("demand rates must be nonnegative");

    FeasibilityResult res;
    std::vector<int> active;
    for (int i = 1; i <= c.k(); ++i)
        if (demand[static_cast<std::size_t>(i - 1)] > 0) active.push_back(i);
    if (active.empty()) { // nothing requested: the empty allocation serves it
        res.feasible = true;
        return res;
    }

    std::vector<std::vector<std::vector<int>>> sets_of;
    sets_of.reserve(active.size());
    std::size_t nvars = 0;
    for (int obj : active) {
        sets_of.push_back(minimal_recovery_sets(c, obj, caps.dual_enum));
        internal_check(!sets_of.back().empty(), "every object admits at least one recovery set");
        nvars += sets_of.back().size();
    }

    const int n = c.n();
    LpProblem p;
    p.c.assign(nvars, Rational(0)); // pure feasibility: phase 1 decides
    p.A_eq.assign(active.size(), std::vector<Rational>(nvars, Rational(0)));
    p.b_eq.resize(active.size());
    p.A_ub.assign(static_cast<std::size_t>(n), std::vector<Rational>(nvars, Rational(0)));
    p.b_ub.assign(static_cast<std::size_t>(n), Rational(1));
    std::size_t col = 0;
    for (std::size_t oi = 0; oi < active.size(); ++oi) {
        p.b_eq[oi] = demand[static_cast<std::size_t>(active[oi] - 1)];
        for (const auto& R : sets_of[oi]) {
            p.A_eq[oi][col] = 1;
            for (int s : R) p.A_ub[static_cast<std::size_t>(s - 1)][col] = 1;
            ++col;
        }
    }

    LpOutcome out = solve_lp(p);
    internal_check(out.status != LpStatus::unbounded, "a feasibility test cannot be unbounded");
    if (out.status == LpStatus::optimal) {
        res.feasible = true;
        col = 0;
        for (std::size_t oi = 0; oi < active.size(); ++oi)
            for (const auto& R : sets_of[oi]) {
                if (out.x[col] != 0) res.allocation.push_back({active[oi], R, out.x[col]});
                ++col;
            }
        return res;
    }

    // Extend the certificate with zeros for zero-demand objects; their
    // columns satisfy the sign condition automatically since y_server >= 0.
    InfeasibilityCertificate cert;
    cert.y_demand.assign(static_cast<std::size_t>(c.k()), Rational(0));
    for (std::size_t oi = 0; oi < active.size(); ++oi)
        cert.y_demand[static_cast<std::size_t>(active[oi] - 1)] = out.y_eq[oi];
    cert.y_server = out.y_ub;
    res.feasible = false;
    res.certificate = std::move(cert);
    return res;
}

// The bound triple around the axis intercept, assembled from the best
// orthogonal family over all smallest recovery sets. The refined upper bound
// needs d_dual >= 2; the loose one additionally needs d_dual > a. Both are
// absent for the full-space code (no dual codeword at all).
struct BoundsReport {
    int object = 0;
    int a = 0;
    int J = 0;
    bool j_exact = true;
    std::vector<int> base_set; // the smallest recovery set attaining J
    Rational lower;            // 1 + J
    std::optional<Rational> upper_refined;
    std::optional<Rational> upper_loose;
    int dmin_bound = 0; // code minimum distance, reported alongside
    std::optional<int> d_dual;
    std::optional<LPSolution> lp_exact;
};

inline BoundsReport theorem1_bounds(const LinearCode& c, int object, bool with_lp,
                                    const Caps& caps = Caps{}) {
    BoundsReport r;
    r.object = object;
    auto [base, fam] = best_family_over_smallest(c, object, caps);
    r.a = static_cast<int>(base.size());
    r.J = fam.J;
    r.j_exact = fam.exact;
    r.base_set = base;
    r.lower = Rational(1 + fam.J);
    r.dmin_bound = c.min_distance(caps.dual_enum);
    if (c.k() < c.n()) {
        const int dd = c.dual_distance(caps.dual_enum);
        r.d_dual = dd;
        if (dd >= 2) {
            r.upper_refined = 1 + Rational(c.n() - r.a, std::max(dd - r.a, r.a));
            if (dd > r.a) r.upper_loose = 1 + Rational(c.n() - r.a, dd - r.a);
        }
    }
    if (r.upper_refined && r.upper_loose)
        internal_check(*r.upper_refined <= *r.upper_loose, "refined bound cannot exceed the loose one");
    if (with_lp) {
        r.lp_exact = max_demand(c, object, caps);
        internal_check(r.lower <= r.lp_exact->value, "the family lower bound must hold");
        if (r.upper_refined)
            internal_check(r.lp_exact->value <= *r.upper_refined, "the refined upper bound must hold");
    }
    return r;
}

// Certified allocation from the design route: the singleton {direct_column}
// carries rate 1 and each block (a punctured minimum-weight dual support
// through that column, in original server labels) carries 1/d_c, where d_c is
// the 1-design replication. Returns nothing when the blocks fail to form a
// 1-design or the dual has a word of weight <= 1.
struct DesignAllocation {
    int object = 0;
    int direct_column = 0;
    std::vector<std::vector<int>> blocks;
    BigInt d_c;
    Rational block_weight; // 1 / d_c
    Rational rate;         // 1 + gamma/d_c = 1 + (n-1)/(d_dual-1)
    DesignReport report;   // the verified 1-design facts (points relabeled 1..n-1)
};

inline std::optional<DesignAllocation> design_allocation(const LinearCode& c, int object,
                                                         const Caps& caps = Caps{}) {
    const auto& sysmap = c.systematic_map();
    auto it = sysmap.find(object);
    if (it == sysmap.end())
        throw UsageError("design allocation requires a systematic coordinate: no column equals the unit vector of object " +
                         std::to_string(object));
    if (c.k() == c.n()) return std::nullopt; // trivial dual: no checks to vote with
    const int dd = c.dual_distance(caps.dual_enum);
    if (dd <= 1) return std::nullopt;
    const int j = it->second;

    const LinearCode dual = c.dual();
    const auto supports = dual.min_weight_codewords(dd, j, caps.dual_enum);
    if (supports.empty()) return std::nullopt; // no minimum-weight check through the column

    DesignAllocation da;
    da.object = object;
    da.direct_column = j;
    BlockCollection bc;
    bc.v = c.n() - 1;
    for (const auto& sup : supports) {
        std::vector<int> orig, rel;
        orig.reserve(sup.size() - 1);
        rel.reserve(sup.size() - 1);
        for (int pos : sup) {
            if (pos == j) continue;
            orig.push_back(pos);
            rel.push_back(pos < j ? pos : pos - 1);
        }
        da.blocks.push_back(std::move(orig));
        bc.blocks.push_back(std::move(rel));
    }

    DesignReport rep = check_t_design(bc, 1, caps.dual_enum);
    if (!rep.is_design) return std::nullopt;
    internal_check(rep.lambda.has_value(), "a verified design carries its lambda");
    da.d_c = *rep.lambda;
    da.block_weight = Rational(1) / Rational(da.d_c);
    da.rate = 1 + Rational(BigInt(da.blocks.size())) / Rational(da.d_c);
    da.report = std::move(rep);

    internal_check(counting_identity(c.n() - 1, da.d_c.convert_to<long>(),
                                     static_cast<long>(da.blocks.size()), dd),
                   "block/point incidence count must match on both sides");
    internal_check(da.rate == 1 + Rational(c.n() - 1, dd - 1), "design rate identity");

    // Load check before handing the allocation out: server j carries exactly
    // the direct unit of rate; every other server sits in exactly d_c blocks
    // and so carries d_c * (1/d_c) = 1.
    std::vector<BigInt> count(static_cast<std::size_t>(c.n()) + 1, BigInt(0));
    for (const auto& b : da.blocks)
        for (int s : b) {
            internal_check(s != j, "blocks never touch the direct column");
            count[static_cast<std::size_t>(s)] += 1;
        }
    for (int s = 1; s <= c.n(); ++s)
        internal_check(count[static_cast<std::size_t>(s)] * da.block_weight <= 1,
                       "per-server load must stay within unit capacity");

    for (const auto& b : da.blocks)
        internal_check(is_recovery_set(c, object, b).ok, "every block must recover the object");
    return da;
}

// All k axis intercepts, object order.
inline std::vector<Rational> maximal_simplex(const LinearCode& c, const Caps& caps = Caps{}) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(c.k()));
    for (int obj = 1; obj <= c.k(); ++obj) out.push_back(max_demand(c, obj, caps).value);
    return out;
}

} // namespace srrlab
