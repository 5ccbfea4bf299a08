#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srrlab/errors.hpp"
#include "srrlab/rational.hpp"

// Exact rational linear programming: a dense two-phase primal simplex with
// Bland's anti-cycling rule. Everything is cpp_rational — the acceptance
// surface asserts exact equalities, so no floating point is allowed anywhere
// near the optimization path. Deterministic by construction: fixed variable
// order, Bland's smallest-index pivots.
//
//   maximize c^T x   subject to   A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
//
// b_ub and b_eq must be nonnegative (all uses here are; the solver checks).
// On infeasibility the returned (y_eq, y_ub) is a Farkas certificate:
//   y_ub >= 0,  y_eq^T A_eq,j + y_ub^T A_ub,j >= 0 for every column j,
//   y_eq^T b_eq + y_ub^T b_ub < 0.
// At an optimum (y_eq, y_ub) are the exact duals:
//   y_ub >= 0,  y^T A_j >= c_j for every column,  y^T b = value.

namespace srrlab {

struct LpProblem {
    std::vector<Rational> c;
    std::vector<std::vector<Rational>> A_ub;
    std::vector<Rational> b_ub;
    std::vector<std::vector<Rational>> A_eq;
    std::vector<Rational> b_eq;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::optimal;
    Rational value;
    std::vector<Rational> x;
    std::vector<Rational> y_ub; // duals of <= rows (>= 0), or Farkas component
    std::vector<Rational> y_eq; // duals of = rows (free), or Farkas component
};

namespace detail {

class SimplexTableau {
public:
    explicit SimplexTableau(const LpProblem& p)
        : n_(static_cast<int>(p.c.size())),
          m_ub_(static_cast<int>(p.A_ub.size())),
          m_eq_(static_cast<int>(p.A_eq.size())),
          m_(m_ub_ + m_eq_),
          ncols_(n_ + m_ub_ + m_eq_ + 1) {
        if (n_ < 1) throw UsageError("lp: at least one variable required");
        for (const auto& r : p.A_ub)
            if (static_cast<int>(r.size()) != n_) throw UsageError("lp: A_ub row width mismatch");
        for (const auto& r : p.A_eq)
            if (static_cast<int>(r.size()) != n_) throw UsageError("lp: A_eq row width mismatch");
        if (static_cast<int>(p.b_ub.size()) != m_ub_ || static_cast<int>(p.b_eq.size()) != m_eq_)
            throw UsageError("lp: right-hand side length mismatch");
        for (const auto& b : p.b_ub)
            if (b < 0) throw UsageError("lp: b_ub must be nonnegative");
        for (const auto& b : p.b_eq)
            if (b < 0) throw UsageError("lp: b_eq must be nonnegative");

        T_.assign(static_cast<std::size_t>(m_), std::vector<Rational>(static_cast<std::size_t>(ncols_), Rational(0)));
        basis_.resize(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_ub_; ++i) {
            for (int j = 0; j < n_; ++j) T_[ri(i)][ci(j)] = p.A_ub[ri(i)][ci(j)];
            T_[ri(i)][ci(n_ + i)] = 1; // slack
            T_[ri(i)][rhs()] = p.b_ub[ri(i)];
            basis_[ri(i)] = n_ + i;
        }
        for (int i = 0; i < m_eq_; ++i) {
            int row = m_ub_ + i;
            for (int j = 0; j < n_; ++j) T_[ri(row)][ci(j)] = p.A_eq[ri(i)][ci(j)];
            T_[ri(row)][ci(n_ + m_ub_ + i)] = 1; // artificial
            T_[ri(row)][rhs()] = p.b_eq[ri(i)];
            basis_[ri(row)] = n_ + m_ub_ + i;
        }
    }

    // Runs both phases; fills an LpOutcome.
    LpOutcome solve(const std::vector<Rational>& c) {
        LpOutcome out;
        if (m_eq_ > 0) {
            // Phase 1: maximize -(sum of artificials).
            std::vector<Rational> c1(static_cast<std::size_t>(n_ + m_ub_ + m_eq_), Rational(0));
            for (int i = 0; i < m_eq_; ++i) c1[static_cast<std::size_t>(n_ + m_ub_ + i)] = -1;
            rebuild_objective(c1);
            run(/*allow_artificial=*/true);
            if (z_[static_cast<std::size_t>(rhs())] < 0) {
                out.status = LpStatus::infeasible;
                extract_duals(out, c1);
                return out;
            }
            pivot_out_basic_artificials();
        }
        std::vector<Rational> c2(static_cast<std::size_t>(n_ + m_ub_ + m_eq_), Rational(0));
        for (int j = 0; j < n_; ++j) c2[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)];
        rebuild_objective(c2);
        bool bounded = run(/*allow_artificial=*/false);
        if (!bounded) {
            out.status = LpStatus::unbounded;
            return out;
        }
        out.status = LpStatus::optimal;
        out.value = z_[static_cast<std::size_t>(rhs())];
        out.x.assign(static_cast<std::size_t>(n_), Rational(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[ri(i)] < n_) out.x[static_cast<std::size_t>(basis_[ri(i)])] = T_[ri(i)][static_cast<std::size_t>(rhs())];
        extract_duals(out, c2);
        return out;
    }

private:
    static std::size_t ri(int i) { return static_cast<std::size_t>(i); }
    static std::size_t ci(int j) { return static_cast<std::size_t>(j); }
    int rhs() const { return ncols_ - 1; }

    // z_[j] = y^T A_j - c_j for every column; z_[rhs] = y^T b = objective value.
    void rebuild_objective(const std::vector<Rational>& c) {
        z_.assign(static_cast<std::size_t>(ncols_), Rational(0));
        for (int j = 0; j < ncols_ - 1; ++j) z_[ci(j)] = -c[ci(j)];
        for (int i = 0; i < m_; ++i) {
            const Rational& cb = c[static_cast<std::size_t>(basis_[ri(i)])];
            if (cb == 0) continue;
            for (int j = 0; j < ncols_; ++j)
                if (T_[ri(i)][ci(j)] != 0) z_[ci(j)] += cb * T_[ri(i)][ci(j)];
        }
    }

    // Bland's rule: entering = smallest eligible variable index with negative
    // reduced cost; leaving = smallest basis variable among min-ratio ties.
    // Returns false on unboundedness.
    bool run(bool allow_artificial) {
        const int limit = allow_artificial ? n_ + m_ub_ + m_eq_ : n_ + m_ub_;
        while (true) {
            int e = -1;
            for (int j = 0; j < limit; ++j)
                if (z_[ci(j)] < 0) { e = j; break; }
            if (e < 0) return true;
            int leave = -1;
            Rational best_ratio;
            for (int i = 0; i < m_; ++i) {
                if (T_[ri(i)][ci(e)] <= 0) continue;
                Rational ratio = T_[ri(i)][static_cast<std::size_t>(rhs())] / T_[ri(i)][ci(e)];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[ri(i)] < basis_[ri(leave)])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false; // unbounded direction
            pivot(leave, e);
        }
    }

    void pivot(int r, int e) {
        Rational p = T_[ri(r)][ci(e)];
        for (int j = 0; j < ncols_; ++j) T_[ri(r)][ci(j)] /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            Rational f = T_[ri(i)][ci(e)];
            if (f == 0) continue;
            for (int j = 0; j < ncols_; ++j)
                if (T_[ri(r)][ci(j)] != 0) T_[ri(i)][ci(j)] -= f * T_[ri(r)][ci(j)];
        }
        Rational fz = z_[ci(e)];
        if (fz != 0)
            for (int j = 0; j < ncols_; ++j)
                if (T_[ri(r)][ci(j)] != 0) z_[ci(j)] -= fz * T_[ri(r)][ci(j)];
        basis_[ri(r)] = e;
    }

    // After a feasible phase 1, any artificial still basic sits at level 0;
    // pivot it out on any nonzero structural/slack entry so phase 2 never
    // touches artificials. A row with no such entry is a redundant equality
    // and stays inert (its artificial remains basic at zero).
    void pivot_out_basic_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[ri(i)] < n_ + m_ub_) continue;
            for (int j = 0; j < n_ + m_ub_; ++j) {
                if (T_[ri(i)][ci(j)] != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    // y_ub[i] = z[slack_i] (slack cost is 0 in both phases);
    // y_eq[i] = z[art_i] - c[art_i] ... with z_[j] = y^T A_j - c_j and the
    // artificial column being the i-th equality unit vector, y_eq[i] =
    // z[art_i] + (phase-1: 1, phase-2: 0).
    void extract_duals(LpOutcome& out, const std::vector<Rational>& c) const {
        out.y_ub.assign(static_cast<std::size_t>(m_ub_), Rational(0));
        out.y_eq.assign(static_cast<std::size_t>(m_eq_), Rational(0));
        for (int i = 0; i < m_ub_; ++i)
            out.y_ub[ri(i)] = z_[ci(n_ + i)] + c[ci(n_ + i)];
        for (int i = 0; i < m_eq_; ++i)
            out.y_eq[ri(i)] = z_[ci(n_ + m_ub_ + i)] + c[ci(n_ + m_ub_ + i)];
    }

    int n_, m_ub_, m_eq_, m_, ncols_;
    std::vector<std::vector<Rational>> T_;
    std::vector<Rational> z_;
    std::vector<int> basis_;
};

} // namespace detail

inline LpOutcome solve_lp(const LpProblem& p) {
    detail::SimplexTableau t(p);
    LpOutcome out = t.solve(p.c);
    if (out.status == LpStatus::infeasible) {
        // Sanity-check the Farkas certificate before handing it out.
        for (std::size_t j = 0; j < p.c.size(); ++j) {
            Rational s = 0;
            for (std::size_t i = 0; i < p.A_eq.size(); ++i) s += out.y_eq[i] * p.A_eq[i][j];
            for (std::size_t i = 0; i < p.A_ub.size(); ++i) s += out.y_ub[i] * p.A_ub[i][j];
            internal_check(s >= 0, "Farkas certificate violates column inequality");
        }
        for (const auto& v : out.y_ub) internal_check(v >= 0, "Farkas y_ub must be nonnegative");
        Rational total = 0;
        for (std::size_t i = 0; i < p.b_eq.size(); ++i) total += out.y_eq[i] * p.b_eq[i];
        for (std::size_t i = 0; i < p.b_ub.size(); ++i) total += out.y_ub[i] * p.b_ub[i];
        internal_check(total < 0, "Farkas certificate fails the strict inequality");
    } else if (out.status == LpStatus::optimal) {
        // Re-derive both feasibility facts and strong duality; the solver is
        // not trusted by its callers and should not trust itself either.
        for (std::size_t i = 0; i < p.A_ub.size(); ++i) {
            Rational lhs = 0;
            for (std::size_t j = 0; j < p.c.size(); ++j) lhs += p.A_ub[i][j] * out.x[j];
            internal_check(lhs <= p.b_ub[i], "primal violates an upper-bound row");
        }
        for (std::size_t i = 0; i < p.A_eq.size(); ++i) {
            Rational lhs = 0;
            for (std::size_t j = 0; j < p.c.size(); ++j) lhs += p.A_eq[i][j] * out.x[j];
            internal_check(lhs == p.b_eq[i], "primal violates an equality row");
        }
        for (const auto& xj : out.x) internal_check(xj >= 0, "primal violates nonnegativity");
        for (const auto& v : out.y_ub) internal_check(v >= 0, "dual y_ub must be nonnegative");
        for (std::size_t j = 0; j < p.c.size(); ++j) {
            Rational s = 0;
            for (std::size_t i = 0; i < p.A_eq.size(); ++i) s += out.y_eq[i] * p.A_eq[i][j];
            for (std::size_t i = 0; i < p.A_ub.size(); ++i) s += out.y_ub[i] * p.A_ub[i][j];
            internal_check(s >= p.c[j], "dual violates a column constraint");
        }
        Rational primal = 0;
        for (std::size_t j = 0; j < p.c.size(); ++j) primal += p.c[j] * out.x[j];
        Rational dual = 0;
        for (std::size_t i = 0; i < p.b_eq.size(); ++i) dual += out.y_eq[i] * p.b_eq[i];
        for (std::size_t i = 0; i < p.b_ub.size(); ++i) dual += out.y_ub[i] * p.b_ub[i];
        internal_check(primal == out.value && dual == out.value,
                       "strong duality must hold exactly at the reported optimum");
    }
    return out;
}

} // namespace srrlab
