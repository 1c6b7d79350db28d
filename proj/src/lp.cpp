#include "faircut/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace faircut::lp {

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
    int rows = 0;
    int cols = 0;  // structural + slack/surplus + artificial
    std::vector<double> a;  // rows x (cols + 1), last column is rhs
    std::vector<int> basis;
    std::vector<double> cost;  // current phase costs, per column
    std::vector<double> zrow;  // reduced costs z_j - c_j
    double zvalue = 0.0;

    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * (cols + 1) + c]; }
    double rhs(int r) const { return a[static_cast<std::size_t>(r) * (cols + 1) + cols]; }

    void compute_zrow() {
        zrow.assign(cols, 0.0);
        zvalue = 0.0;
        for (int r = 0; r < rows; ++r) {
            const double cb = cost[basis[r]];
            if (cb == 0.0) continue;
            const double* row = &a[static_cast<std::size_t>(r) * (cols + 1)];
            for (int c = 0; c < cols; ++c) zrow[c] += cb * row[c];
            zvalue += cb * row[cols];
        }
        for (int c = 0; c < cols; ++c) zrow[c] -= cost[c];
    }

    void pivot(int pr, int pc) {
        double* prow = &a[static_cast<std::size_t>(pr) * (cols + 1)];
        const double pivval = prow[pc];
        for (int c = 0; c <= cols; ++c) prow[c] /= pivval;
        for (int r = 0; r < rows; ++r) {
            if (r == pr) continue;
            double* row = &a[static_cast<std::size_t>(r) * (cols + 1)];
            const double f = row[pc];
            if (f == 0.0) continue;
            for (int c = 0; c <= cols; ++c) row[c] -= f * prow[c];
            row[pc] = 0.0;
        }
        const double zf = zrow[pc];
        if (zf != 0.0) {
            for (int c = 0; c < cols; ++c) zrow[c] -= zf * prow[c];
            zvalue -= zf * prow[cols];
            zrow[pc] = 0.0;
        }
        basis[pr] = pc;
    }
};

// Bland's rule: entering = lowest-index improving column, leaving = min
// ratio with lowest basis index on ties. Maximization: improve while some
// reduced cost is negative.
Status run_simplex(Tableau& t, const std::vector<bool>& allowed, int& pivots,
                   int max_pivots) {
    while (true) {
        int enter = -1;
        for (int c = 0; c < t.cols; ++c) {
            if (!allowed[c]) continue;
            if (t.zrow[c] < -kEps) {
                enter = c;
                break;
            }
        }
        if (enter < 0) return Status::Optimal;

        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < t.rows; ++r) {
            const double arc = t.at(r, enter);
            if (arc > kEps) {
                const double ratio = t.rhs(r) / arc;
                if (ratio < best_ratio - kEps ||
                    (ratio < best_ratio + kEps &&
                     (leave < 0 || t.basis[r] < t.basis[leave]))) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) return Status::Unbounded;
        t.pivot(leave, enter);
        if (++pivots > max_pivots) return Status::IterationLimit;
    }
}

}  // namespace

Solution solve(const Problem& problem, int max_pivots) {
    const int nv = problem.num_vars;
    const int m = static_cast<int>(problem.rows.size());
    if (static_cast<int>(problem.objective.size()) != nv)
        throw std::invalid_argument("lp: objective size mismatch");

    // normalize rhs >= 0, remember flipped rows for dual signs
    std::vector<Problem::Row> rows = problem.rows;
    std::vector<bool> flipped(m, false);
    for (int r = 0; r < m; ++r) {
        if (static_cast<int>(rows[r].coeffs.size()) != nv)
            throw std::invalid_argument("lp: row size mismatch");
        if (rows[r].rhs < 0.0) {
            flipped[r] = true;
            rows[r].rhs = -rows[r].rhs;
            for (double& c : rows[r].coeffs) c = -c;
            if (rows[r].sense == Sense::LessEqual)
                rows[r].sense = Sense::GreaterEqual;
            else if (rows[r].sense == Sense::GreaterEqual)
                rows[r].sense = Sense::LessEqual;
        }
    }

    // column layout: [structural][slack/surplus][artificials]
    int n_slack = 0;
    for (const auto& row : rows)
        if (row.sense != Sense::Equal) ++n_slack;

    Tableau t;
    t.rows = m;
    t.cols = nv + n_slack + m;  // one artificial column per row
    t.a.assign(static_cast<std::size_t>(m) * (t.cols + 1), 0.0);
    t.basis.assign(m, -1);

    std::vector<int> slack_col(m, -1), art_col(m, -1);
    int next_slack = nv;
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < nv; ++c) t.at(r, c) = rows[r].coeffs[c];
        t.at(r, t.cols) = rows[r].rhs;
        if (rows[r].sense == Sense::LessEqual) {
            slack_col[r] = next_slack;
            t.at(r, next_slack++) = 1.0;
        } else if (rows[r].sense == Sense::GreaterEqual) {
            slack_col[r] = next_slack;
            t.at(r, next_slack++) = -1.0;
        }
        art_col[r] = nv + n_slack + r;
        t.at(r, art_col[r]) = 1.0;
    }

    // start from the all-artificial basis, except where a plain slack works
    for (int r = 0; r < m; ++r) {
        if (rows[r].sense == Sense::LessEqual) {
            t.basis[r] = slack_col[r];
            t.at(r, art_col[r]) = 0.0;
        } else {
            t.basis[r] = art_col[r];
        }
    }

    Solution sol;
    int pivots = 0;

    // phase 1: maximize -(sum of artificials)
    t.cost.assign(t.cols, 0.0);
    bool need_phase1 = false;
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] == art_col[r]) {
            t.cost[art_col[r]] = -1.0;
            need_phase1 = true;
        }
    }
    std::vector<bool> allowed(t.cols, true);
    if (need_phase1) {
        t.compute_zrow();
        const Status s1 = run_simplex(t, allowed, pivots, max_pivots);
        if (s1 == Status::IterationLimit) {
            sol.status = s1;
            return sol;
        }
        if (t.zvalue < -1e-7) {
            sol.status = Status::Infeasible;
            return sol;
        }
        // drive leftover artificials out of the basis where possible
        for (int r = 0; r < m; ++r) {
            if (t.basis[r] < nv + n_slack) continue;
            int enter = -1;
            for (int c = 0; c < nv + n_slack; ++c) {
                if (std::abs(t.at(r, c)) > kEps) {
                    enter = c;
                    break;
                }
            }
            if (enter >= 0) t.pivot(r, enter);
            // else: redundant row, artificial stays basic at zero
        }
    }

    // phase 2: real objective, artificials banned
    t.cost.assign(t.cols, 0.0);
    for (int c = 0; c < nv; ++c) t.cost[c] = problem.objective[c];
    for (int r = 0; r < m; ++r) allowed[art_col[r]] = false;
    t.compute_zrow();
    const Status s2 = run_simplex(t, allowed, pivots, max_pivots);
    if (s2 != Status::Optimal) {
        sol.status = s2;
        return sol;
    }

    sol.status = Status::Optimal;
    sol.objective = t.zvalue;
    sol.x.assign(nv, 0.0);
    for (int r = 0; r < m; ++r)
        if (t.basis[r] < nv) sol.x[t.basis[r]] = t.rhs(r);

    // dual of row r = reduced cost of its artificial column (unit column,
    // zero cost), with the sign flipped back for normalized rows
    sol.duals.assign(m, 0.0);
    for (int r = 0; r < m; ++r) {
        double y = t.zrow[art_col[r]];
        if (flipped[r]) y = -y;
        sol.duals[r] = y;
    }
    return sol;
}

}  // namespace faircut::lp
