#pragma once

#include <vector>

namespace faircut::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };
enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

// max c.x  s.t.  rows (sense, rhs),  x >= 0
struct Problem {
    int num_vars = 0;
    std::vector<double> objective;
    struct Row {
        std::vector<double> coeffs;
        Sense sense = Sense::LessEqual;
        double rhs = 0.0;
    };
    std::vector<Row> rows;
};

struct Solution {
    Status status = Status::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
    // Row duals y with objective == sum_i y_i * rhs_i at optimum; for a
    // maximization problem y >= 0 on LessEqual rows and y <= 0 on
    // GreaterEqual rows.
    std::vector<double> duals;
};

// Dense two-phase tableau simplex with Bland's rule. Intended for the small,
// well-scaled restricted problems of the cut-cover solvers (hundreds of rows
// and columns at most).
Solution solve(const Problem& problem, int max_pivots = 200000);

}  // namespace faircut::lp
