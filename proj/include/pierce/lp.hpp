#pragma once

#include <cstddef>
#include <vector>

namespace pierce {

inline constexpr double kTolLp = 1e-7;

enum class Sense { LessEqual, GreaterEqual, Equal };
enum class Direction { Minimize, Maximize };
enum class LPStatus { Optimal, Infeasible, Unbounded };

// Dense LP over x >= 0: optimize objective . x subject to rows[i] . x (sense) rhs[i].
struct LPProblem {
    Direction direction = Direction::Minimize;
    std::vector<double> objective;
    std::vector<std::vector<double>> rows;
    std::vector<Sense> senses;
    std::vector<double> rhs;
};

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    std::vector<double> values;
    double objective = 0.0;
    double max_violation = 0.0;  // largest constraint residual at `values`
    std::size_t iterations = 0;
};

// Two-phase dense tableau simplex. Pricing is largest-coefficient until a run of
// degenerate pivots, then Bland's rule for the rest of the phase.
LPSolution lp_solve(const LPProblem& problem);

}  // namespace pierce
