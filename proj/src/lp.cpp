#include "pierce/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pierce/error.hpp"

namespace pierce {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr std::size_t kDegenerateRun = 50;

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : m_(rows), n_(cols), a_(rows * (cols + 1), 0.0), obj_(cols + 1, 0.0), basis_(rows, 0) {}

    double& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return a_[i * (n_ + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, n_); }
    double rhs(std::size_t i) const { return at(i, n_); }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    // Objective row for "maximize costs . x", reduced against the current basis.
    void set_objective(const std::vector<double>& costs) {
        std::fill(obj_.begin(), obj_.end(), 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            obj_[j] = -costs[j];
        }
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = costs[basis_[i]];
            if (cb != 0.0) {
                for (std::size_t j = 0; j <= n_; ++j) {
                    obj_[j] += cb * at(i, j);
                }
            }
        }
    }

    double objective_value() const { return obj_[n_]; }

    void pivot(std::size_t r, std::size_t c) {
        const double inv = 1.0 / at(r, c);
        double* row = &a_[r * (n_ + 1)];
        for (std::size_t j = 0; j <= n_; ++j) {
            row[j] *= inv;
        }
        row[c] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) {
                continue;
            }
            double* other = &a_[i * (n_ + 1)];
            const double f = other[c];
            if (f != 0.0) {
                for (std::size_t j = 0; j <= n_; ++j) {
                    other[j] -= f * row[j];
                }
                other[c] = 0.0;
            }
        }
        const double f = obj_[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j <= n_; ++j) {
                obj_[j] -= f * row[j];
            }
            obj_[c] = 0.0;
        }
        basis_[r] = c;
    }

    // Returns false when unbounded.
    bool optimize(const std::vector<bool>& allowed, std::size_t& iterations) {
        std::size_t degenerate = 0;
        bool bland = false;
        const std::size_t limit = 50 * (m_ + n_) + 1000;
        for (;;) {
            if (++iterations > limit) {
                throw PierceError(ErrorKind::Argument, "simplex iteration limit exceeded");
            }
            std::size_t enter = n_;
            double best = -kPivotTol;
            for (std::size_t j = 0; j < n_; ++j) {
                if (!allowed[j] || obj_[j] >= -kPivotTol) {
                    continue;
                }
                if (bland) {
                    enter = j;
                    break;
                }
                if (obj_[j] < best) {
                    best = obj_[j];
                    enter = j;
                }
            }
            if (enter == n_) {
                return true;
            }
            std::size_t leave = m_;
            double ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double v = at(i, enter);
                if (v <= kPivotTol) {
                    continue;
                }
                const double q = std::max(rhs(i), 0.0) / v;
                if (q < ratio - 1e-12 || (q <= ratio + 1e-12 && leave < m_ && basis_[i] < basis_[leave])) {
                    ratio = std::min(q, ratio);
                    leave = i;
                }
            }
            if (leave == m_) {
                return false;
            }
            if (ratio <= 1e-12) {
                if (++degenerate >= kDegenerateRun) {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            pivot(leave, enter);
        }
    }

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<double> a_;
    std::vector<double> obj_;
    std::vector<std::size_t> basis_;
};

void check_problem(const LPProblem& p) {
    const std::size_t n = p.objective.size();
    if (p.rows.size() != p.senses.size() || p.rows.size() != p.rhs.size()) {
        throw PierceError(ErrorKind::Argument, "LP rows, senses, and rhs differ in length");
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(p.objective.begin(), p.objective.end(), finite) ||
        !std::all_of(p.rhs.begin(), p.rhs.end(), finite)) {
        throw PierceError(ErrorKind::Argument, "LP has non-finite coefficients");
    }
    for (const auto& row : p.rows) {
        if (row.size() != n) {
            throw PierceError(ErrorKind::Argument,
                              "LP row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
        }
        if (!std::all_of(row.begin(), row.end(), finite)) {
            throw PierceError(ErrorKind::Argument, "LP has non-finite coefficients");
        }
    }
}

}  // namespace

LPSolution lp_solve(const LPProblem& problem) {
    check_problem(problem);
    const std::size_t n = problem.objective.size();
    const std::size_t m = problem.rows.size();

    // Normalize every row to a non-negative right-hand side.
    std::vector<Sense> senses = problem.senses;
    std::vector<double> sign(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (problem.rhs[i] < 0.0) {
            sign[i] = -1.0;
            if (senses[i] == Sense::LessEqual) {
                senses[i] = Sense::GreaterEqual;
            } else if (senses[i] == Sense::GreaterEqual) {
                senses[i] = Sense::LessEqual;
            }
        }
    }
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (Sense s : senses) {
        slacks += s == Sense::Equal ? 0 : 1;
        artificials += s == Sense::LessEqual ? 0 : 1;
    }
    const std::size_t cols = n + slacks + artificials;
    Tableau t(m, cols);
    std::vector<bool> is_artificial(cols, false);
    std::size_t next_slack = n;
    std::size_t next_art = n + slacks;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            t.at(i, j) = sign[i] * problem.rows[i][j];
        }
        t.rhs(i) = sign[i] * problem.rhs[i];
        switch (senses[i]) {
            case Sense::LessEqual:
                t.at(i, next_slack) = 1.0;
                t.basis()[i] = next_slack++;
                break;
            case Sense::GreaterEqual:
                t.at(i, next_slack++) = -1.0;
                t.at(i, next_art) = 1.0;
                is_artificial[next_art] = true;
                t.basis()[i] = next_art++;
                break;
            case Sense::Equal:
                t.at(i, next_art) = 1.0;
                is_artificial[next_art] = true;
                t.basis()[i] = next_art++;
                break;
        }
    }

    LPSolution sol;
    std::vector<bool> allowed(cols, true);
    if (artificials > 0) {
        std::vector<double> phase1(cols, 0.0);
        for (std::size_t j = 0; j < cols; ++j) {
            phase1[j] = is_artificial[j] ? -1.0 : 0.0;
        }
        t.set_objective(phase1);
        t.optimize(allowed, sol.iterations);
        if (t.objective_value() < -kTolLp) {
            sol.status = LPStatus::Infeasible;
            return sol;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < m; ++i) {
            if (!is_artificial[t.basis()[i]]) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                if (!is_artificial[j] && std::abs(t.at(i, j)) > kPivotTol) {
                    t.pivot(i, j);
                    break;
                }
            }
        }
        for (std::size_t j = 0; j < cols; ++j) {
            allowed[j] = !is_artificial[j];
        }
    }

    const double dir = problem.direction == Direction::Maximize ? 1.0 : -1.0;
    std::vector<double> costs(cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        costs[j] = dir * problem.objective[j];
    }
    t.set_objective(costs);
    if (!t.optimize(allowed, sol.iterations)) {
        sol.status = LPStatus::Unbounded;
        return sol;
    }

    sol.status = LPStatus::Optimal;
    sol.values.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis()[i] < n) {
            sol.values[t.basis()[i]] = std::max(t.rhs(i), 0.0);
        }
    }
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        sol.objective += problem.objective[j] * sol.values[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            lhs += problem.rows[i][j] * sol.values[j];
        }
        const double r = problem.rhs[i];
        double v = 0.0;
        switch (problem.senses[i]) {
            case Sense::LessEqual: v = lhs - r; break;
            case Sense::GreaterEqual: v = r - lhs; break;
            case Sense::Equal: v = std::abs(lhs - r); break;
        }
        sol.max_violation = std::max(sol.max_violation, v);
    }
    return sol;
}

}  // namespace pierce
