#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pierce {

using PointD = std::vector<double>;

enum class CurveKind { Moment, Caratheodory };

struct CurveSpecD {
    CurveKind kind = CurveKind::Moment;
    int d = 2;
};

// Size of the separator tuples that replace quadruples in dimension d.
int j_of_d(int d);

// Throws for d < 2 and for a Caratheodory curve in odd dimension.
void validate_curve_spec(const CurveSpecD& spec);

PointD curve_point(const CurveSpecD& spec, double t);

// Sturm sequence of a real polynomial (coefficients lowest degree first).
class SturmSequence {
public:
    explicit SturmSequence(std::vector<long double> coeffs);

    // Distinct real roots in (lo, hi]; infinite bounds allowed.
    int count_roots(long double lo, long double hi) const;
    int degree() const;

private:
    int sign_changes_at(long double x) const;
    std::vector<std::vector<long double>> chain_;
};

struct CrossingCount {
    int sampled = 0;                  // sign changes of <a, curve(t)> - b on the sample grid
    std::optional<int> exact;         // Sturm root count (moment curve only)
};

// t_range is [lo, hi]; for the closed Caratheodory curve the grid is circular.
CrossingCount hyperplane_crossings(const CurveSpecD& spec, std::span<const double> normal, double offset,
                                   double t_lo, double t_hi, std::size_t samples);

// r = j+1 occurrences for odd d (linear order), r = j for even d (circular),
// pairwise at distance >= ceil(alpha * n).
bool spread_out_general(std::span<const std::size_t> positions, std::size_t n, double alpha, int d);

// Number of intervals the generalized dichotomy allows when a color is not
// spread out: j for odd d, j - 1 for even d.
int dichotomy_interval_budget(int d);

// alpha = c_d * gamma. Only c_2 = 1/300 comes with an argument behind it.
struct AlphaScale {
    double c_d = 1.0 / 300.0;
    bool validated = false;
};

AlphaScale alpha_scale(int d);

}  // namespace pierce
