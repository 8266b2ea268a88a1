#include "pierce/highdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pierce/error.hpp"
#include "pierce/geometry.hpp"
#include "pierce/witness.hpp"

namespace pierce {

int j_of_d(int d) {
    if (d < 2) {
        throw PierceError(ErrorKind::Argument, "dimension must be at least 2");
    }
    return d % 2 == 0 ? (d * d + d + 2) / 2 : (d * d + 1) / 2;
}

void validate_curve_spec(const CurveSpecD& spec) {
    if (spec.d < 2) {
        throw PierceError(ErrorKind::Argument, "dimension must be at least 2");
    }
    if (spec.kind == CurveKind::Caratheodory && spec.d % 2 != 0) {
        throw PierceError(ErrorKind::Argument, "the Caratheodory curve needs an even dimension");
    }
}

PointD curve_point(const CurveSpecD& spec, double t) {
    validate_curve_spec(spec);
    PointD out(static_cast<std::size_t>(spec.d));
    if (spec.kind == CurveKind::Moment) {
        double power = 1.0;
        for (auto& c : out) {
            power *= t;
            c = power;
        }
        return out;
    }
    for (int k = 1; k <= spec.d / 2; ++k) {
        out[static_cast<std::size_t>(2 * k - 2)] = std::sin(k * t);
        out[static_cast<std::size_t>(2 * k - 1)] = std::cos(k * t);
    }
    return out;
}

namespace {

using Poly = std::vector<long double>;

void trim(Poly& p, long double scale) {
    const long double eps = 1e-14L * std::max(scale, 1e-300L);
    while (!p.empty() && std::abs(p.back()) <= eps) {
        p.pop_back();
    }
}

long double max_abs(const Poly& p) {
    long double m = 0.0L;
    for (long double c : p) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

long double eval(const Poly& p, long double x) {
    long double acc = 0.0L;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

// Remainder of a / b.
Poly remainder(Poly a, const Poly& b) {
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        const long double f = a.back() / b.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] -= f * b[i];
        }
        a.pop_back();
    }
    return a;
}

}  // namespace

SturmSequence::SturmSequence(std::vector<long double> coeffs) {
    Poly p = std::move(coeffs);
    trim(p, max_abs(p));
    if (p.empty()) {
        throw PierceError(ErrorKind::Argument, "zero polynomial has no Sturm sequence");
    }
    chain_.push_back(p);
    if (p.size() == 1) {
        return;
    }
    Poly dp(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        dp[i - 1] = static_cast<long double>(i) * p[i];
    }
    chain_.push_back(dp);
    while (chain_.back().size() > 1) {
        const Poly& a = chain_[chain_.size() - 2];
        const Poly& b = chain_.back();
        Poly r = remainder(a, b);
        for (auto& c : r) {
            c = -c;
        }
        trim(r, std::max(max_abs(a), max_abs(b)));
        if (r.empty()) {
            break;
        }
        chain_.push_back(std::move(r));
    }
}

int SturmSequence::degree() const { return static_cast<int>(chain_.front().size()) - 1; }

int SturmSequence::sign_changes_at(long double x) const {
    int changes = 0;
    int last = 0;
    for (const Poly& p : chain_) {
        long double v;
        if (std::isinf(x)) {
            const bool odd = (p.size() - 1) % 2 == 1;
            v = p.back() * ((x < 0 && odd) ? -1.0L : 1.0L);
        } else {
            v = eval(p, x);
        }
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++changes;
        }
        last = s;
    }
    return changes;
}

int SturmSequence::count_roots(long double lo, long double hi) const {
    if (!(lo < hi)) {
        return 0;
    }
    return sign_changes_at(lo) - sign_changes_at(hi);
}

CrossingCount hyperplane_crossings(const CurveSpecD& spec, std::span<const double> normal, double offset,
                                   double t_lo, double t_hi, std::size_t samples) {
    validate_curve_spec(spec);
    if (normal.size() != static_cast<std::size_t>(spec.d)) {
        throw PierceError(ErrorKind::Argument, "normal has the wrong dimension");
    }
    if (std::all_of(normal.begin(), normal.end(), [](double v) { return v == 0.0; })) {
        throw PierceError(ErrorKind::Argument, "hyperplane normal is zero");
    }
    if (!(t_lo < t_hi) || samples < 2) {
        throw PierceError(ErrorKind::Argument, "need a nonempty parameter range and at least two samples");
    }
    const bool closed = spec.kind == CurveKind::Caratheodory;
    auto f = [&](double t) {
        const PointD x = curve_point(spec, t);
        double v = -offset;
        for (std::size_t i = 0; i < x.size(); ++i) {
            v += normal[i] * x[i];
        }
        return v;
    };
    CrossingCount out;
    int first = 0;
    int last = 0;
    const std::size_t steps = closed ? samples : samples - 1;
    for (std::size_t i = 0; i <= steps; ++i) {
        if (closed && i == steps) {
            break;
        }
        const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(steps);
        const double v = f(t);
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) {
            continue;
        }
        if (first == 0) {
            first = s;
        }
        if (last != 0 && s != last) {
            ++out.sampled;
        }
        last = s;
    }
    if (closed && first != 0 && last != first) {
        ++out.sampled;
    }
    if (spec.kind == CurveKind::Moment) {
        std::vector<long double> coeffs;
        coeffs.push_back(-static_cast<long double>(offset));
        for (double a : normal) {
            coeffs.push_back(a);
        }
        out.exact = SturmSequence(coeffs).count_roots(t_lo, t_hi);
    }
    return out;
}

bool spread_out_general(std::span<const std::size_t> positions, std::size_t n, double alpha, int d) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw PierceError(ErrorKind::Argument, "alpha must lie in (0, 1)");
    }
    const int j = j_of_d(d);
    const bool odd = d % 2 != 0;
    const auto r = static_cast<std::size_t>(odd ? j + 1 : j);
    const std::size_t t = std::max<std::size_t>(spread_threshold(alpha, n), 1);
    return spread_subset_exists(positions, n, t, r, !odd);
}

int dichotomy_interval_budget(int d) {
    const int j = j_of_d(d);
    return d % 2 != 0 ? j : j - 1;
}

AlphaScale alpha_scale(int d) {
    if (d < 2) {
        throw PierceError(ErrorKind::Argument, "dimension must be at least 2");
    }
    return {1.0 / 300.0, d == 2};
}

}  // namespace pierce
