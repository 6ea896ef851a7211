#include "pem/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pem/kernels.hpp"

namespace pem {

std::pair<double, double> ratios(std::uint64_t n_before, std::uint64_t n_after,
                                 std::uint64_t cohort) {
    if (cohort == 0) throw DataError("InvalidPopulation", "cohort size must be positive");
    double r1 = n_before > 0 ? double(n_after) / double(n_before) : double(n_after);
    double r2 = 100.0 * double(n_after) / double(cohort);
    return {r1, r2};
}

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction
// (Numerical Recipes form).
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    constexpr int max_iter = 500;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0))
        throw DataError("InvalidBetaArgs", "need a,b > 0 and x in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw DataError("InvalidDf", "degrees of freedom must be positive");
    if (!std::isfinite(t)) throw DataError("InvalidDf", "t statistic must be finite");
    if (t == 0.0) return 1.0;
    const double x = df / (df + t * t);
    return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

namespace {

TestResult finish_test(double mean_diff, double se, double df) {
    TestResult res;
    res.df = df;
    if (se > 0.0) {
        res.t = mean_diff / se;
        res.p = two_sided_p(res.t, df);
        return res;
    }
    // Zero pooled variance: constant samples.
    res.degenerate = true;
    if (mean_diff == 0.0) {
        res.t = 0.0;
        res.p = 1.0;
    } else {
        res.t = std::copysign(std::numeric_limits<double>::max(), mean_diff);
        res.p = 0.0;
    }
    return res;
}

TestResult pooled_from_moments(double n1, double s1, double ss1, double n2, double s2,
                               double ss2) {
    const double m1 = s1 / n1;
    const double m2 = s2 / n2;
    const double v1 = std::max(0.0, (ss1 - s1 * s1 / n1) / (n1 - 1.0));
    const double v2 = std::max(0.0, (ss2 - s2 * s2 / n2) / (n2 - 1.0));
    const double df = n1 + n2 - 2.0;
    const double sp2 = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / df;
    const double se = std::sqrt(sp2 * (1.0 / n1 + 1.0 / n2));
    return finish_test(m1 - m2, se, df);
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double centered_ss(std::span<const double> v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s;
}

} // namespace

TestResult students_t(std::span<const double> x, std::span<const double> y,
                      TestVariant variant) {
    if (variant == TestVariant::Paired && x.size() != y.size())
        throw DataError("LengthMismatch", "paired test needs equal-length samples");
    if (x.size() < 2 || y.size() < 2)
        throw DataError("TooFewSamples", "each sample needs at least 2 observations");

    if (variant == TestVariant::PooledUnpaired) {
        const double n1 = double(x.size()), n2 = double(y.size());
        const double mx = mean_of(x), my = mean_of(y);
        const double v1 = centered_ss(x, mx) / (n1 - 1.0);
        const double v2 = centered_ss(y, my) / (n2 - 1.0);
        const double df = n1 + n2 - 2.0;
        const double sp2 = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / df;
        const double se = std::sqrt(sp2 * (1.0 / n1 + 1.0 / n2));
        return finish_test(mx - my, se, df);
    }

    const double n = double(x.size());
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    const double md = mean_of(d);
    const double var = centered_ss(d, md) / (n - 1.0);
    return finish_test(md, std::sqrt(var / n), n - 1.0);
}

std::vector<EventStats> per_event_tests(const GroupedMatrix& before_groups,
                                        const GroupedMatrix& after_groups,
                                        const std::vector<std::uint32_t>& counts_before,
                                        const std::vector<std::uint32_t>& counts_after,
                                        const EventUniverse& universe, std::uint64_t cohort,
                                        TestVariant variant) {
    const std::size_t cols = universe.size();
    if (before_groups.cols != cols || after_groups.cols != cols ||
        before_groups.groups() != after_groups.groups() || counts_before.size() != cols ||
        counts_after.size() != cols)
        throw DataError("ShapeMismatch", "grouped matrices and counts must share the universe");
    const std::size_t g = before_groups.groups();
    if (g < 2) throw DataError("TooFewSamples", "need at least 2 groups for the t-test");

    std::vector<EventStats> out(cols);

    if (variant == TestVariant::PooledUnpaired) {
        std::vector<double> sx(cols), ssx(cols), sy(cols), ssy(cols);
        kernels::column_moments(before_groups.cells.data(), g, cols, sx.data(), ssx.data());
        kernels::column_moments(after_groups.cells.data(), g, cols, sy.data(), ssy.data());
        for (std::size_t c = 0; c < cols; ++c) {
            out[c].test =
                pooled_from_moments(double(g), sx[c], ssx[c], double(g), sy[c], ssy[c]);
        }
    } else {
        std::vector<double> xs(g), ys(g);
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t r = 0; r < g; ++r) {
                xs[r] = before_groups.at(r, c);
                ys[r] = after_groups.at(r, c);
            }
            out[c].test = students_t(xs, ys, TestVariant::Paired);
        }
    }

    for (std::size_t c = 0; c < cols; ++c) {
        out[c].event_key = universe.key(c);
        out[c].n_before = counts_before[c];
        out[c].n_after = counts_after[c];
        out[c].cohort = cohort;
        std::tie(out[c].r1, out[c].r2) = ratios(counts_before[c], counts_after[c], cohort);
    }
    return out;
}

} // namespace pem
