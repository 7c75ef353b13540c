#include "edlab/smooth_part.hpp"

#include <cmath>

namespace edlab {

namespace {

constexpr double kResonanceGuard = 1e-9;  // on |e^{2 pi i k alpha} - 1|

}  // namespace

double A_series(const AxisSeries& series, Vec2 x) {
    double acc = 0.0;
    for (long long k = 1; k <= series.k_max; ++k) {
        double a1 = coefficient(series.body, series.r, {k, 0});
        double a2 = coefficient(series.body, series.r, {0, k});
        acc += 2.0 * a1 * std::cos(kTwoPi * k * x.x) +
               2.0 * a2 * std::cos(kTwoPi * k * x.y);
    }
    return acc;
}

double B_series(const AxisSeries& series, Vec2 alpha, Vec2 x) {
    // Conjugate node pairs (k,0)+(-k,0) collapse to
    // a_k sin(2 pi k x - pi {k alpha}) / sin(pi {k alpha}); the integer parts
    // of k alpha cancel between numerator and denominator.
    double acc = 0.0;
    for (long long k = 1; k <= series.k_max; ++k) {
        double f1 = signed_fraction(k, alpha.x).value;
        double f2 = signed_fraction(k, alpha.y).value;
        double s1 = std::sin(kPi * f1);
        double s2 = std::sin(kPi * f2);
        if (2.0 * std::abs(s1) <= kResonanceGuard) throw ResonantNodeError({k, 0});
        if (2.0 * std::abs(s2) <= kResonanceGuard) throw ResonantNodeError({0, k});
        double a1 = coefficient(series.body, series.r, {k, 0});
        double a2 = coefficient(series.body, series.r, {0, k});
        acc += a1 * std::sin(kTwoPi * k * x.x - kPi * f1) / s1 +
               a2 * std::sin(kTwoPi * k * x.y - kPi * f2) / s2;
    }
    return acc;
}

double limit_sample_d1(const AxisSeries& series, Vec2 x, Vec2 alpha, Vec2 beta) {
    return B_series(series, alpha, beta) - B_series(series, alpha, x);
}

double d1_over_n(const AxisSeries& series, Vec2 x, Vec2 alpha, long long N) {
    if (N < 1) throw std::domain_error("d1_over_n: N must be >= 1");
    double acc = 0.0;
    for (long long k = 1; k <= series.k_max; ++k) {
        double a1 = coefficient(series.body, series.r, {k, 0});
        double a2 = coefficient(series.body, series.r, {0, k});
        double f1 = signed_fraction(k, alpha.x).value;
        double f2 = signed_fraction(k, alpha.y).value;
        acc += 2.0 * a1 *
               dirichlet_cosine_sum(kTwoPi * k * x.x, kTwoPi * f1, N) +
               2.0 * a2 *
               dirichlet_cosine_sum(kTwoPi * k * x.y, kTwoPi * f2, N);
    }
    return acc;
}

}  // namespace edlab
