#pragma once

#include "edlab/convex_body.hpp"
#include "edlab/ergodic_sum.hpp"
#include "edlab/geom.hpp"

namespace edlab {

/// Axis slice of the indicator's Fourier expansion: coefficients a_k(r) that
/// vanish unless k sits on a coordinate axis. This is the smooth (coboundary)
/// part of the orbit sum; everything here is a pair of one-dimensional series.
struct AxisSeries {
    ConvexBody body;
    double r;
    long long k_max;

    AxisSeries(const ConvexBody& body, double r, long long k_max)
        : body(body), r(r), k_max(k_max) {
        if (!(r > 0.0) || !(r < body.r0()))
            throw std::domain_error("AxisSeries: r outside (0, r0)");
        if (k_max < 0) throw std::domain_error("AxisSeries: k_max must be >= 0");
    }

    /// a_k(r) for arbitrary k: zero off the axes and at the origin.
    double a_k(IVec2 k) const {
        if (k.x != 0 && k.y != 0) return 0.0;
        if (k.x == 0 && k.y == 0) return 0.0;
        return coefficient(body, r, k);
    }
};

/// Truncated A_{C_r}(x) = sum over axis nodes 0 < |k_i| <= K_max of
/// a_k e^{2 pi i (k,x)}; real by coefficient symmetry.
double A_series(const AxisSeries& series, Vec2 x);

/// Truncated coboundary B_{C_r}(alpha, x) = sum a_k e^{2 pi i (k,x)} /
/// (e^{2 pi i (k,alpha)} - 1). Throws ResonantNodeError when a divisor within
/// the truncation falls below the 1e-9 guard.
double B_series(const AxisSeries& series, Vec2 alpha, Vec2 x);

/// One draw of the axis-part limit variable: B(alpha, beta) - B(alpha, x).
double limit_sample_d1(const AxisSeries& series, Vec2 x, Vec2 alpha, Vec2 beta);

/// Finite-horizon axis part of the discrepancy divided by N, via the closed
/// orbit (Dirichlet-kernel) form of each one-dimensional sum. Telescopes to
/// B(alpha, x + N alpha) - B(alpha, x) at the truncated level.
double d1_over_n(const AxisSeries& series, Vec2 x, Vec2 alpha, long long N);

}  // namespace edlab
