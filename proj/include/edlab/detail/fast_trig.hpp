#pragma once

#include <cmath>

namespace edlab::detail {

/// sin/cos of 2*pi*s evaluated from the fractional part of s. Plain odd/even
/// Taylor polynomials on [-pi, pi]; absolute error peaks around 5e-7 at the
/// interval ends and is far smaller elsewhere, which is plenty for the large
/// Fourier-node sweeps where this runs (the summands there are O(|k|^{-3/2})
/// to begin with). The polynomial form auto-vectorizes, unlike libm sincos.
inline void sincos_2pi(double s, double& sn, double& cs) {
    double t = s - std::nearbyint(s);        // t in [-1/2, 1/2]
    double x = 6.2831853071795864769 * t;    // x in [-pi, pi]
    double x2 = x * x;
    sn = x * (1.0 +
         x2 * (-1.6666666666666666667e-1 +
         x2 * (8.3333333333333333333e-3 +
         x2 * (-1.9841269841269841270e-4 +
         x2 * (2.7557319223985890653e-6 +
         x2 * (-2.5052108385441718775e-8 +
         x2 * (1.6059043836821614599e-10 +
         x2 * (-7.6471637318198164759e-13 +
         x2 * 2.8114572543455207632e-15))))))));
    cs = 1.0 +
         x2 * (-5.0e-1 +
         x2 * (4.1666666666666666667e-2 +
         x2 * (-1.3888888888888888889e-3 +
         x2 * (2.4801587301587301587e-5 +
         x2 * (-2.7557319223985890653e-7 +
         x2 * (2.0876756987868098979e-9 +
         x2 * (-1.1470745597729724714e-11 +
         x2 * 4.7794773323873852974e-14)))))));
}

}  // namespace edlab::detail
