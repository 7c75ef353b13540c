#pragma once

#include <complex>
#include <stdexcept>

#include "edlab/convex_body.hpp"
#include "edlab/geom.hpp"

namespace edlab {

/// Thrown when adaptive integration cannot reach the requested tolerance;
/// carries the tolerance it did achieve.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

/// Placement of the stationary-phase offset 1/8 in the amplitude
/// g(k,r). The two readings coexist in the source material; `inside` is the
/// project default, `outside` is exposed for comparison runs.
enum class PhaseConvention {
    inside,   // sin(2*pi*(r*P(k) - 1/8))
    outside,  // sin(2*pi*r*P(k) - 1/8)
};

/// One nonzero Fourier node: the exact coefficient c_k(r) of the symmetric
/// cosine expansion, its stationary-phase main term d_k(r), and the amplitude
/// g(k,r). c_k is only filled when requested (it needs quadrature).
struct NodeTerm {
    IVec2 k;
    double c_k = 0.0;
    double d_k = 0.0;
    double g_k = 0.0;
    bool has_c = false;
};

/// Fourier transform of the unit-disk indicator as a radial profile:
/// U(s) = \int_{disk} cos(2*pi*s*u_1) du = J_1(2*pi*s)/s, U(0) = pi.
/// Quadrature route (slow, arbitrary-accuracy anchor).
double unit_disk_profile(double s, double tol = 1e-12);

/// Same profile via Bessel/asymptotic evaluation; absolute error < 1e-10.
double unit_disk_profile_fast(double s);

/// Fourier coefficient of the indicator of C_r at integer frequency k,
/// computed by adaptive quadrature over the body (sectional reduction in the
/// second coordinate, adaptive Simpson in the first). Real up to quadrature
/// noise for the symmetric bodies here. Throws QuadratureError if `tol` is
/// out of reach.
std::complex<double> exact_coefficient(const ConvexBody& body, double r, IVec2 k,
                                       double tol = 1e-10);

/// Cached fast route for the same value (real part): a*b*r^2 * U(s) with
/// s = r*sqrt(a^2 k1^2 + b^2 k2^2). Agrees with exact_coefficient to 1e-10.
double coefficient(const ConvexBody& body, double r, IVec2 k);

/// Cosine-expansion coefficient c_k(r) = coefficient(k) / sqrt(r), the
/// normalization in which chi_{C_r} - Vol = sqrt(r) * sum c_k cos(2 pi (k,x)).
double cosine_coefficient(const ConvexBody& body, double r, IVec2 k);

/// Stationary-phase main term: fills g_k = K^{-1/2}(k/|k|) * sin(phase) and
/// d_k = g_k / (pi |k|^{3/2}); c_k on demand via exact_coefficient.
NodeTerm main_term(const ConvexBody& body, double r, IVec2 k,
                   bool fill_exact = false,
                   PhaseConvention conv = PhaseConvention::inside);

/// Least-squares fit of |c_k - d_k| <= C |k|^{-5/2} over a band of nodes;
/// returns the fitted C (reported once per body by callers that log it).
double fit_remainder_constant(const ConvexBody& body, double r, long long k_lo = 2,
                              long long k_hi = 64);

namespace detail {

/// Cheap profile for bulk node sweeps: exact route below s = 20, two-term
/// asymptotics with polynomial trig above. Absolute error < 1e-7.
double profile_kernel(double s);

}  // namespace detail

}  // namespace edlab
