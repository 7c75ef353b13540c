#include "edlab/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "edlab/detail/fast_trig.hpp"

namespace edlab {

namespace {

// ---------------------------------------------------------------------------
// Adaptive Simpson. The value type is double or complex<double>.
// ---------------------------------------------------------------------------

template <typename T, typename F>
T simpson_step(const F& f, double a, T fa, double b, T fb, double m, T fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename T, typename F>
T adapt(const F& f, double a, T fa, double b, T fb, double m, T fm, T whole,
        double tol, int depth, double& worst_residual) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    T flm = f(lm);
    T frm = f(rm);
    T left = simpson_step(f, a, fa, m, fm, lm, flm);
    T right = simpson_step(f, m, fm, b, fb, rm, frm);
    T delta = left + right - whole;
    // Below this the correction is rounding noise; refining further cannot
    // improve the estimate, so give up on this panel and report the residual.
    // The +1 covers near-zero integrand values, whose evaluation still
    // carries absolute rounding error on the scale of the intermediates.
    double noise = 1e-13 * (b - a) *
                   (1.0 + std::abs(fa) + 4.0 * std::abs(fm) + std::abs(fb));
    if (std::abs(delta) <= 15.0 * tol || depth <= 0 || std::abs(delta) <= noise) {
        if (std::abs(delta) > 15.0 * tol)
            worst_residual = std::max(worst_residual, std::abs(delta) / 15.0);
        return left + right + delta * (1.0 / 15.0);
    }
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, worst_residual) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, worst_residual);
}

/// Integrate f over [a, b] with an initial uniform split into `panels`
/// subintervals (resolving oscillations) followed by adaptive refinement.
template <typename T, typename F>
T adaptive_simpson(const F& f, double a, double b, double tol, int panels,
                   double& worst_residual) {
    panels = std::max(panels, 4);
    T total{};
    double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        double x0 = a + i * h;
        double x1 = x0 + h;
        double xm = 0.5 * (x0 + x1);
        T f0 = f(x0), f1 = f(x1), fm = f(xm);
        T whole = simpson_step(f, x0, f0, x1, f1, xm, fm);
        total += adapt(f, x0, f0, x1, f1, xm, fm, whole, tol / panels, 42,
                       worst_residual);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Asymptotic J1 profile, two/three correction orders.
// ---------------------------------------------------------------------------

double profile_asymptotic(double s, bool high_order) {
    double z = kTwoPi * s;
    double iz = 1.0 / z;
    double iz2 = iz * iz;
    double P = 1.0 + 15.0 / 128.0 * iz2;
    double Q = 3.0 / 8.0 * iz - 315.0 / 3072.0 * iz2 * iz;
    if (high_order) {
        P -= 4725.0 / 32768.0 * iz2 * iz2;
        Q += 1091475.0 / 3932160.0 * iz2 * iz2 * iz;
    }
    double sn, cs;
    if (high_order) {
        sn = std::sin(z);
        cs = std::cos(z);
    } else {
        detail::sincos_2pi(s, sn, cs);
    }
    // cos(z - 3pi/4) P - sin(z - 3pi/4) Q, expanded through sin/cos of z.
    double kInvSqrt2 = 0.70710678118654752440;
    double combo = kInvSqrt2 * ((sn - cs) * P + (sn + cs) * Q);
    return combo / (kPi * s * std::sqrt(s));
}

std::mutex g_cache_mutex;
std::unordered_map<std::uint64_t, double> g_profile_cache;

}  // namespace

double unit_disk_profile(double s, double tol) {
    // U(s) = int_{-pi/2}^{pi/2} cos(2 pi s sin(phi)) * 2 cos^2(phi) dphi.
    auto f = [s](double phi) {
        double c = std::cos(phi);
        return std::cos(kTwoPi * s * std::sin(phi)) * 2.0 * c * c;
    };
    double residual = 0.0;
    int panels = static_cast<int>(std::min(4.0e4, 8.0 + 4.0 * std::abs(s)));
    double v = adaptive_simpson<double>(f, -0.5 * kPi, 0.5 * kPi, tol, panels, residual);
    if (residual > tol)
        throw QuadratureError("unit_disk_profile: tolerance not reached", residual);
    return v;
}

double unit_disk_profile_fast(double s) {
    if (s < 1e-8) return kPi;
    if (s < 20.0) return std::cyl_bessel_j(1.0, kTwoPi * s) / s;
    return profile_asymptotic(s, /*high_order=*/true);
}

double detail::profile_kernel(double s) {
    if (s < 20.0) return unit_disk_profile_fast(s);
    return profile_asymptotic(s, /*high_order=*/false);
}

std::complex<double> exact_coefficient(const ConvexBody& body, double r, IVec2 k,
                                       double tol) {
    if (k.x == 0 && k.y == 0)
        throw std::domain_error("exact_coefficient: k must be nonzero");
    if (!(r > 0.0) || !(r < body.r0()))
        throw std::domain_error("exact_coefficient: r outside (0, r0)");

    // Sectional reduction: the inner integral over the vertical section is
    // closed-form, the outer one runs over x1 = w sin(phi) to keep the
    // integrand analytic at the body's edge.
    double w = body.semi_a() * r;
    double hb = body.semi_b() * r;
    double k1 = static_cast<double>(k.x);
    double k2 = static_cast<double>(k.y);
    auto f = [&](double phi) -> std::complex<double> {
        double c = std::cos(phi);
        double t = w * std::sin(phi);
        double h = hb * c;
        double section = (k.y == 0) ? 2.0 * h : std::sin(kTwoPi * k2 * h) / (kPi * k2);
        double arg = -kTwoPi * k1 * t;
        return std::complex<double>(std::cos(arg), std::sin(arg)) * (section * w * c);
    };
    double residual = 0.0;
    int panels = static_cast<int>(
        std::min(2.0e5, 8.0 + 4.0 * (std::abs(k1) * w + std::abs(k2) * hb)));
    auto v = adaptive_simpson<std::complex<double>>(f, -0.5 * kPi, 0.5 * kPi, tol,
                                                    panels, residual);
    if (residual > tol)
        throw QuadratureError("exact_coefficient: tolerance not reached", residual);
    return v;
}

double coefficient(const ConvexBody& body, double r, IVec2 k) {
    double a = body.semi_a();
    double b = body.semi_b();
    double kx = static_cast<double>(k.x);
    double ky = static_cast<double>(k.y);
    double s = r * std::sqrt(a * a * kx * kx + b * b * ky * ky);
    // The profile argument s already folds in body, r and k, so it is the
    // cache key; a*b*r^2 is applied outside.
    std::uint64_t key = std::bit_cast<std::uint64_t>(s);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_profile_cache.find(key);
        if (it != g_profile_cache.end()) return a * b * r * r * it->second;
    }
    double u = unit_disk_profile_fast(s);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        g_profile_cache.emplace(key, u);
    }
    return a * b * r * r * u;
}

double cosine_coefficient(const ConvexBody& body, double r, IVec2 k) {
    return coefficient(body, r, k) / std::sqrt(r);
}

NodeTerm main_term(const ConvexBody& body, double r, IVec2 k, bool fill_exact,
                   PhaseConvention conv) {
    if (k.x == 0 && k.y == 0)
        throw std::domain_error("main_term: k must be nonzero");
    NodeTerm node;
    node.k = k;
    Vec2 kv = k.to_vec();
    double knorm = kv.norm();
    double p = body.support(kv);
    double kinv_sqrt = body.semi_a() * body.semi_b() *
                       std::pow(knorm / p, 1.5);  // K^{-1/2}(k/|k|)
    double phase = (conv == PhaseConvention::inside) ? kTwoPi * (r * p - 0.125)
                                                     : kTwoPi * r * p - 0.125;
    node.g_k = kinv_sqrt * std::sin(phase);
    node.d_k = node.g_k / (kPi * knorm * std::sqrt(knorm));
    if (fill_exact) {
        node.c_k = exact_coefficient(body, r, k).real() / std::sqrt(r);
        node.has_c = true;
    }
    return node;
}

double fit_remainder_constant(const ConvexBody& body, double r, long long k_lo,
                              long long k_hi) {
    double c = 0.0;
    for (long long k1 = k_lo; k1 <= k_hi; k1 = std::max(k1 + 1, k1 * 5 / 4)) {
        for (long long k2 : {k1 / 3 + 1, k1}) {
            IVec2 k{k1, k2};
            double ck = cosine_coefficient(body, r, k);
            double dk = main_term(body, r, k).d_k;
            double knorm = k.to_vec().norm();
            c = std::max(c, std::abs(ck - dk) * std::pow(knorm, 2.5));
        }
    }
    return c;
}

}  // namespace edlab
