#include "edlab/ergodic_sum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "edlab/detail/fast_trig.hpp"

namespace edlab {

namespace {

constexpr double kDivisorFloor = 1e-12;

double frac_signed(double y) {
    // nearest-integer remainder; the (-1/2, 1/2] tie rule only differs on a
    // measure-zero set and is enforced where it matters (signed_fraction).
    return y - std::nearbyint(y);
}

double sin_pi(double y) {
    double sn, cs;
    detail::sincos_2pi(0.5 * y, sn, cs);
    return sn;
}

}  // namespace

SignedFraction signed_fraction(long long k, double alpha) {
    double y = static_cast<double>(k) * alpha;
    double c = std::ceil(y - 0.5);
    double v = y - c;
    if (v <= -0.5) { v += 1.0; c -= 1.0; }
    if (v > 0.5) { v -= 1.0; c += 1.0; }
    return {v, static_cast<long long>(-c)};
}

double dirichlet_cosine_sum(double A, double B, long long N) {
    if (N < 1) throw std::domain_error("dirichlet_cosine_sum: N must be >= 1");
    double sh = std::sin(0.5 * B);
    if (std::abs(sh) > 1e-12) {
        return std::cos(A + 0.5 * (N - 1) * B) * std::sin(0.5 * N * B) / sh;
    }
    double acc = 0.0;
    for (long long n = 0; n < N; ++n) acc += std::cos(A + n * B);
    return acc;
}

double discrepancy_direct(const ActionConfig& cfg, const ConvexBody& body) {
    cfg.validate(body);
    const long long N = cfg.N;
    const double a = body.semi_a();
    const double b = body.semi_b();
    const double r2 = cfg.r * cfg.r;

    std::vector<double> q2(static_cast<std::size_t>(N));
    for (long long n = 0; n < N; ++n) {
        double u = lift_to_half_open(cfg.x.y + n * cfg.alpha.y) / b;
        q2[static_cast<std::size_t>(n)] = u * u;
    }
    std::sort(q2.begin(), q2.end());

    long long count = 0;
    for (long long n = 0; n < N; ++n) {
        double u = lift_to_half_open(cfg.x.x + n * cfg.alpha.x) / a;
        double rem = r2 - u * u;
        if (rem < 0.0) continue;
        count += std::upper_bound(q2.begin(), q2.end(), rem) - q2.begin();
    }
    return static_cast<double>(count) -
           static_cast<double>(N) * static_cast<double>(N) * body.volume(cfg.r);
}

double node_term_f(const ActionConfig& cfg, const ConvexBody& body, IVec2 k) {
    if (k.x == 0 || k.y == 0)
        throw std::domain_error("node_term_f: requires k1 k2 != 0");
    double f1 = signed_fraction(k.x, cfg.alpha.x).value;
    double f2 = signed_fraction(k.y, cfg.alpha.y).value;
    double s1 = std::sin(kPi * f1);
    double s2 = std::sin(kPi * f2);
    if (std::abs(s1) < kDivisorFloor || std::abs(s2) < kDivisorFloor)
        throw ResonantNodeError(k);
    double ck = cosine_coefficient(body, cfg.r, k);
    double theta = kTwoPi * (k.x * cfg.x.x + k.y * cfg.x.y) +
                   kPi * (cfg.N - 1) * (f1 + f2);
    return ck * std::cos(theta) * std::sin(kPi * cfg.N * f1) *
           std::sin(kPi * cfg.N * f2) /
           (std::sqrt(static_cast<double>(cfg.N)) * s1 * s2);
}

double node_term_g(const ActionConfig& cfg, const ConvexBody& body, IVec2 k,
                   PhaseConvention conv) {
    if (k.x == 0 || k.y == 0)
        throw std::domain_error("node_term_g: requires k1 k2 != 0");
    double f1 = signed_fraction(k.x, cfg.alpha.x).value;
    double f2 = signed_fraction(k.y, cfg.alpha.y).value;
    if (f1 == 0.0 || f2 == 0.0) throw ResonantNodeError(k);
    double dk = main_term(body, cfg.r, k, false, conv).d_k;
    double theta = kTwoPi * (k.x * cfg.x.x + k.y * cfg.x.y) +
                   kPi * (cfg.N - 1) * (f1 + f2);
    return dk * std::cos(theta) * std::sin(kPi * cfg.N * f1) *
           std::sin(kPi * cfg.N * f2) /
           (kPi * kPi * std::sqrt(static_cast<double>(cfg.N)) * f1 * f2);
}

namespace {

// Shared threshold table C * n^{-3/4}; reused across Monte Carlo draws.
const std::vector<double>& threshold_table(long long count, double c) {
    static std::mutex mu;
    static std::map<std::pair<long long, double>, std::unique_ptr<std::vector<double>>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{count, c}];
    if (!slot) {
        slot = std::make_unique<std::vector<double>>(static_cast<std::size_t>(count) + 1);
        auto& t = *slot;
        for (long long n = 1; n <= count; ++n)
            t[static_cast<std::size_t>(n)] = c * std::pow(static_cast<double>(n), -0.75);
    }
    return *slot;
}

}  // namespace

bool in_E_N(Vec2 alpha, long long N, double eps, double en_cut_override) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::domain_error("in_E_N: eps outside (0, 1)");
    if (N < 1) throw std::domain_error("in_E_N: N must be >= 1");
    long long M = static_cast<long long>(std::floor(static_cast<double>(N) / eps));
    double cut = en_cut_override > 0.0
                     ? en_cut_override
                     : std::sqrt(eps) / std::pow(static_cast<double>(N), 0.25);
    const std::vector<double>& thr = threshold_table(M, cut);

    const double coords[2] = {alpha.x, alpha.y};
    for (double a : coords) {
        constexpr long long kBlock = 1024;
        for (long long n0 = 1; n0 <= M; n0 += kBlock) {
            long long n1 = std::min(M, n0 + kBlock - 1);
            int hit = 0;
            for (long long n = n0; n <= n1; ++n) {
                double f = frac_signed(static_cast<double>(n) * a);
                hit |= (std::abs(f) < thr[static_cast<std::size_t>(n)]);
            }
            if (hit) return true;
        }
    }
    return false;
}

std::vector<long long> admissible_axis(const ActionConfig& cfg, double alpha_i,
                                       NodeFilter filter) {
    long long kmax = static_cast<long long>(std::ceil(cfg.k_limit())) - 1;
    double cut = cfg.s_cut();
    double floor_k = (filter == NodeFilter::SHat)
                         ? static_cast<double>(cfg.N) * cfg.eps * cfg.eps * cfg.eps
                         : 0.0;
    std::vector<long long> out;
    for (long long k = 1; k <= kmax; ++k) {
        if (static_cast<double>(k) <= floor_k) continue;
        double f = frac_signed(static_cast<double>(k) * alpha_i);
        if (std::pow(static_cast<double>(k), 0.75) * std::abs(f) < cut)
            out.push_back(k);
    }
    return out;
}

std::vector<IVec2> node_set(const ActionConfig& cfg, NodeFilter filter) {
    auto a1 = admissible_axis(cfg, cfg.alpha.x, filter);
    auto a2 = admissible_axis(cfg, cfg.alpha.y, filter);
    std::vector<IVec2> out;
    out.reserve(4 * a1.size() * a2.size());
    for (long long k1 : a1)
        for (long long k2 : a2)
            for (long long s1 : {-1LL, 1LL})
                for (long long s2 : {-1LL, 1LL})
                    out.push_back({s1 * k1, s2 * k2});
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct AxisTables {
    std::vector<double> pf;   // sin(pi N fr)/sin(pi fr) * cos(phi)
    std::vector<double> pg;   // sin(pi N fr)/(pi fr) * cos(phi)
    long long resonant = 0;
};

AxisTables axis_tables(double x_i, double alpha_i, long long N, long long kmax) {
    AxisTables t;
    t.pf.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
    t.pg.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
    const double half_nm1 = 0.5 * static_cast<double>(N - 1);
    for (long long k = 1; k <= kmax; ++k) {
        double fr = frac_signed(static_cast<double>(k) * alpha_i);
        double snd = sin_pi(fr);
        if (std::abs(snd) < kDivisorFloor) {
            ++t.resonant;
            continue;
        }
        double sNd = sin_pi(static_cast<double>(N) * fr);
        double sphi, cphi;
        detail::sincos_2pi(static_cast<double>(k) * x_i + half_nm1 * fr, sphi, cphi);
        auto i = static_cast<std::size_t>(k);
        t.pf[i] = sNd / snd * cphi;
        t.pg[i] = sNd / (kPi * fr) * cphi;
    }
    return t;
}

/// Row of the full-rectangle sum: sum_k2 U(sqrt(A + bsq[k2])) * p2[k2].
/// The leading Bessel region is delegated; the asymptotic tail is inlined so
/// the compiler can vectorize it.
double delta1_row(double A, const std::vector<double>& bsq,
                  const std::vector<double>& p2, long long kmax) {
    constexpr double kAsymCut = 400.0;  // s^2 above which asymptotics apply
    long long split = 0;
    if (A < kAsymCut) {
        double need = kAsymCut - A;
        split = std::upper_bound(bsq.begin() + 1, bsq.begin() + kmax + 1, need) -
                (bsq.begin() + 1);
    }
    double acc = 0.0;
    for (long long k = 1; k <= split; ++k) {
        auto i = static_cast<std::size_t>(k);
        acc += detail::profile_kernel(std::sqrt(A + bsq[i])) * p2[i];
    }
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    constexpr double kInvTwoPi = 0.15915494309189533577;
    constexpr double kInvPi = 0.31830988618379067154;
    double acc2 = 0.0;
    for (long long k = split + 1; k <= kmax; ++k) {
        auto i = static_cast<std::size_t>(k);
        double s2 = A + bsq[i];
        double s = std::sqrt(s2);
        double sn, cs;
        detail::sincos_2pi(s, sn, cs);
        double recip = 1.0 / s;
        double iz = recip * kInvTwoPi;
        double iz2 = iz * iz;
        double P = 1.0 + 15.0 / 128.0 * iz2;
        double Q = 3.0 / 8.0 * iz - 315.0 / 3072.0 * iz2 * iz;
        double combo = kInvSqrt2 * ((sn - cs) * P + (sn + cs) * Q);
        double u = combo * kInvPi * recip * std::sqrt(recip);
        acc2 += u * p2[i];
    }
    return acc + acc2;
}

}  // namespace

DeltaLadder delta_ladder(const ActionConfig& cfg, const ConvexBody& body,
                         const LadderOptions& opts) {
    cfg.validate(body);
    DeltaLadder out;
    const long long kmax = static_cast<long long>(std::ceil(cfg.k_limit())) - 1;
    const double a = body.semi_a();
    const double b = body.semi_b();
    const double r = cfg.r;
    const double amp_c = a * b * r * std::sqrt(r);          // c_k = amp_c U(s)
    const double amp_d = amp_c / kPi;                       // d_k = amp_d s^{-3/2} sin(..)
    const double norm = 4.0 / std::sqrt(static_cast<double>(cfg.N));

    AxisTables t1 = axis_tables(cfg.x.x, cfg.alpha.x, cfg.N, kmax);
    AxisTables t2 = axis_tables(cfg.x.y, cfg.alpha.y, cfg.N, kmax);
    out.resonant_skips = t1.resonant + t2.resonant;

    std::vector<double> bsq(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (long long k = 1; k <= kmax; ++k) {
        double t = r * b * static_cast<double>(k);
        bsq[static_cast<std::size_t>(k)] = t * t;
    }

    auto s_of = [&](long long k1, long long k2) {
        double u = r * a * static_cast<double>(k1);
        return std::sqrt(u * u + bsq[static_cast<std::size_t>(k2)]);
    };
    auto d_profile = [&](double s) {
        // d_k reduces to amp_d * s^{-3/2} * sin(phase) for these bodies
        // (K^{-1/2}(k/|k|) / |k|^{3/2} = a b (s/r)^{3/2} / |k|^3 ... folded).
        double sn, cs;
        if (opts.conv == PhaseConvention::inside) {
            detail::sincos_2pi(s - 0.125, sn, cs);
        } else {
            detail::sincos_2pi(s, sn, cs);
            sn = sn * std::cos(0.125) - cs * std::sin(0.125);
        }
        return amp_d * sn / (s * std::sqrt(s));
    };

    auto a1 = admissible_axis(cfg, cfg.alpha.x, NodeFilter::S);
    auto a2 = admissible_axis(cfg, cfg.alpha.y, NodeFilter::S);
    auto h1 = admissible_axis(cfg, cfg.alpha.x, NodeFilter::SHat);
    auto h2 = admissible_axis(cfg, cfg.alpha.y, NodeFilter::SHat);
    out.s_size = 4 * a1.size() * a2.size();
    out.shat_size = 4 * h1.size() * h2.size();

    double d2 = 0.0;
    for (long long k1 : a1) {
        double row = 0.0;
        for (long long k2 : a2)
            row += detail::profile_kernel(s_of(k1, k2)) *
                   t2.pf[static_cast<std::size_t>(k2)];
        d2 += amp_c * row * t1.pf[static_cast<std::size_t>(k1)];
    }
    out.delta2 = norm * d2;

    double d3 = 0.0;
    double dp = 0.0;
    for (long long k1 : h1) {
        double row3 = 0.0, rowp = 0.0;
        for (long long k2 : h2) {
            double s = s_of(k1, k2);
            row3 += amp_c * detail::profile_kernel(s) *
                    t2.pf[static_cast<std::size_t>(k2)];
            rowp += d_profile(s) * t2.pg[static_cast<std::size_t>(k2)];
        }
        d3 += row3 * t1.pf[static_cast<std::size_t>(k1)];
        dp += rowp * t1.pg[static_cast<std::size_t>(k1)];
    }
    out.delta3 = norm * d3;
    out.delta_prime = norm * dp;

    if (opts.with_delta1) {
        double d1 = 0.0;
        for (long long k1 = 1; k1 <= kmax; ++k1) {
            double u = r * a * static_cast<double>(k1);
            d1 += delta1_row(u * u, bsq, t2.pf, kmax) *
                  t1.pf[static_cast<std::size_t>(k1)];
        }
        out.delta1 = norm * amp_c * d1;
        out.has_delta1 = true;
    }
    return out;
}

double fourier_reconstruction(const ActionConfig& cfg, const ConvexBody& body,
                              long long k_max) {
    cfg.validate(body);
    const long long K = k_max;
    const long long N = cfg.N;

    // Re of the orbit Dirichlet kernel per axis frequency.
    auto re_kernel = [&](double x_i, double alpha_i) {
        std::vector<double> re(static_cast<std::size_t>(K) + 1, 0.0);
        re[0] = static_cast<double>(N);
        for (long long k = 1; k <= K; ++k) {
            double fr = signed_fraction(k, alpha_i).value;
            double sh = std::sin(kPi * fr);
            double ratio = (std::abs(sh) < kDivisorFloor)
                               ? static_cast<double>(N)
                               : std::sin(kPi * N * fr) / sh;
            double arg = kTwoPi * k * x_i + kPi * (N - 1) * fr;
            re[static_cast<std::size_t>(k)] = ratio * std::cos(arg);
        }
        return re;
    };
    std::vector<double> re1 = re_kernel(cfg.x.x, cfg.alpha.x);
    std::vector<double> re2 = re_kernel(cfg.x.y, cfg.alpha.y);

    double total = 0.0;
    for (long long k1 = 1; k1 <= K; ++k1)
        total += 2.0 * coefficient(body, cfg.r, {k1, 0}) *
                 re1[static_cast<std::size_t>(k1)] * re2[0];
    for (long long k2 = 1; k2 <= K; ++k2)
        total += 2.0 * coefficient(body, cfg.r, {0, k2}) * re1[0] *
                 re2[static_cast<std::size_t>(k2)];
    for (long long k1 = 1; k1 <= K; ++k1) {
        double row = 0.0;
        for (long long k2 = 1; k2 <= K; ++k2)
            row += coefficient(body, cfg.r, {k1, k2}) *
                   re2[static_cast<std::size_t>(k2)];
        total += 4.0 * row * re1[static_cast<std::size_t>(k1)];
    }
    return total;
}

}  // namespace edlab
