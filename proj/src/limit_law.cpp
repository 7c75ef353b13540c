#include "edlab/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace edlab {

namespace {

constexpr double kZeroZ = 1e-8;         // removable-singularity threshold on |p_i Z|
constexpr double kInvPiCubed = 1.0 / (kPi * kPi * kPi);

void check_frame(const LatticeFrame& f, const char* who) {
    if (std::abs(std::abs(f.det()) - 1.0) > 1e-6 || f.e1.norm2() == 0.0 ||
        f.e2.norm2() == 0.0)
        throw std::domain_error(std::string(who) + ": degenerate frame");
}

/// sum_{pcheck > cut} min(pi pcheck, c1) min(pi pcheck, c2) / pcheck^{7/2},
/// bounded in closed form by splitting at the cap crossovers.
double multiplier_tail_term(double cut, double c1, double c2) {
    double t1 = c1 / kPi;  // pi pcheck <= c1 for pcheck <= t1
    double t2 = c2 / kPi;
    if (t1 > t2) {
        std::swap(t1, t2);
        std::swap(c1, c2);
    }
    double tail = 0.0;
    double a = cut;
    if (t1 > a) {
        // both factors in the pi pcheck regime: pi^2 x^{-3/2}
        tail += kPi * kPi * 2.0 * (std::pow(a, -0.5) - std::pow(t1, -0.5));
        a = t1;
    }
    if (t2 > a) {
        // mixed regime: pi c1 x^{-5/2}
        tail += kPi * c1 * (2.0 / 3.0) *
                (std::pow(a, -1.5) - std::pow(t2, -1.5));
        a = t2;
    }
    // both capped: c1 c2 x^{-7/2}
    tail += c1 * c2 * (2.0 / 5.0) * std::pow(a, -2.5);
    return tail;
}

}  // namespace

std::vector<IVec2> prime_vectors(double k_eps) {
    std::vector<IVec2> out;
    long long cap = static_cast<long long>(std::floor(k_eps));
    double k2 = k_eps * k_eps;
    for (long long x = 0; x <= cap; ++x) {
        for (long long y = -cap; y <= cap; ++y) {
            if (static_cast<double>(x * x + y * y) > k2) continue;
            if (x == 0 && y <= 0) continue;
            if (x > 0 && y == 0 && x != 1) continue;
            if (std::gcd(x, std::abs(y)) != 1) continue;
            out.push_back({x, y});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IndexEntry> index_set(double k_eps) {
    std::vector<IVec2> primes = prime_vectors(k_eps);
    std::vector<IndexEntry> out;
    out.reserve(primes.size() * primes.size() * primes.size());
    for (IVec2 p : primes) {
        // Axis content vectors recompose to frequency nodes with a zero
        // coordinate; those belong to the axis part of the discrepancy and
        // must not enter the oscillating-part functional.
        if (p.x == 0 || p.y == 0) continue;
        for (IVec2 m1 : primes)
            for (IVec2 m2 : primes) out.push_back({p, m1, m2});
    }
    return out;
}

PhasePoint random_phase(std::size_t index_count, Rng& rng) {
    PhasePoint phase;
    phase.theta1 = {rng.next_unit(), rng.next_unit()};
    phase.theta2 = {rng.next_unit(), rng.next_unit()};
    phase.b.resize(index_count);
    for (double& v : phase.b) v = rng.next_unit();
    return phase;
}

bool hits_divisor_region(const LatticeFrame& f, double eps, double kappa) {
    check_frame(f, "hits_divisor_region");
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::domain_error("hits_divisor_region: eps outside (0, 1)");
    const double x_max = 1.0 / eps;
    const double level = kappa * std::sqrt(eps);
    const double r_search = 128.0;
    // Coefficient box for ||m1 e1 + m2 e2|| <= r_search: projecting onto the
    // dual basis gives |m1| = |det(v, e2)| <= ||v|| ||e2|| (unit covolume),
    // and symmetrically for m2.
    long long b1 = static_cast<long long>(std::ceil(r_search * f.e2.norm()));
    long long b2 = static_cast<long long>(std::ceil(r_search * f.e1.norm()));
    for (long long m2 = 0; m2 <= b2; ++m2) {
        for (long long m1 = -b1; m1 <= b1; ++m1) {
            if (m1 == 0 && m2 == 0) continue;
            double x = m1 * f.e1.x + m2 * f.e2.x;
            double y = m1 * f.e1.y + m2 * f.e2.y;
            if (x < 0.0 || (x == 0.0 && y < 0.0)) {
                x = -x;
                y = -y;
            }
            if (x <= 0.0 || x > x_max) continue;
            if (std::abs(y) * std::pow(x, 0.75) <= level) return true;
        }
    }
    return false;
}

double multiplier_tail_bound(const ConvexBody& body,
                             const std::vector<IndexEntry>& entries,
                             const LatticeFrame& l1, const LatticeFrame& l2,
                             long long pcheck_max) {
    check_frame(l1, "multiplier_tail_bound");
    check_frame(l2, "multiplier_tail_bound");
    const double ab = body.semi_a() * body.semi_b();
    double tail = 0.0;
    for (const IndexEntry& e : entries) {
        Vec2 v1 = l1.apply(e.m1);
        Vec2 v2 = l2.apply(e.m2);
        Vec2 x{e.p.x * v1.x, e.p.y * v2.x};
        double u1 = e.p.x * v1.y;
        double u2 = e.p.y * v2.y;
        // kinv / R^{3/2} collapses to ab / P(X)^{3/2} by homogeneity.
        double pref = 2.0 * kInvPiCubed * ab / std::pow(body.support(x), 1.5);
        double c1 = (std::abs(u1) < kZeroZ) ? 1e30 : 1.0 / std::abs(u1);
        double c2 = (std::abs(u2) < kZeroZ) ? 1e30 : 1.0 / std::abs(u2);
        tail += pref * multiplier_tail_term(static_cast<double>(pcheck_max), c1, c2);
    }
    return tail;
}

double evaluate_L(const ConvexBody& body, const LatticeFrame& l1,
                  const LatticeFrame& l2, const PhasePoint& phase,
                  const std::vector<IndexEntry>& entries,
                  const TruncationPolicy& policy) {
    check_frame(l1, "evaluate_L");
    check_frame(l2, "evaluate_L");
    if (phase.b.size() != entries.size())
        throw std::domain_error("evaluate_L: phase/index size mismatch");
    const double ab = body.semi_a() * body.semi_b();
    const long long pmax = policy.pcheck_max;

    std::vector<double> inv_pow(static_cast<std::size_t>(pmax) + 1, 0.0);
    for (long long p = 1; p <= pmax; ++p)
        inv_pow[static_cast<std::size_t>(p)] =
            std::pow(static_cast<double>(p), -3.5);

    constexpr double kHalfSqrt2 = 0.70710678118654752440;
    double total = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const IndexEntry& e = entries[i];
        Vec2 v1 = l1.apply(e.m1);
        Vec2 v2 = l2.apply(e.m2);
        Vec2 x{e.p.x * v1.x, e.p.y * v2.x};
        double u1 = e.p.x * v1.y;
        double u2 = e.p.y * v2.y;
        double pref = 2.0 * kInvPiCubed * ab / std::pow(body.support(x), 1.5);

        bool lim1 = std::abs(u1) < kZeroZ;
        bool lim2 = std::abs(u2) < kZeroZ;
        double inv1 = lim1 ? 0.0 : 1.0 / u1;
        double inv2 = lim2 ? 0.0 : 1.0 / u2;
        double stheta = e.p.x * (e.m1.to_vec().dot(phase.theta1)) +
                        e.p.y * (e.m2.to_vec().dot(phase.theta2));

        // Unit phasors stepped multiplicatively over the signed multiplier;
        // seeded with libm trig so accuracy is not limited by the fast path.
        auto seeded = [](double cycles) {
            double t = cycles - std::nearbyint(cycles);
            return std::complex<double>(std::cos(kTwoPi * t), std::sin(kTwoPi * t));
        };
        std::complex<double> z1 = seeded(0.5 * u1);
        std::complex<double> z2 = seeded(0.5 * u2);
        std::complex<double> zc = seeded(stheta);
        std::complex<double> zb = seeded(phase.b[i]);
        std::complex<double> w1 = z1, w2 = z2, wc = zc, wb = zb;

        double acc = 0.0;
        for (long long p = 1; p <= pmax; ++p) {
            double f1 = lim1 ? kPi * static_cast<double>(p) : w1.imag() * inv1;
            double f2 = lim2 ? kPi * static_cast<double>(p) : w2.imag() * inv2;
            // sin(2 pi (|pcheck| b - 1/8)) = Im(wb * e^{-i pi/4})
            double sb = kHalfSqrt2 * (wb.imag() - wb.real());
            acc += inv_pow[static_cast<std::size_t>(p)] * wc.real() * sb * f1 * f2;
            w1 *= z1;
            w2 *= z2;
            wc *= zc;
            wb *= zb;
        }
        total += pref * acc;
    }
    return total;
}

double node_q(const ActionConfig& cfg, const ConvexBody& body,
              const ShortVectorIndex& idx, const LatticeFrame& f1,
              const LatticeFrame& f2) {
    check_frame(f1, "node_q");
    check_frame(f2, "node_q");
    const double ab = body.semi_a() * body.semi_b();
    const double n = static_cast<double>(cfg.N);
    const double pc = static_cast<double>(idx.pcheck);
    const double apc = std::abs(pc);

    Vec2 v1 = f1.apply(idx.m1);
    Vec2 v2 = f2.apply(idx.m2);
    Vec2 x{idx.p.x * v1.x, idx.p.y * v2.x};
    double u1 = idx.p.x * v1.y;
    double u2 = idx.p.y * v2.y;
    double px = body.support(x);
    double pref = kInvPiCubed * ab / std::pow(px, 1.5);

    // Oscillator phase carries |pcheck|: it is the phase of the recomposed
    // vector pcheck (p1 m1, p2 m2), whose support value is |pcheck| P(X).
    double osc = std::sin(kTwoPi * (apc * cfg.r * n * px - 0.125));

    Vec2 g1 = gamma_phase(cfg.x.x, cfg.N, f1);
    Vec2 g2 = gamma_phase(cfg.x.y, cfg.N, f2);
    double stheta = idx.p.x * (idx.m1.to_vec().dot(g1)) +
                    idx.p.y * (idx.m2.to_vec().dot(g2));
    double arg = kTwoPi * pc * stheta +
                 kPi * (n - 1.0) / n * pc * (u1 + u2);

    double s1 = (std::abs(u1) < kZeroZ) ? kPi * pc : std::sin(kPi * pc * u1) / u1;
    double s2 = (std::abs(u2) < kZeroZ) ? kPi * pc : std::sin(kPi * pc * u2) / u2;
    return pref * osc * std::cos(arg) * s1 * s2 / std::pow(apc, 3.5);
}

EmpiricalCDF sample_limit_cdf(const ConvexBody& body,
                              const TruncationPolicy& policy,
                              std::size_t n_samples, std::uint64_t seed,
                              LimitCdfDiagnostics* diag) {
    if (n_samples < 1)
        throw std::domain_error("sample_limit_cdf: n_samples must be >= 1");
    std::vector<IndexEntry> entries = index_set(policy.k_eps);
    std::vector<double> samples;
    std::vector<std::uint64_t> seeds;
    samples.reserve(n_samples);
    seeds.reserve(n_samples);
    LimitCdfDiagnostics local;
    for (std::size_t i = 0; i < n_samples; ++i) {
        std::uint64_t s = derive_seed(seed, i);
        seeds.push_back(s);
        auto [l1, l2] = haar_sample_pair(derive_seed(s, 0));
        if (policy.lattice_eps > 0.0) {
            // Condition on the compact part: redraw until neither frame has a
            // vector in the small-divisor region. Acceptance is a few percent
            // per pair, so the cap is far from binding.
            constexpr long long kMaxFrameDraws = 100000;
            for (long long attempt = 0;
                 (hits_divisor_region(l1, policy.lattice_eps) ||
                  hits_divisor_region(l2, policy.lattice_eps)) &&
                 attempt < kMaxFrameDraws;
                 ++attempt) {
                ++local.frame_redraws;
                std::tie(l1, l2) = haar_sample_pair(derive_seed(s, 2 + attempt));
            }
        }
        Rng rng(derive_seed(s, 1));
        PhasePoint phase = random_phase(entries.size(), rng);

        TruncationPolicy local_policy = policy;
        double tail = multiplier_tail_bound(body, entries, l1, l2,
                                            local_policy.pcheck_max);
        while (tail > policy.tail_cap &&
               local_policy.pcheck_max < 64 * policy.pcheck_max) {
            local_policy.pcheck_max *= 2;
            ++local.escalations;
            tail = multiplier_tail_bound(body, entries, l1, l2,
                                         local_policy.pcheck_max);
        }
        local.max_tail_bound = std::max(local.max_tail_bound, tail);
        local.max_pcheck_used =
            std::max(local.max_pcheck_used, local_policy.pcheck_max);
        samples.push_back(
            evaluate_L(body, l1, l2, phase, entries, local_policy));
    }
    if (diag) *diag = local;
    return EmpiricalCDF::from_samples(std::move(samples), std::move(seeds));
}

}  // namespace edlab
