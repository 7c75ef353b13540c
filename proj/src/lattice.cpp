#include "edlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "edlab/rng.hpp"

namespace edlab {

namespace {

constexpr double kDetTolerance = 1e-6;
constexpr double kIntegerTolerance = 1e-6;
constexpr double kHaarYCutoff = 1e3;
constexpr double kSqrt3Half = 0.86602540378443864676;

/// Canonical representative of {v, -v}: positive first coordinate, or zero
/// first coordinate and positive second.
Vec2 canonical_sign(Vec2 v) {
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) return -v;
    return v;
}

/// Total order used for tie-breaking: norm first, then the canonical-sign
/// preference, then plain coordinates.
bool frame_less(Vec2 a, Vec2 b) {
    double na = a.norm2(), nb = b.norm2();
    if (na != nb) return na < nb;
    Vec2 ca = canonical_sign(a), cb = canonical_sign(b);
    if (ca.x != cb.x) return ca.x > cb.x;
    return ca.y > cb.y;
}

bool nearly_parallel(Vec2 a, Vec2 b) {
    double cross = a.x * b.y - a.y * b.x;
    return std::abs(cross) < 1e-12 * std::max(1.0, a.norm() * b.norm());
}

}  // namespace

LatticeFrame reduce(Vec2 b1, Vec2 b2) {
    double det = b1.x * b2.y - b1.y * b2.x;
    if (std::abs(std::abs(det) - 1.0) > kDetTolerance)
        throw std::domain_error("reduce: basis not unimodular");

    // Lagrange reduction.
    for (int iter = 0; iter < 256; ++iter) {
        if (b1.norm2() > b2.norm2()) std::swap(b1, b2);
        double mu = std::nearbyint(b2.dot(b1) / b1.norm2());
        if (mu == 0.0) break;
        b2 = b2 - b1 * mu;
    }
    if (b1.norm2() > b2.norm2()) std::swap(b1, b2);

    // Canonicalize over the short combinations; after reduction the true
    // shortest and second-shortest vectors lie within coefficient range 2.
    std::vector<Vec2> candidates;
    for (int c1 = -2; c1 <= 2; ++c1)
        for (int c2 = -2; c2 <= 2; ++c2) {
            if (c1 == 0 && c2 == 0) continue;
            candidates.push_back(b1 * c1 + b2 * c2);
        }
    std::sort(candidates.begin(), candidates.end(), frame_less);
    LatticeFrame frame;
    frame.e1 = canonical_sign(candidates.front());
    for (const Vec2& v : candidates) {
        if (!nearly_parallel(v, frame.e1)) {
            frame.e2 = canonical_sign(v);
            break;
        }
    }
    return frame;
}

LatticeFrame flow_lattice(long long N, double alpha_i) {
    if (N < 1) throw std::domain_error("flow_lattice: N must be >= 1");
    double n = static_cast<double>(N);
    return reduce({1.0 / n, n * alpha_i}, {0.0, n});
}

IVec2 coords_in_frame(const LatticeFrame& frame, Vec2 v) {
    double det = frame.det();
    double c1 = (v.x * frame.e2.y - v.y * frame.e2.x) / det;
    double c2 = (frame.e1.x * v.y - frame.e1.y * v.x) / det;
    double r1 = std::nearbyint(c1);
    double r2 = std::nearbyint(c2);
    if (std::abs(c1 - r1) > kIntegerTolerance || std::abs(c2 - r2) > kIntegerTolerance)
        throw std::runtime_error("coords_in_frame: non-integer coordinates");
    return {static_cast<long long>(r1), static_cast<long long>(r2)};
}

Correspondence correspondence(const ActionConfig& cfg, IVec2 k,
                              const LatticeFrame& f1, const LatticeFrame& f2) {
    double n = static_cast<double>(cfg.N);
    Vec2 v1{static_cast<double>(k.x) / n, n * signed_fraction(k.x, cfg.alpha.x).value};
    Vec2 v2{static_cast<double>(k.y) / n, n * signed_fraction(k.y, cfg.alpha.y).value};
    return {coords_in_frame(f1, v1), coords_in_frame(f2, v2)};
}

IVec2 correspondence_inverse(const Correspondence& m, long long N,
                             const LatticeFrame& f1, const LatticeFrame& f2) {
    double n = static_cast<double>(N);
    double k1 = f1.apply(m.m1).x * n;
    double k2 = f2.apply(m.m2).x * n;
    double r1 = std::nearbyint(k1);
    double r2 = std::nearbyint(k2);
    if (std::abs(k1 - r1) > 1e-4 || std::abs(k2 - r2) > 1e-4)
        throw std::runtime_error("correspondence_inverse: non-integer frequency");
    return {static_cast<long long>(r1), static_cast<long long>(r2)};
}

namespace {

/// Signed content of a nonzero integer vector: v = c * m with m prime
/// (coprime coordinates, positive first nonzero coordinate).
long long signed_content(IVec2 v, IVec2& prime) {
    if (v.x == 0 && v.y == 0)
        throw std::domain_error("prime_decompose: zero vector");
    long long g = std::gcd(std::abs(v.x), std::abs(v.y));
    long long lead = (v.x != 0) ? v.x : v.y;
    long long c = (lead > 0) ? g : -g;
    prime = {v.x / c, v.y / c};
    return c;
}

}  // namespace

ShortVectorIndex prime_decompose(IVec2 M1, IVec2 M2) {
    ShortVectorIndex idx;
    long long c1 = signed_content(M1, idx.m1);
    long long c2 = signed_content(M2, idx.m2);
    long long g = std::gcd(std::abs(c1), std::abs(c2));
    idx.pcheck = (c1 > 0) ? g : -g;
    idx.p = {c1 / idx.pcheck, c2 / idx.pcheck};
    return idx;
}

Vec2 gamma_phase(double x_i, long long N, const LatticeFrame& frame) {
    double s = static_cast<double>(N) * x_i;
    return {s * frame.e1.x, s * frame.e2.x};
}

double haar_tail_mass() {
    // Mass of the fundamental domain above the y-cutoff relative to the full
    // domain area pi/3 (width-1 strip, density y^{-2}).
    return (1.0 / kHaarYCutoff) / (kPi / 3.0);
}

LatticeFrame haar_sample(std::uint64_t seed) {
    Rng rng(seed);
    double x = 0.0, y = 1.0;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 10000)
            throw std::runtime_error("haar_sample: rejection budget exhausted");
        // Inverse-CDF draw of y with density y^{-2} on [sqrt(3)/2, cutoff].
        double lo = 1.0 / kHaarYCutoff;
        double hi = 1.0 / kSqrt3Half;
        double inv = rng.next_in(lo, hi);
        y = 1.0 / inv;
        x = rng.next_in(-0.5, 0.5);
        if (x * x + y * y >= 1.0) break;
    }
    // Point x + iy in the fundamental domain gives the basis (1,0), (x,y)
    // normalized to covolume 1, plus a uniform rotation of the whole lattice.
    double s = 1.0 / std::sqrt(y);
    Vec2 b1{s, 0.0};
    Vec2 b2{x * s, y * s};
    double phi = rng.next_in(0.0, kTwoPi);
    double c = std::cos(phi), sn = std::sin(phi);
    auto rot = [&](Vec2 v) { return Vec2{c * v.x - sn * v.y, sn * v.x + c * v.y}; };
    return reduce(rot(b1), rot(b2));
}

std::pair<LatticeFrame, LatticeFrame> haar_sample_pair(std::uint64_t seed) {
    return {haar_sample(derive_seed(seed, 1)), haar_sample(derive_seed(seed, 2))};
}

}  // namespace edlab
