#pragma once

#include <cstdint>
#include <vector>

#include "edlab/convex_body.hpp"
#include "edlab/empirical_cdf.hpp"
#include "edlab/ergodic_sum.hpp"
#include "edlab/lattice.hpp"
#include "edlab/rng.hpp"

namespace edlab {

/// One term of the limit series: a prime vector p and a pair of prime vectors
/// (m1, m2). The signed multiplier runs separately.
struct IndexEntry {
    IVec2 p{};
    IVec2 m1{};
    IVec2 m2{};
};

/// All prime vectors (coprime coordinates, positive first nonzero coordinate)
/// with Euclidean norm <= k_eps, sorted lexicographically.
std::vector<IVec2> prime_vectors(double k_eps);

/// Cartesian index set {p} x {m1} x {m2} over prime_vectors(k_eps), in a
/// fixed deterministic order; content vectors p with a zero coordinate are
/// excluded (they recompose to axis nodes, which belong to the axis part of
/// the discrepancy). The random phases b are stored parallel to it.
std::vector<IndexEntry> index_set(double k_eps);

/// Torus phases of the limit law: a pair of points theta^i on T^2 and one
/// circle value b per index entry.
struct PhasePoint {
    Vec2 theta1{};
    Vec2 theta2{};
    std::vector<double> b;
};

/// Uniform draw of a PhasePoint matching an index set.
PhasePoint random_phase(std::size_t index_count, Rng& rng);

struct TruncationPolicy {
    long long pcheck_max = 20;
    double k_eps = 8.0;
    /// Declared ceiling for the multiplier-tail bound; samplers escalate
    /// pcheck_max when the computed bound exceeds it.
    double tail_cap = 1e-4;
    /// When positive, Haar draws are conditioned on both frames avoiding the
    /// small-divisor region (see hits_divisor_region), restricting the law to
    /// the compact part of the space of lattices that matches the
    /// finite-horizon samplers' conditioning on alpha.
    double lattice_eps = 0.0;
};

/// True when the lattice spanned by the frame contains a nonzero vector in
/// the small-divisor region {0 < x <= 1/eps, |y| x^{3/4} <= kappa sqrt(eps)}.
/// For a flow lattice of alpha at horizon N this is exactly the exceptional
/// condition "|<q alpha>| <= kappa sqrt(eps) N^{-1/4} q^{-3/4} for some
/// q <= N/eps"; for Haar frames it carves out the horizon-independent
/// envelope of that set. The search is capped at vector norm 128; region
/// points beyond the cap require a lattice vector within 1e-3 of the y-axis
/// and are negligible at the sampler's statistical tolerances.
bool hits_divisor_region(const LatticeFrame& f, double eps,
                         double kappa = 0.5);

/// Rigorous bound on the series mass dropped by cutting the signed multiplier
/// at pcheck_max, for a concrete frame pair: per index, |sin(pi pcheck u)/u|
/// is capped by min(pi pcheck, 1/|u|) and the multiplier tail is integrated in
/// closed form.
double multiplier_tail_bound(const ConvexBody& body,
                             const std::vector<IndexEntry>& entries,
                             const LatticeFrame& l1, const LatticeFrame& l2,
                             long long pcheck_max);

/// The limit functional: (1/pi^3) sum over signed multipliers and the index
/// set of curvature-weighted oscillating terms in the short-vector
/// coordinates (X, Z) of the two frames. Z-divisors below 1e-8 take the
/// removable-singularity limit. Throws on degenerate frames.
double evaluate_L(const ConvexBody& body, const LatticeFrame& l1,
                  const LatticeFrame& l2, const PhasePoint& phase,
                  const std::vector<IndexEntry>& entries,
                  const TruncationPolicy& policy);

/// Finite-horizon lattice-side node value q at one decomposed index
/// (pcheck, p, m1, m2): the counterpart of the frequency-side summand g under
/// the node <-> short-vector dictionary. Summing q over all decompositions
/// with a recomposition-norm cap equals the g-sum over the corresponding
/// frequencies.
double node_q(const ActionConfig& cfg, const ConvexBody& body,
              const ShortVectorIndex& idx, const LatticeFrame& f1,
              const LatticeFrame& f2);

struct LimitCdfDiagnostics {
    double max_tail_bound = 0.0;
    long long escalations = 0;
    long long max_pcheck_used = 0;
    /// Haar pairs rejected by the small-divisor conditioning (lattice_eps).
    long long frame_redraws = 0;
};

/// Monte Carlo of the limit law: Haar frame pairs, uniform torus phases,
/// uniform b per index; returns the empirical CDF of evaluate_L values with
/// per-sample seeds recorded.
EmpiricalCDF sample_limit_cdf(const ConvexBody& body,
                              const TruncationPolicy& policy,
                              std::size_t n_samples, std::uint64_t seed,
                              LimitCdfDiagnostics* diag = nullptr);

}  // namespace edlab
