#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "edlab/convex_body.hpp"
#include "edlab/fourier.hpp"
#include "edlab/geom.hpp"

namespace edlab {

/// Thrown by single-node evaluation when a divisor sin(pi {k_i alpha_i})
/// vanishes; callers with random alpha never see this, a nonzero skip counter
/// in batch sums flags a degenerate run.
class ResonantNodeError : public std::runtime_error {
public:
    explicit ResonantNodeError(IVec2 k)
        : std::runtime_error("resonant node ({k_i alpha_i} = 0) at k = (" +
                             std::to_string(k.x) + "," + std::to_string(k.y) + ")"),
          k(k) {}
    IVec2 k;
};

/// One configuration of the square orbit: scale, base point, action vector,
/// horizon N and the cutoff parameter epsilon.
struct ActionConfig {
    double r = 0.3;
    Vec2 x{};
    Vec2 alpha{};
    long long N = 1;
    double eps = 0.1;

    // The small-divisor thresholds appear twice in the source with different
    // constants (eps^{1/2} in the E_N step, eps^{-2} in the node-set
    // definition). Both stay configurable; 0 means "use the default formula".
    double en_cut_override = 0.0;
    double s_cut_override = 0.0;

    /// Threshold for E_N membership: |n|^{3/4} |{n alpha_i}| < en_cut().
    double en_cut() const {
        return en_cut_override > 0.0
                   ? en_cut_override
                   : std::sqrt(eps) / std::pow(static_cast<double>(N), 0.25);
    }
    /// Threshold for the node sets: |k_i|^{3/4} |{k_i alpha_i}| < s_cut().
    double s_cut() const {
        return s_cut_override > 0.0
                   ? s_cut_override
                   : 1.0 / (eps * eps * std::pow(static_cast<double>(N), 0.25));
    }
    /// Exclusive frequency cutoff N/eps.
    double k_limit() const { return static_cast<double>(N) / eps; }

    void validate(const ConvexBody& body) const {
        if (!(r > 0.0) || !(r < body.r0()))
            throw std::domain_error("ActionConfig: r outside (0, r0)");
        if (N < 1) throw std::domain_error("ActionConfig: N must be >= 1");
        if (!(eps > 0.0) || !(eps < 1.0))
            throw std::domain_error("ActionConfig: eps outside (0, 1)");
    }
};

/// {k a} = k a + l with the unique integer l putting the value in (-1/2, 1/2].
struct SignedFraction {
    double value = 0.0;
    long long l = 0;
};

SignedFraction signed_fraction(long long k, double alpha);

/// sum_{n=0}^{N-1} cos(A + nB), closed form away from the removable
/// singularity at sin(B/2) = 0, direct summation at it.
double dirichlet_cosine_sum(double A, double B, long long N);

/// The discrepancy of Eq-(1) form: exact orbit count inside C_r minus
/// N^2 Vol(C_r). Counting is O(N log N) via per-coordinate lifts and a sorted
/// section test; tests hold it against the quadratic double-loop oracle.
double discrepancy_direct(const ActionConfig& cfg, const ConvexBody& body);

/// Normalized Fourier-side value of a single node with k1 k2 != 0.
double node_term_f(const ActionConfig& cfg, const ConvexBody& body, IVec2 k);

/// Step-5 variant of the node value: main term d_k and polynomial divisors
/// pi {k_i alpha_i} in place of sin(pi {k_i alpha_i}).
double node_term_g(const ActionConfig& cfg, const ConvexBody& body, IVec2 k,
                   PhaseConvention conv = PhaseConvention::inside);

/// Membership of alpha in the exceptional set E_N.
bool in_E_N(Vec2 alpha, long long N, double eps, double en_cut_override = 0.0);

/// Conditioning threshold for samplers that need alpha away from small
/// divisors. The set with the full constant sqrt(eps) N^{-1/4} covers the
/// whole torus at moderate eps (even the golden ratio, the extremal point for
/// this statistic, lands inside), so samplers condition on the
/// half-constant set instead, whose complement has small positive measure
/// (~1-4% per coordinate pair at eps = 0.05..0.1).
inline double sampling_en_cut(long long N, double eps) {
    return 0.5 * std::sqrt(eps) / std::pow(static_cast<double>(N), 0.25);
}

enum class NodeFilter { S, SHat };

/// Positive frequencies k on one axis passing the small-divisor test (and the
/// k > N eps^3 floor for SHat). The node sets are cartesian products of these
/// per-coordinate sets over both sign choices.
std::vector<long long> admissible_axis(const ActionConfig& cfg, double alpha_i,
                                       NodeFilter filter);

/// All nodes of S(N, alpha) or SHat(N, alpha), sorted lexicographically.
std::vector<IVec2> node_set(const ActionConfig& cfg, NodeFilter filter);

struct DeltaLadder {
    double delta1 = 0.0;      // cutoff |k_i| < N/eps
    double delta2 = 0.0;      // restricted to S(N, alpha)
    double delta3 = 0.0;      // restricted to SHat(N, alpha)
    double delta_prime = 0.0; // SHat with the g-form summand
    long long resonant_skips = 0;
    std::size_t s_size = 0;
    std::size_t shat_size = 0;
    bool has_delta1 = false;
};

struct LadderOptions {
    bool with_delta1 = true;  // the full-rectangle sum is the expensive member
    PhaseConvention conv = PhaseConvention::inside;
};

DeltaLadder delta_ladder(const ActionConfig& cfg, const ConvexBody& body,
                         const LadderOptions& opts = {});

/// Orbit sum of the truncated Fourier expansion of the centered indicator:
/// all nodes 0 < max|k_i| <= k_max (axis nodes included) summed over the
/// N x N orbit through Dirichlet kernels. Converges to discrepancy_direct as
/// k_max grows.
double fourier_reconstruction(const ActionConfig& cfg, const ConvexBody& body,
                              long long k_max);

}  // namespace edlab
