#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "edlab/ergodic_sum.hpp"
#include "edlab/geom.hpp"

namespace edlab {

/// A reduced basis of a unimodular lattice in R^2: e1 is the shortest nonzero
/// vector, e2 the shortest among vectors with minimal nonzero component
/// orthogonal to e1. Signs and equal-norm ties are canonicalized (norm, then
/// positive first coordinate, then positive second) so frames are
/// deterministic functions of the lattice.
struct LatticeFrame {
    Vec2 e1{};
    Vec2 e2{};

    double det() const { return e1.x * e2.y - e1.y * e2.x; }
    /// v = c1 e1 + c2 e2 for real coefficients.
    Vec2 apply(Vec2 c) const {
        return {c.x * e1.x + c.y * e2.x, c.x * e1.y + c.y * e2.y};
    }
    Vec2 apply(IVec2 c) const { return apply(c.to_vec()); }
};

/// Gauss/Lagrange reduction of an (almost) unimodular basis. Throws
/// std::domain_error when |det| deviates from 1 by more than 1e-6.
LatticeFrame reduce(Vec2 b1, Vec2 b2);

/// Reduced frame of L(N, alpha_i) = g_{ln N} Lambda_{alpha_i} Z^2 with
/// g_T = diag(e^{-T}, e^{T}) and Lambda the unipotent shear by alpha_i;
/// raw basis columns (1/N, N alpha_i) and (0, N).
LatticeFrame flow_lattice(long long N, double alpha_i);

/// Integer coordinates of a lattice vector v in the frame. Throws
/// std::runtime_error when the solved coefficients are farther than 1e-6 from
/// integers (internal-consistency guard).
IVec2 coords_in_frame(const LatticeFrame& frame, Vec2 v);

/// The node <-> short-vector dictionary: m^i are the frame coordinates of
/// (k_i/N, N{k_i alpha_i}) in L(N, alpha_i).
struct Correspondence {
    IVec2 m1{};
    IVec2 m2{};
};

Correspondence correspondence(const ActionConfig& cfg, IVec2 k,
                              const LatticeFrame& f1, const LatticeFrame& f2);

/// Inverse dictionary: recover k from (m1, m2). Throws when the recovered
/// first coordinates are not integers to 1e-6.
IVec2 correspondence_inverse(const Correspondence& m, long long N,
                             const LatticeFrame& f1, const LatticeFrame& f2);

/// Unique factorization of a pair of nonzero integer vectors as
/// pcheck * (p1 m1, p2 m2) with m^i and p prime vectors (coprime coordinates,
/// positive first nonzero coordinate) and pcheck the signed cross-gcd.
struct ShortVectorIndex {
    long long pcheck = 1;
    IVec2 p{};
    IVec2 m1{};
    IVec2 m2{};
};

ShortVectorIndex prime_decompose(IVec2 M1, IVec2 M2);

/// Phase vector N x_i (e11, e21): first coordinates of the frame vectors
/// scaled by the orbit base point. Returned unreduced; callers fold mod 1.
Vec2 gamma_phase(double x_i, long long N, const LatticeFrame& frame);

/// Fraction of the y-density mass above the sampler's cutoff, accounted for
/// in statistical tolerances.
double haar_tail_mass();

/// Haar-random unimodular lattice frame, via the modular fundamental domain
/// (density dx dy / y^2, rejection below the unit circle, y capped at 1e3)
/// and an independent uniform rotation.
LatticeFrame haar_sample(std::uint64_t seed);

std::pair<LatticeFrame, LatticeFrame> haar_sample_pair(std::uint64_t seed);

}  // namespace edlab
