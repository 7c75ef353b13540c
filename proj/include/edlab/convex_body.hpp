#pragma once

#include <stdexcept>
#include <string>

#include "edlab/geom.hpp"

namespace edlab {

/// Unit outward normal on the boundary. Construction enforces the unit-norm
/// contract; use `of()` to normalize an arbitrary nonzero direction.
struct NormalDirection {
    Vec2 xi;

    explicit NormalDirection(Vec2 v) : xi(v) {
        if (std::abs(v.norm() - 1.0) > 1e-12)
            throw std::domain_error("NormalDirection: vector is not unit length");
    }

    static NormalDirection of(Vec2 v) {
        double n = v.norm();
        if (n == 0.0) throw std::domain_error("NormalDirection: zero vector");
        return NormalDirection(Vec2{v.x / n, v.y / n});
    }
};

enum class BodyKind { disk, ellipse };

/// An analytic, origin-symmetric, strictly convex planar body. The two
/// supported shapes (disk, axis-aligned ellipse) have closed-form support
/// function, curvature and area, which the rest of the code leans on both as
/// implementation and as test oracles. Any future body only needs the
/// (support, curvature, contains, volume) quadruple exposed here.
class ConvexBody {
public:
    static ConvexBody disk() { return ConvexBody(BodyKind::disk, 1.0, 1.0); }

    static ConvexBody ellipse(double a, double b) {
        if (!(a > 0.0) || !(b > 0.0))
            throw std::domain_error("ConvexBody: semi-axes must be positive");
        return ConvexBody(BodyKind::ellipse, a, b);
    }

    /// CLI spec string: `disk` or `ellipse:a=<float>,b=<float>`.
    static ConvexBody parse(const std::string& spec);

    BodyKind kind() const { return kind_; }
    double semi_a() const { return a_; }
    double semi_b() const { return b_; }

    /// Largest scale for which C_r sits strictly inside the unit square.
    double r0() const { return 0.499 / std::max(a_, b_); }

    /// Support function P(t) = sup_{x in C} (t, x). Positively homogeneous of
    /// degree 1 and even. Throws on the zero vector.
    double support(Vec2 t) const {
        if (t.x == 0.0 && t.y == 0.0)
            throw std::domain_error("support: zero vector");
        return std::sqrt(a_ * a_ * t.x * t.x + b_ * b_ * t.y * t.y);
    }

    /// Gaussian (here: boundary) curvature at the unique boundary point whose
    /// outer normal is xi. For the ellipse K(xi) = P(xi)^3 / (ab)^2.
    double curvature_at_normal(const NormalDirection& n) const {
        double p = support(n.xi);
        return p * p * p / (a_ * a_ * b_ * b_);
    }

    /// Membership of a lifted point in the closed body C_r.
    bool contains(double r, Vec2 p) const {
        check_scale(r);
        double qx = p.x / a_;
        double qy = p.y / b_;
        return qx * qx + qy * qy <= r * r;
    }

    /// Half-width of the vertical section of C_r at abscissa t, 0 when the
    /// section is empty.
    double section_halfwidth(double r, double t) const {
        double w = a_ * r;
        if (std::abs(t) > w) return 0.0;
        double u = t / w;
        return b_ * r * std::sqrt(std::max(0.0, 1.0 - u * u));
    }

    double volume(double r) const {
        check_scale(r);
        return kPi * a_ * b_ * r * r;
    }

    /// Boundary point of the unscaled body at parameter angle phi.
    Vec2 boundary_point(double phi) const {
        return {a_ * std::cos(phi), b_ * std::sin(phi)};
    }

    std::string spec_string() const;

    bool operator==(const ConvexBody&) const = default;

private:
    ConvexBody(BodyKind k, double a, double b) : kind_(k), a_(a), b_(b) {}

    void check_scale(double r) const {
        if (!(r > 0.0) || !(r < r0()))
            throw std::domain_error("ConvexBody: scale r outside (0, r0)");
    }

    BodyKind kind_;
    double a_;
    double b_;
};

}  // namespace edlab
