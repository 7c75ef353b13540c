#pragma once

#include <cmath>
#include <cstdint>
#include <compare>

namespace edlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }

    constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
};

constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

struct IVec2 {
    long long x = 0;
    long long y = 0;

    constexpr IVec2() = default;
    constexpr IVec2(long long x_, long long y_) : x(x_), y(y_) {}

    constexpr IVec2 operator-() const { return {-x, -y}; }
    constexpr bool operator==(const IVec2&) const = default;
    constexpr auto operator<=>(const IVec2&) const = default;

    constexpr double norm2() const {
        return static_cast<double>(x) * static_cast<double>(x) +
               static_cast<double>(y) * static_cast<double>(y);
    }
    double norm() const { return std::sqrt(norm2()); }
    constexpr Vec2 to_vec() const { return {static_cast<double>(x), static_cast<double>(y)}; }
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Reduce a coordinate to the fundamental square [-1/2, 1/2).
inline double lift_to_half_open(double t) {
    double f = t - std::floor(t + 0.5);
    if (f >= 0.5) f -= 1.0;  // guards against floor rounding at the seam
    return f;
}

/// Reduce to [0, 1).
inline double mod1(double t) {
    double f = t - std::floor(t);
    if (f >= 1.0) f -= 1.0;
    return f;
}

}  // namespace edlab
