#pragma once

#include <cmath>

namespace flockopt {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    Vec2 operator-() const { return {-x, -y}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

    double norm() const { return std::sqrt(x * x + y * y); }
    double norm_sq() const { return x * x + y * y; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Unit vector along v, or fallback when v is (numerically) zero.
inline Vec2 normalized(const Vec2& v, const Vec2& fallback = {1.0, 0.0}) {
    double n = v.norm();
    if (n < 1e-12) return fallback;
    return v / n;
}

}  // namespace flockopt
