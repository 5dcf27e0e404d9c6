#pragma once

#include <compare>
#include <cstdlib>
#include <string>
#include <vector>

#include "tsteer/field.hpp"

namespace tsteer {

// Integer wavevector in Z^2 \ {0}.
struct Mode {
    int a = 0, b = 0;

    auto operator<=>(const Mode&) const = default;

    Mode operator+(const Mode& o) const { return {a + o.a, b + o.b}; }
    Mode operator-() const { return {-a, -b}; }

    // l^perp = (-l2, l1)
    Vec2 perp() const { return {static_cast<double>(-b), static_cast<double>(a)}; }
    double dot(Vec2 x) const { return a * x.x + b * x.y; }
    int inf_norm() const { return std::max(std::abs(a), std::abs(b)); }
    bool is_zero() const { return a == 0 && b == 0; }

    std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

// Exact integer parallelism test: l1 x l2 = 0.
inline long long cross(const Mode& u, const Mode& v) {
    return static_cast<long long>(u.a) * v.b - static_cast<long long>(u.b) * v.a;
}
inline bool parallel(const Mode& u, const Mode& v) { return cross(u, v) == 0; }

inline double sin_mode(const Mode& l, Vec2 x) { return std::sin(l.dot(x)); }
inline double cos_mode(const Mode& l, Vec2 x) { return std::cos(l.dot(x)); }

}  // namespace tsteer
