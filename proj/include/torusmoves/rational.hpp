#pragma once

/**
 * @file rational.hpp
 * @brief Exact arithmetic foundation: arbitrary-precision rationals, integer
 *        and rational 2-vectors, and the geometric predicates built on them.
 *
 * Everything downstream (embeddings, strand tracing, face walks) relies on
 * exact sign computations; no floating point appears anywhere in the library.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace torusmoves {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

inline Rat rat(long long p, long long q = 1) { return Rat(Int(p), Int(q)); }

inline int sgn(const Rat& r) {
    if (r.numerator() == 0) return 0;
    return r.numerator() < 0 ? -1 : 1;
}

/// Largest integer <= r.
inline Int floor_int(const Rat& r) {
    Int q = r.numerator() / r.denominator();
    if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
    return q;
}

/// Fractional part in [0,1).
inline Rat wrap01(const Rat& r) { return r - Rat(floor_int(r)); }

/// Integer 2-vector: homology classes, voltages, polygon edge vectors.
struct IVec2 {
    long long x = 0, y = 0;

    friend IVec2 operator+(IVec2 a, IVec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend IVec2 operator-(IVec2 a, IVec2 b) { return {a.x - b.x, a.y - b.y}; }
    IVec2 operator-() const { return {-x, -y}; }
    friend IVec2 operator*(long long s, IVec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(IVec2 a, IVec2 b) { return a.x == b.x && a.y == b.y; }
    friend auto operator<=>(IVec2 a, IVec2 b) = default;

    bool is_zero() const { return x == 0 && y == 0; }
};

inline long long cross(IVec2 a, IVec2 b) { return a.x * b.y - a.y * b.x; }

/// gcd(|x|,|y|) with gcd(0,0) = 0; the lattice length of a vector.
inline long long lattice_gcd(IVec2 v) { return std::gcd(std::abs(v.x), std::abs(v.y)); }

/// v / gcd; the primitive vector in the same direction.  Zero stays zero.
inline IVec2 primitive(IVec2 v) {
    long long g = lattice_gcd(v);
    return g == 0 ? v : IVec2{v.x / g, v.y / g};
}

/// Exact rational point / displacement in the plane (universal cover of the torus).
struct Vec2 {
    Rat x, y;

    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(const Rat& s, const Vec2& a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Vec2& a, const Vec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

inline Vec2 to_vec2(IVec2 v) { return {rat(v.x), rat(v.y)}; }

namespace detail {

/// Integer translate that moves a universal-cover point into [0,1)^2.
inline IVec2 cover_offset(const Vec2& lift) {
    return {floor_int(lift.x).convert_to<long long>(), floor_int(lift.y).convert_to<long long>()};
}

inline Vec2 wrap_point(const Vec2& lift) { return {wrap01(lift.x), wrap01(lift.y)}; }

}  // namespace detail

inline Rat cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Sign of the signed area of triangle (a,b,c): +1 counterclockwise, -1
/// clockwise, 0 collinear.
inline int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
    return sgn(cross(b - a, c - a));
}

/// True iff p lies on the closed segment [a,b].
inline bool point_on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    if (orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

/// True iff open segments (a,b) and (c,d) cross transversally in one interior
/// point (shared endpoints and touchings do not count).
inline bool segments_cross_properly(const Vec2& a, const Vec2& b, const Vec2& c,
                                    const Vec2& d) {
    int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

/// True iff closed segments [a,b] and [c,d] share at least one point.
inline bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    if (segments_cross_properly(a, b, c, d)) return true;
    return point_on_segment(c, a, b) || point_on_segment(d, a, b) ||
           point_on_segment(a, c, d) || point_on_segment(b, c, d);
}

/// Location of a point relative to a simple closed polygon (vertices in order,
/// either orientation): +1 strictly inside, 0 on the boundary, -1 outside.
/// Even-odd ray casting with exact arithmetic; the ray is horizontal and
/// vertex-on-ray cases are resolved by the standard half-open edge rule.
inline int point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
    bool inside = false;
    size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % m];
        if (point_on_segment(p, a, b)) return 0;
        // Count crossings of the edge with the leftward horizontal ray from p,
        // treating each edge as half-open in y to count vertices once.
        bool a_below = a.y <= p.y, b_below = b.y <= p.y;
        if (a_below == b_below) continue;
        // x-coordinate of the edge at height p.y, compared exactly with p.x.
        // Edge straddles the horizontal line, so b.y - a.y != 0.
        Rat t = (p.y - a.y) / (b.y - a.y);
        Rat xh = a.x + t * (b.x - a.x);
        if (xh < p.x) inside = !inside;
    }
    return inside ? 1 : -1;
}

/// An interior point of a simple polygon (any orientation), exact.
/// Classic construction: take the lowest-then-leftmost vertex v, consider the
/// triangle formed with its neighbours, and use either its centroid or the
/// midpoint towards the deepest contained reflex vertex.
inline Vec2 polygon_interior_point(const std::vector<Vec2>& poly) {
    size_t m = poly.size();
    if (m < 3) throw std::invalid_argument("polygon_interior_point: degenerate polygon");
    size_t iv = 0;
    for (size_t i = 1; i < m; ++i) {
        const Vec2 &p = poly[i], &q = poly[iv];
        if (p.y < q.y || (p.y == q.y && p.x < q.x)) iv = i;
    }
    const Vec2& v = poly[iv];
    const Vec2& a = poly[(iv + m - 1) % m];
    const Vec2& b = poly[(iv + 1) % m];
    // Candidate interior points: vertices of the triangle (a, v, b) strictly
    // inside it, or its centroid if none.
    Vec2 best;
    bool found = false;
    Rat best_d;
    for (size_t i = 0; i < m; ++i) {
        if (i == iv || i == (iv + m - 1) % m || i == (iv + 1) % m) continue;
        const Vec2& q = poly[i];
        int o1 = orientation(a, v, q), o2 = orientation(v, b, q), o3 = orientation(b, a, q);
        if (o1 != 0 && o1 == o2 && o2 == o3) {
            Rat d = dot(q - v, q - v);
            if (!found || d < best_d) { best = q, best_d = d, found = true; }
        }
    }
    Vec2 c;
    if (found) {
        c = {(v.x + best.x) / 2, (v.y + best.y) / 2};
    } else {
        c = {(a.x + v.x + b.x) / 3, (a.y + v.y + b.y) / 3};
    }
    if (point_in_polygon(c, poly) != 1)
        throw std::logic_error("polygon_interior_point: construction failed");
    return c;
}

/// Parse "p/q" or "p" into an exact rational (ASCII, arbitrary precision).
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        return Rat(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rat: malformed rational '" + s + "'");
    }
}

inline std::string to_string(const Rat& r) {
    std::string s = r.numerator().str();
    if (r.denominator() != 1) s += "/" + r.denominator().str();
    return s;
}

}  // namespace torusmoves
