#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace seplinf {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
    double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

    friend bool operator==(const Point3& a, const Point3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

inline bool lex_less(const Point3& a, const Point3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

inline bool approx_equal(const Point3& a, const Point3& b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol && std::abs(a.z - b.z) <= tol;
}

inline bool in_unit_cube(const Point3& p, double tol = 0.0) {
    auto ok = [tol](double v) { return v >= -tol && v <= 1.0 + tol; };
    return ok(p.x) && ok(p.y) && ok(p.z);
}

// Componentwise comparability.
inline bool well_ordered(const Point3& p, const Point3& q) {
    bool p_le_q = p.x <= q.x && p.y <= q.y && p.z <= q.z;
    bool q_le_p = q.x <= p.x && q.y <= p.y && q.z <= p.z;
    return p_le_q || q_le_p;
}

inline Point3 componentwise_min(const Point3& p, const Point3& q) {
    return {std::min(p.x, q.x), std::min(p.y, q.y), std::min(p.z, q.z)};
}

inline Point3 componentwise_max(const Point3& p, const Point3& q) {
    return {std::max(p.x, q.x), std::max(p.y, q.y), std::max(p.z, q.z)};
}

} // namespace seplinf
