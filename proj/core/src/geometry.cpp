#include "qturn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qturn::geom {

namespace {

// Error-free transformations and expansion growth (nonoverlapping, increasing magnitude).
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

inline void two_diff(double a, double b, double& s, double& e) { two_sum(a, -b, s, e); }

inline void two_product(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

void grow(std::vector<double>& expansion, double b) {
    std::vector<double> out;
    out.reserve(expansion.size() + 1);
    double q = b;
    for (double e : expansion) {
        double s, err;
        two_sum(q, e, s, err);
        if (err != 0.0) out.push_back(err);
        q = s;
    }
    if (q != 0.0) out.push_back(q);
    expansion.swap(out);
}

int exact_orient(Vec2 a, Vec2 b, Vec2 c) {
    // (b - a) x (c - a) with every difference kept as a two-term expansion
    double bx1, bx0, by1, by0, cx1, cx0, cy1, cy0;
    two_diff(b.x, a.x, bx1, bx0);
    two_diff(b.y, a.y, by1, by0);
    two_diff(c.x, a.x, cx1, cx0);
    two_diff(c.y, a.y, cy1, cy0);
    std::vector<double> e;
    auto add_product = [&](double u, double v, double sign) {
        double p, err;
        two_product(u, v, p, err);
        grow(e, sign * p);
        grow(e, sign * err);
    };
    const double lx[2] = {bx1, bx0}, ry[2] = {cy1, cy0}, ly[2] = {by1, by0}, rx[2] = {cx1, cx0};
    for (double u : lx)
        for (double v : ry) add_product(u, v, 1.0);
    for (double u : ly)
        for (double v : rx) add_product(u, v, -1.0);
    for (auto it = e.rbegin(); it != e.rend(); ++it)
        if (*it != 0.0) return *it > 0.0 ? 1 : -1;
    return 0;
}

bool on_segment_box(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

}  // namespace

int orient(Vec2 a, Vec2 b, Vec2 c) {
    double l = (b.x - a.x) * (c.y - a.y);
    double r = (b.y - a.y) * (c.x - a.x);
    double det = l - r;
    double bound = 1e-15 * (std::abs(l) + std::abs(r));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return exact_orient(a, b, c);
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    if (std::max(p1.x, p2.x) < std::min(q1.x, q2.x) || std::max(q1.x, q2.x) < std::min(p1.x, p2.x) ||
        std::max(p1.y, p2.y) < std::min(q1.y, q2.y) || std::max(q1.y, q2.y) < std::min(p1.y, p2.y))
        return false;
    int d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
    int d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && on_segment_box(q1, q2, p1)) return true;
    if (d2 == 0 && on_segment_box(q1, q2, p2)) return true;
    if (d3 == 0 && on_segment_box(p1, p2, q1)) return true;
    if (d4 == 0 && on_segment_box(p1, p2, q2)) return true;
    return false;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + ab * t));
}

double segment_distance(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    if (segments_intersect(p1, p2, q1, q2)) return 0.0;
    return std::min({point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2),
                     point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)});
}

bool segment_hits_origin(Vec2 a, Vec2 b) {
    Vec2 o{0.0, 0.0};
    return orient(a, b, o) == 0 && on_segment_box(a, b, o);
}

}  // namespace qturn::geom
