#include <random>

#include "doctest.h"
#include "qturn/geometry.hpp"

using namespace qturn;

namespace {

// exact sign for integer coordinates below 2^40
int orient_int(long long ax, long long ay, long long bx, long long by, long long cx, long long cy) {
    __int128 v = static_cast<__int128>(bx - ax) * (cy - ay) - static_cast<__int128>(by - ay) * (cx - ax);
    return (v > 0) - (v < 0);
}

bool on_segment_int(long long px, long long py, long long qx, long long qy, long long rx, long long ry) {
    return std::min(px, rx) <= qx && qx <= std::max(px, rx) && std::min(py, ry) <= qy && qy <= std::max(py, ry);
}

bool intersect_int(const long long* p) {
    long long ax = p[0], ay = p[1], bx = p[2], by = p[3], cx = p[4], cy = p[5], dx = p[6], dy = p[7];
    int o1 = orient_int(ax, ay, bx, by, cx, cy), o2 = orient_int(ax, ay, bx, by, dx, dy);
    int o3 = orient_int(cx, cy, dx, dy, ax, ay), o4 = orient_int(cx, cy, dx, dy, bx, by);
    if (o1 == 0 && on_segment_int(ax, ay, cx, cy, bx, by)) return true;
    if (o2 == 0 && on_segment_int(ax, ay, dx, dy, bx, by)) return true;
    if (o3 == 0 && on_segment_int(cx, cy, ax, ay, dx, dy)) return true;
    if (o4 == 0 && on_segment_int(cx, cy, bx, by, dx, dy)) return true;
    return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace

TEST_CASE("orientation is exact on near-degenerate input") {
    // integers scaled by a power of two stay exact in double
    std::mt19937_64 rng(7);
    const double scale = 0x1.0p-20;
    for (int i = 0; i < 20000; ++i) {
        long long base = static_cast<long long>(rng() % (1LL << 36)) - (1LL << 35);
        long long ax = base, ay = base + 1;
        long long dx = static_cast<long long>(rng() % 2048) - 1024, dy = static_cast<long long>(rng() % 2048) - 1024;
        long long k = static_cast<long long>(rng() % 4096);
        long long bx = ax + dx, by = ay + dy;
        // c nearly on the line a-b
        long long cx = ax + k * dx + static_cast<long long>(rng() % 3) - 1;
        long long cy = ay + k * dy + static_cast<long long>(rng() % 3) - 1;
        int want = orient_int(ax, ay, bx, by, cx, cy);
        int got = geom::orient({ax * scale, ay * scale}, {bx * scale, by * scale}, {cx * scale, cy * scale});
        REQUIRE(got == want);
    }
}

TEST_CASE("orientation signs") {
    CHECK(geom::orient({0, 0}, {1, 0}, {0, 1}) == 1);
    CHECK(geom::orient({0, 0}, {1, 0}, {0, -1}) == -1);
    CHECK(geom::orient({0, 0}, {1, 1}, {2, 2}) == 0);
    // 0.1 is not exact, the collinearity check must still be consistent under exchange
    Vec2 a{0.1, 0.1}, b{0.3, 0.3}, c{0.7, 0.7};
    CHECK(geom::orient(a, b, c) == -geom::orient(b, a, c));
}

TEST_CASE("segment intersection against the integer oracle") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50000; ++i) {
        long long p[8];
        for (long long& v : p) v = static_cast<long long>(rng() % 9) - 4;  // small grid: many touching cases
        bool want = intersect_int(p);
        bool got = geom::segments_intersect({double(p[0]), double(p[1])}, {double(p[2]), double(p[3])},
                                            {double(p[4]), double(p[5])}, {double(p[6]), double(p[7])});
        INFO(p[0] << "," << p[1] << " " << p[2] << "," << p[3] << " / " << p[4] << "," << p[5] << " " << p[6] << ","
                  << p[7]);
        REQUIRE(got == want);
    }
}

TEST_CASE("distances") {
    CHECK(geom::point_segment_distance({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(geom::point_segment_distance({3, 4}, {0, 0}, {0, 0}) == doctest::Approx(5.0));
    CHECK(geom::point_segment_distance({2, 1}, {-1, 0}, {1, 0}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(geom::segment_distance({0, 1}, {1, 1}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(geom::segment_distance({0, -1}, {0, 1}, {-1, 0}, {1, 0}) == 0.0);
}

TEST_CASE("segment through the origin") {
    CHECK(geom::segment_hits_origin({-1, 0}, {1, 0}));
    CHECK(geom::segment_hits_origin({0, 0}, {1, 0}));
    CHECK_FALSE(geom::segment_hits_origin({-1, 1e-300}, {1, 1e-300}));
    CHECK_FALSE(geom::segment_hits_origin({1, 0}, {2, 0}));
}
