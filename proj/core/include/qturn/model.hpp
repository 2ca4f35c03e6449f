#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qturn/sector.hpp"
#include "qturn/word.hpp"

namespace qturn {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    bool operator==(const Vec2&) const = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Sector index plus band coordinates.
struct ChartPoint {
    std::size_t sector = 0;
    BandPoint band;
};

class ModelHomeo {
public:
    // word must be allowed with d >= 2; the indexation is rotated to start on a vertical letter
    explicit ModelHomeo(const CyclicWord& word);

    const CyclicWord& word() const { return word_; }
    std::size_t d() const { return sectors_.size(); }
    const SectorModel& sector(std::size_t k) const { return sectors_.at(k); }
    long index() const { return index_; }

    // index 1 with d < 4
    bool outside_theory() const { return outside_theory_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    Vec2 apply(Vec2 p) const;
    Vec2 apply_inverse(Vec2 p) const;

    ChartPoint to_chart(Vec2 p) const;
    Vec2 from_chart(const ChartPoint& c) const;
    // angle of the ray theta = 0 of sector k
    double ray_angle(std::size_t k) const;

private:
    CyclicWord word_;
    std::vector<SectorModel> sectors_;
    long index_ = 0;
    bool outside_theory_ = false;
    std::vector<std::string> warnings_;
};

ModelHomeo build_model(const CyclicWord& word);

}  // namespace qturn
