#include "qturn/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qturn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(Vec2 p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument("point must be finite");
}

}  // namespace

ModelHomeo::ModelHomeo(const CyclicWord& word) : word_(word.vertical_first()) {
    if (!is_allowed(word_)) throw std::invalid_argument("word " + word.ascii() + " is not allowed");
    if (word_.d() < 2)
        throw std::invalid_argument("word " + word.ascii() + " has d = 1 and cannot be realized (need d >= 2)");
    for (const Window& m : sector_windows(word_)) sectors_.push_back(build_sector(m));
    index_ = symbolic_index(word_);
    if (index_ == 1 && word_.d() < 4) {
        outside_theory_ = true;
        warnings_.push_back("index 1 with d = " + std::to_string(word_.d()) +
                            " is outside the validity regime (module < 4)");
    }
}

double ModelHomeo::ray_angle(std::size_t k) const {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(d());
}

ChartPoint ModelHomeo::to_chart(Vec2 p) const {
    double a = std::atan2(p.y, p.x);
    if (a < 0.0) a += kTwoPi;
    double t = a / kTwoPi * static_cast<double>(d());
    double k = std::floor(t);
    if (k >= static_cast<double>(d())) k = static_cast<double>(d()) - 1.0;
    if (k < 0.0) k = 0.0;
    double theta = std::clamp(t - k, 0.0, 1.0);
    return {static_cast<std::size_t>(k), {theta, -std::log(norm(p))}};
}

Vec2 ModelHomeo::from_chart(const ChartPoint& c) const {
    double a = kTwoPi * (static_cast<double>(c.sector) + c.band.theta) / static_cast<double>(d());
    double rho = std::exp(-c.band.r);
    return {rho * std::cos(a), rho * std::sin(a)};
}

Vec2 ModelHomeo::apply(Vec2 p) const {
    require_finite(p);
    if (p.x == 0.0 && p.y == 0.0) return p;
    ChartPoint c = to_chart(p);
    c.band = sectors_[c.sector].map(c.band);
    return from_chart(c);
}

Vec2 ModelHomeo::apply_inverse(Vec2 p) const {
    require_finite(p);
    if (p.x == 0.0 && p.y == 0.0) return p;
    ChartPoint c = to_chart(p);
    c.band = sectors_[c.sector].inverse(c.band);
    return from_chart(c);
}

ModelHomeo build_model(const CyclicWord& word) { return ModelHomeo(word); }

}  // namespace qturn
