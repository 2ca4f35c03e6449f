#include "qturn/sector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace qturn {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

// log of the radial factor of (x,y) -> (2x, y/2) at angle beta from the -y axis
double saddle_log_gain(double beta) {
    double s = std::sin(beta), c = std::cos(beta);
    return 0.5 * std::log(4.0 * s * s + 0.25 * c * c);
}

double saddle_angle(double theta) {
    double beta = theta * kHalfPi;
    return clamp01(std::atan2(4.0 * std::sin(beta), std::cos(beta)) / kHalfPi);
}

double saddle_log_gain_inverse(double beta) {
    double s = std::sin(beta), c = std::cos(beta);
    return 0.5 * std::log(0.25 * s * s + 4.0 * c * c);
}

double saddle_angle_inverse(double theta) {
    double beta = theta * kHalfPi;
    return clamp01(std::atan2(std::sin(beta), 4.0 * std::cos(beta)) / kHalfPi);
}

}  // namespace

BandPoint saddle_band(BandPoint p) {
    if (p.theta <= 0.0) return {0.0, p.r + kLog2};
    if (p.theta >= 1.0) return {1.0, p.r - kLog2};
    return {saddle_angle(p.theta), p.r - saddle_log_gain(p.theta * kHalfPi)};
}

BandPoint saddle_band_inverse(BandPoint p) {
    if (p.theta <= 0.0) return {0.0, p.r - kLog2};
    if (p.theta >= 1.0) return {1.0, p.r + kLog2};
    return {saddle_angle_inverse(p.theta), p.r - saddle_log_gain_inverse(p.theta * kHalfPi)};
}

BandPoint elliptic_band(BandPoint p) {
    BandPoint q = saddle_band({p.theta, -p.r});
    return {q.theta, -q.r};
}

BandPoint elliptic_band_inverse(BandPoint p) {
    BandPoint q = saddle_band_inverse({p.theta, -p.r});
    return {q.theta, -q.r};
}

namespace strip {

namespace {

// Knots (theta, offset) of the band/strip height offset. With this offset the
// circles of radius 2^k become curves that split into two free arcs inside the
// sector, which the plain affine chart does not allow.
constexpr Point kKnots[] = {
#include "offset_knots.inc"
};

// Band theta -> strip theta. The middle piece is stretched so that the narrow
// range of admissible split points on those curves spans many samples.
constexpr std::array<std::array<double, 2>, 4> kAngular = {{
    {0.0, -1.0}, {0.35, -0.1522}, {0.55, -0.1492}, {1.0, 1.0},
}};

double interpolate(const std::array<std::array<double, 2>, 4>& k, double x, bool inverse) {
    const int in = inverse ? 1 : 0, out = 1 - in;
    for (std::size_t i = 1; i < k.size(); ++i) {
        if (x <= k[i][in] || i + 1 == k.size()) {
            double w = (x - k[i - 1][in]) / (k[i][in] - k[i - 1][in]);
            return k[i - 1][out] + w * (k[i][out] - k[i - 1][out]);
        }
    }
    return x;
}

}  // namespace

std::span<const Point> offset_knots() { return kKnots; }

double offset(double theta) {
    if (theta <= kKnots[0].theta) return kKnots[0].s;
    constexpr std::size_t n = std::size(kKnots);
    if (theta >= kKnots[n - 1].theta) return kKnots[n - 1].s;
    auto it = std::upper_bound(std::begin(kKnots), std::end(kKnots), theta,
                               [](double t, const Point& k) { return t < k.theta; });
    const Point& b = *it;
    const Point& a = *(it - 1);
    double w = (theta - a.theta) / (b.theta - a.theta);
    return a.s + w * (b.s - a.s);
}

double distance_to_F(Point p) {
    double to_lines = 1.0 - std::abs(p.theta);
    double ds = p.s - std::round(p.s);
    return std::max(0.0, std::min(to_lines, std::hypot(p.theta, ds)));
}

Point phi(Point p) { return {p.theta, p.s + 2.0 * std::abs(p.theta) - 1.0}; }

Point phi_inverse(Point p) { return {p.theta, p.s - 2.0 * std::abs(p.theta) + 1.0}; }

Point psi(Point p) { return {std::min(1.0, p.theta + 0.5 * distance_to_F(p)), p.s}; }

Point psi_inverse(Point p) {
    // theta -> theta + D/2 has slope in [1/2, 3/2]; the fixed-point map contracts by 1/2
    double t = p.theta;
    for (int it = 0; it < 200; ++it) {
        double next = std::max(-1.0, p.theta - 0.5 * distance_to_F({t, p.s}));
        if (next == t) break;
        t = next;
    }
    return {t, p.s};
}

double strip_theta(double band_theta) { return interpolate(kAngular, clamp01(band_theta), false); }

double band_theta(double strip_theta) {
    return clamp01(interpolate(kAngular, std::clamp(strip_theta, -1.0, 1.0), true));
}

Point from_band(BandPoint p) {
    double t = strip_theta(p.theta);
    return {t, p.r / kLog2 + offset(t)};
}

BandPoint to_band(Point q) { return {band_theta(q.theta), (q.s - offset(q.theta)) * kLog2}; }

}  // namespace strip

BandPoint indifferent_band(BandPoint p) {
    if (p.theta <= 0.0) return {0.0, p.r + kLog2};
    if (p.theta >= 1.0) return {1.0, p.r + kLog2};
    return strip::to_band(strip::g(strip::from_band(p)));
}

BandPoint indifferent_band_inverse(BandPoint p) {
    if (p.theta <= 0.0) return {0.0, p.r - kLog2};
    if (p.theta >= 1.0) return {1.0, p.r - kLog2};
    return strip::to_band(strip::g_inverse(strip::from_band(p)));
}

SectorModel::SectorModel(Window word3, Base base, bool inverted, bool mirrored)
    : word3_(word3), kind_(sector_type(word3)), base_(base), inverted_(inverted), mirrored_(mirrored) {}

BandPoint SectorModel::map(BandPoint p) const {
    if (mirrored_) p.theta = 1.0 - p.theta;
    BandPoint q;
    switch (base_) {
        case Base::Saddle: q = inverted_ ? saddle_band_inverse(p) : saddle_band(p); break;
        case Base::Elliptic: q = inverted_ ? elliptic_band_inverse(p) : elliptic_band(p); break;
        case Base::Indifferent: q = inverted_ ? indifferent_band_inverse(p) : indifferent_band(p); break;
    }
    if (mirrored_) q.theta = 1.0 - q.theta;
    return q;
}

BandPoint SectorModel::inverse(BandPoint p) const {
    if (mirrored_) p.theta = 1.0 - p.theta;
    BandPoint q;
    switch (base_) {
        case Base::Saddle: q = inverted_ ? saddle_band(p) : saddle_band_inverse(p); break;
        case Base::Elliptic: q = inverted_ ? elliptic_band(p) : elliptic_band_inverse(p); break;
        case Base::Indifferent: q = inverted_ ? indifferent_band(p) : indifferent_band_inverse(p); break;
    }
    if (mirrored_) q.theta = 1.0 - q.theta;
    return q;
}

int SectorModel::boundary_sign(int side) const {
    Letter v = side == 0 ? word3_[0] : word3_[2];
    return v == Letter::Up ? 1 : -1;
}

BandPoint SectorModel::strip_to_band(strip::Point q) const {
    if (base_ != Base::Indifferent) throw std::logic_error("strip coordinates exist only for indifferent sectors");
    BandPoint p = strip::to_band(q);
    if (mirrored_) p.theta = 1.0 - p.theta;
    return p;
}

strip::Point SectorModel::band_to_strip(BandPoint p) const {
    if (base_ != Base::Indifferent) throw std::logic_error("strip coordinates exist only for indifferent sectors");
    if (mirrored_) p.theta = 1.0 - p.theta;
    return strip::from_band(p);
}

SectorModel build_sector(const Window& m) {
    if (!is_vertical(m[0]) || !is_horizontal(m[1]) || !is_vertical(m[2]))
        throw std::invalid_argument(std::string("sector word must be vertical-horizontal-vertical, got ") +
                                    to_ascii(m[0]) + to_ascii(m[1]) + to_ascii(m[2]));
    const bool up0 = m[0] == Letter::Up, up1 = m[2] == Letter::Up, right = m[1] == Letter::Right;
    using B = SectorModel::Base;
    if (up0 && !up1) return right ? SectorModel(m, B::Saddle, false, false) : SectorModel(m, B::Elliptic, true, false);
    if (!up0 && up1) return right ? SectorModel(m, B::Elliptic, false, false) : SectorModel(m, B::Saddle, true, false);
    if (up0) return SectorModel(m, B::Indifferent, false, !right);
    return SectorModel(m, B::Indifferent, true, right);
}

}  // namespace qturn
