#pragma once

#include <numbers>
#include <span>

#include "qturn/word.hpp"

namespace qturn {

inline constexpr double kLog2 = std::numbers::ln2;

// theta in [0,1] across the sector, plane radius exp(-r)
struct BandPoint {
    double theta = 0.0;
    double r = 0.0;
};

// (x,y) -> (2x, y/2) on the quarter plane x >= 0, y <= 0. Realizes (U R D).
BandPoint saddle_band(BandPoint p);
BandPoint saddle_band_inverse(BandPoint p);

// saddle conjugated by r -> -r. Realizes (D R U).
BandPoint elliptic_band(BandPoint p);
BandPoint elliptic_band_inverse(BandPoint p);

// Strip version of the indifferent map on [-1,1] x R. The lattice part of F
// is {(0, n)}, the boundary lines are theta = +-1.
namespace strip {

struct Point {
    double theta = 0.0;
    double s = 0.0;
};

double distance_to_F(Point p);
Point phi(Point p);
Point phi_inverse(Point p);
Point psi(Point p);
Point psi_inverse(Point p);
inline Point g(Point p) { return psi(phi(p)); }
inline Point g_inverse(Point p) { return phi_inverse(psi_inverse(p)); }

// Height offset between the band and the strip: strip s = r / log 2 + offset(theta).
// Piecewise linear, equal to 1/2 on both boundary lines.
double offset(double theta);
std::span<const Point> offset_knots();

// piecewise linear, monotone, fixes the boundary lines
double strip_theta(double band_theta);
double band_theta(double strip_theta);

Point from_band(BandPoint p);
BandPoint to_band(Point q);

}  // namespace strip

// (U R U): strip map g carried to the band.
BandPoint indifferent_band(BandPoint p);
BandPoint indifferent_band_inverse(BandPoint p);

class SectorModel {
public:
    enum class Base { Saddle, Elliptic, Indifferent };

    SectorModel(Window word3, Base base, bool inverted, bool mirrored);

    const Window& word3() const { return word3_; }
    SectorType kind() const { return kind_; }
    Base base() const { return base_; }
    bool inverted() const { return inverted_; }
    bool mirrored() const { return mirrored_; }

    BandPoint map(BandPoint p) const;
    BandPoint inverse(BandPoint p) const;

    // +1 if the boundary letter is up, -1 if down. side 0 is theta = 0.
    int boundary_sign(int side) const;

    // Indifferent models only: band point for strip coordinates of the underlying
    // (U R U) or (D L D) strip, mirror included.
    BandPoint strip_to_band(strip::Point q) const;
    strip::Point band_to_strip(BandPoint p) const;

private:
    Window word3_;
    SectorType kind_;
    Base base_;
    bool inverted_;
    bool mirrored_;
};

SectorModel build_sector(const Window& word3);

}  // namespace qturn
