#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qturn/model.hpp"

namespace qturn {

// Empty optional means undecided.
struct OrbitFate {
    std::optional<Limit> alpha;
    std::optional<Limit> omega;

    bool decided() const { return alpha.has_value() && omega.has_value(); }
    bool is(Limit a, Limit o) const { return alpha == a && omega == o; }
    bool operator==(const OrbitFate&) const = default;
    std::string str() const;  // "(inf,0)", "(?,inf)"
};

struct FateParams {
    double r_in = 1e-6;
    double R_out = 1e6;
    int max_iter = 2000;
    void validate() const;
};

struct WindingParams {
    double radius = 1.0;
    int initial_samples = 256;
    int max_depth = 20;
    double step_bound = std::numbers::pi / 2.0;
    double snap_tolerance = 0.1;
    void validate() const;
};

struct WindingResult {
    long index = 0;
    double raw = 0.0;
    double residual = 0.0;
    std::size_t evaluations = 0;
    int depth_used = 0;
};

class NumericError : public std::runtime_error {
public:
    enum class Kind { NonConvergent, SnapFailure };
    NumericError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// pre: r_in < |x| < R_out
OrbitFate orbit_fate(const ModelHomeo& h, Vec2 x, const FateParams& params = {});

// Turning number of x -> h(x) - x along the circle of the given radius.
WindingResult pl_index(const ModelHomeo& h, const WindingParams& params = {});

struct GridSpec {
    enum class Kind { Polar, Cartesian };
    Kind kind = Kind::Polar;
    // polar: n_radial geometric radii in [r_min, r_max] times n_angular angles
    // cartesian: n_radial x n_radial cell centres of [-r_max, r_max]^2
    int n_radial = 16;
    int n_angular = 16;
    double r_min = 0.25;
    double r_max = 4.0;
    void validate() const;
};

struct GridSample {
    Vec2 point;
    OrbitFate fate;
};

std::vector<Vec2> grid_points(const GridSpec& spec);
std::vector<GridSample> classify_grid(const ModelHomeo& h, const GridSpec& spec, const FateParams& params = {},
                                      unsigned jobs = 1);

struct ReverseOrbitSearch {
    bool found = false;
    std::size_t probes = 0;
    Vec2 point;
    strip::Point strip_point;
    OrbitFate fate;
    OrbitFate generic;  // fate predicted by the sector word
};

// Grid search over the strip chart of an indifferent sector for a point whose
// fate is the reverse of the sector's generic fate.
ReverseOrbitSearch find_reverse_orbit(const ModelHomeo& h, std::size_t sector, const FateParams& params = {},
                                      std::size_t max_probes = 10000);

}  // namespace qturn
