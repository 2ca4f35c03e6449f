#include "qturn/dynamics.hpp"

#include <cmath>
#include <functional>

#include "qturn/parallel.hpp"

namespace qturn {

namespace {

constexpr double kPi = std::numbers::pi;

std::string limit_str(const std::optional<Limit>& l) { return l ? to_string(*l) : "?"; }

std::optional<Limit> escape(const ModelHomeo& h, Vec2 x, const FateParams& p, bool forward) {
    for (int n = 0; n < p.max_iter; ++n) {
        x = forward ? h.apply(x) : h.apply_inverse(x);
        double r = norm(x);
        if (r < p.r_in) return Limit::Zero;
        if (r > p.R_out) return Limit::Infinity;
    }
    return std::nullopt;
}

double wrap(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
}

}  // namespace

std::string OrbitFate::str() const { return "(" + limit_str(alpha) + "," + limit_str(omega) + ")"; }

void FateParams::validate() const {
    if (!(r_in > 0.0) || !(r_in < R_out)) throw std::invalid_argument("fate thresholds need 0 < r_in < R_out");
    if (max_iter < 1) throw std::invalid_argument("fate max_iter must be >= 1");
}

void WindingParams::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("winding radius must be > 0");
    if (initial_samples < 3) throw std::invalid_argument("winding needs at least 3 initial samples");
    if (max_depth < 0) throw std::invalid_argument("winding max_depth must be >= 0");
    if (!(step_bound > 0.0) || step_bound > kPi) throw std::invalid_argument("winding step_bound must be in (0, pi]");
    if (!(snap_tolerance > 0.0) || snap_tolerance >= 0.5)
        throw std::invalid_argument("winding snap tolerance must be in (0, 0.5)");
}

void GridSpec::validate() const {
    if (n_radial < 1 || n_angular < 1) throw std::invalid_argument("grid dimensions must be >= 1");
    if (!(r_min > 0.0) || !(r_min <= r_max)) throw std::invalid_argument("grid needs 0 < r_min <= r_max");
}

OrbitFate orbit_fate(const ModelHomeo& h, Vec2 x, const FateParams& params) {
    params.validate();
    double r = norm(x);
    if (!(r > params.r_in && r < params.R_out))
        throw std::invalid_argument("orbit_fate: start point must satisfy r_in < |x| < R_out");
    return {escape(h, x, params, false), escape(h, x, params, true)};
}

WindingResult pl_index(const ModelHomeo& h, const WindingParams& params) {
    params.validate();
    WindingResult res;
    auto angle_at = [&](double t) {
        Vec2 p{params.radius * std::cos(t), params.radius * std::sin(t)};
        Vec2 v = h.apply(p) - p;
        ++res.evaluations;
        if (v.x == 0.0 && v.y == 0.0) throw NumericError(NumericError::Kind::NonConvergent, "fixed point on the circle");
        return std::atan2(v.y, v.x);
    };
    std::function<double(double, double, double, double, int)> step = [&](double a, double fa, double b, double fb,
                                                                          int depth) -> double {
        double delta = wrap(fb - fa);
        if (std::abs(delta) < params.step_bound) return delta;
        if (depth >= params.max_depth) {
            if (std::abs(delta) >= kPi - 1e-12)
                throw NumericError(NumericError::Kind::NonConvergent,
                                   "winding: angular step of pi at maximal depth near t = " + std::to_string(a));
            return delta;
        }
        res.depth_used = std::max(res.depth_used, depth + 1);
        double m = 0.5 * (a + b);
        double fm = angle_at(m);
        return step(a, fa, m, fm, depth + 1) + step(m, fm, b, fb, depth + 1);
    };
    const int n = params.initial_samples;
    double total = 0.0;
    double t0 = 0.0, f0 = angle_at(0.0), prev_t = t0, prev_f = f0;
    for (int i = 1; i <= n; ++i) {
        double t = 2.0 * kPi * i / n;
        double f = i == n ? f0 : angle_at(t);
        total += step(prev_t, prev_f, t, f, 0);
        prev_t = t;
        prev_f = f;
    }
    res.raw = total / (2.0 * kPi);
    res.index = std::lround(res.raw);
    res.residual = std::abs(res.raw - static_cast<double>(res.index));
    if (res.residual >= params.snap_tolerance)
        throw NumericError(NumericError::Kind::SnapFailure, "winding number " + std::to_string(res.raw) +
                                                                " is not within snap tolerance of an integer");
    return res;
}

std::vector<Vec2> grid_points(const GridSpec& spec) {
    spec.validate();
    std::vector<Vec2> pts;
    if (spec.kind == GridSpec::Kind::Polar) {
        for (int i = 0; i < spec.n_radial; ++i) {
            double w = spec.n_radial == 1 ? 0.0 : static_cast<double>(i) / (spec.n_radial - 1);
            double rho = spec.r_min * std::pow(spec.r_max / spec.r_min, w);
            for (int j = 0; j < spec.n_angular; ++j) {
                double a = 2.0 * kPi * (j + 0.5) / spec.n_angular;
                pts.push_back({rho * std::cos(a), rho * std::sin(a)});
            }
        }
    } else {
        const int n = spec.n_radial;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                pts.push_back({-spec.r_max + (j + 0.5) * 2.0 * spec.r_max / n,
                               spec.r_max - (i + 0.5) * 2.0 * spec.r_max / n});
    }
    return pts;
}

std::vector<GridSample> classify_grid(const ModelHomeo& h, const GridSpec& spec, const FateParams& params,
                                      unsigned jobs) {
    params.validate();
    std::vector<Vec2> pts = grid_points(spec);
    std::vector<GridSample> out(pts.size());
    parallel_for(pts.size(), jobs, [&](std::size_t i) {
        out[i].point = pts[i];
        double r = norm(pts[i]);
        // the fixed point itself and points beyond the thresholds stay undecided
        if (r > params.r_in && r < params.R_out) out[i].fate = orbit_fate(h, pts[i], params);
    });
    return out;
}

ReverseOrbitSearch find_reverse_orbit(const ModelHomeo& h, std::size_t sector, const FateParams& params,
                                      std::size_t max_probes) {
    const SectorModel& m = h.sector(sector);
    if (m.kind() != SectorType::Indifferent)
        throw std::invalid_argument("reverse orbit search needs an indifferent sector, sector " +
                                    std::to_string(sector) + " is " + to_string(m.kind()));
    ReverseOrbitSearch res;
    AlphaOmega ao = alpha_omega(m.word3());
    res.generic = {ao.alpha, ao.omega};
    // uniform strip grid: 99 interior columns, heights in steps of 1/20 over [-2, 2]
    constexpr int kCols = 100, kRowsHalf = 40;
    constexpr double kRowStep = 0.05;
    for (int i = 1; i < kCols; ++i) {
        for (int j = -kRowsHalf; j <= kRowsHalf; ++j) {
            if (res.probes >= max_probes) return res;
            strip::Point q{-1.0 + 2.0 * i / kCols, j * kRowStep};
            Vec2 x = h.from_chart({sector, m.strip_to_band(q)});
            ++res.probes;
            double r = norm(x);
            if (!(r > params.r_in && r < params.R_out)) continue;
            OrbitFate f = orbit_fate(h, x, params);
            if (f.decided() && f.alpha == ao.omega && f.omega == ao.alpha) {
                res.found = true;
                res.point = x;
                res.strip_point = q;
                res.fate = f;
                return res;
            }
        }
    }
    return res;
}

}  // namespace qturn
