#include "qturn/cli/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

namespace qturn::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

// portable uniform in [0,1) from raw engine bits
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct View {
    double half = 1.0;
    double px = 640.0;
    double sx(double x) const { return (x + half) / (2.0 * half) * px; }
    double sy(double y) const { return (half - y) / (2.0 * half) * px; }
    bool inside(Vec2 p) const { return std::abs(p.x) <= 1.5 * half && std::abs(p.y) <= 1.5 * half; }
};

std::string polyline(const View& v, const std::vector<Vec2>& pts, const char* cls, bool closed) {
    std::ostringstream os;
    os << (closed ? "<polygon" : "<polyline") << " class=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        os << num(v.sx(pts[i].x)) << ',' << num(v.sy(pts[i].y));
    }
    os << "\"/>\n";
    return os.str();
}

std::string fate_label(const std::optional<Limit>& l) {
    if (!l) return "?";
    return *l == Limit::Zero ? "0" : "inf";
}

}  // namespace

std::string fate_colour(const OrbitFate& f) {
    if (!f.decided()) return "#9e9e9e";
    if (f.is(Limit::Infinity, Limit::Zero)) return "#1f77b4";
    if (f.is(Limit::Zero, Limit::Infinity)) return "#d62728";
    if (f.is(Limit::Zero, Limit::Zero)) return "#2ca02c";
    return "#ff7f0e";  // (inf, inf)
}

std::string render_svg(const ModelHomeo& h, const RenderOptions& opt) {
    opt.candidates.validate();
    opt.freeness.validate();
    if (!(opt.extent > 0.0)) throw std::invalid_argument("render: extent must be positive");
    if (opt.streak_seeds < 0 || opt.streak_steps < 0) throw std::invalid_argument("render: negative streak counts");

    View v;
    v.half = opt.extent * opt.candidates.base_radius;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
    os << "<title>" << h.word().unicode() << "</title>\n";
    os << "<style>.sector-ray{stroke:#444;stroke-width:1}.forward{fill:none;stroke:#d62728;stroke-width:0.8}"
          ".backward{fill:none;stroke:#1f77b4;stroke-width:0.8}.curve{fill:none;stroke:#000;stroke-width:1.5}"
          ".vertex{fill:#ff7f0e;stroke:#000}.label{font:14px sans-serif}</style>\n";
    os << "<rect width=\"640\" height=\"640\" fill=\"#fff\"/>\n";

    // sector rays, labelled with the vertical letter they carry
    const double far = 1.5 * v.half;
    for (std::size_t k = 0; k < h.d(); ++k) {
        double a = h.ray_angle(k);
        Vec2 end{far * std::cos(a), far * std::sin(a)};
        Vec2 tag{0.9 * v.half * std::cos(a), 0.9 * v.half * std::sin(a)};
        os << "<line class=\"sector-ray\" data-sector=\"" << k << "\" x1=\"" << num(v.sx(0)) << "\" y1=\""
           << num(v.sy(0)) << "\" x2=\"" << num(v.sx(end.x)) << "\" y2=\"" << num(v.sy(end.y)) << "\"/>\n";
        os << "<text class=\"label\" x=\"" << num(v.sx(tag.x)) << "\" y=\"" << num(v.sy(tag.y)) << "\">"
           << to_unicode(h.word().at(static_cast<long>(2 * k))) << "</text>\n";
    }

    // streaks from seeded points in the view disk
    std::mt19937_64 rng(opt.candidates.seed);
    for (int i = 0; i < opt.streak_seeds; ++i) {
        double rho = v.half * std::sqrt(0.02 + 0.98 * unit(rng));
        double a = 2.0 * std::numbers::pi * unit(rng);
        Vec2 p0{rho * std::cos(a), rho * std::sin(a)};
        for (int dir = 0; dir < 2; ++dir) {
            std::vector<Vec2> pts{p0};
            Vec2 p = p0;
            for (int s = 0; s < opt.streak_steps; ++s) {
                p = dir == 0 ? h.apply(p) : h.apply_inverse(p);
                if (!std::isfinite(p.x) || !std::isfinite(p.y) || !v.inside(p) || norm(p) < 1e-9) break;
                pts.push_back(p);
            }
            if (pts.size() > 1) os << polyline(v, pts, dir == 0 ? "forward" : "backward", false);
        }
    }

    // best candidate curve with its witness decomposition
    std::vector<ClosedCurve> cands = candidate_family(opt.candidates);
    ModuleEstimate est = estimate_module(h, cands, h.index(), opt.freeness, 1);
    const ClosedCurve& best = cands[est.best];
    os << polyline(v, best.samples(), "curve", true);
    for (std::size_t s : est.witness.vertices) {
        Vec2 p = best.at(s);
        os << "<circle class=\"vertex\" data-sample=\"" << s << "\" cx=\"" << num(v.sx(p.x)) << "\" cy=\""
           << num(v.sy(p.y)) << "\" r=\"4\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_fate_csv(const ModelHomeo& h, std::size_t n, const RenderOptions& opt, const FateParams& fate,
                            unsigned jobs) {
    if (n == 0) throw std::invalid_argument("render: grid size must be positive");
    GridSpec spec;
    spec.kind = GridSpec::Kind::Cartesian;
    spec.n_radial = static_cast<int>(n);
    spec.n_angular = 1;
    spec.r_max = opt.extent * opt.candidates.base_radius;
    spec.r_min = spec.r_max;  // unused for cartesian grids
    std::vector<GridSample> grid = classify_grid(h, spec, fate, jobs);
    std::ostringstream os;
    os << "row,col,x,y,alpha,omega,colour\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const GridSample& g = grid[i];
        os << i / n << ',' << i % n << ',' << num(g.point.x) << ',' << num(g.point.y) << ','
           << fate_label(g.fate.alpha) << ',' << fate_label(g.fate.omega) << ',' << fate_colour(g.fate) << '\n';
    }
    return os.str();
}

}  // namespace qturn::cli
