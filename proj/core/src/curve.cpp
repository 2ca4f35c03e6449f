#include "qturn/curve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>

#include "qturn/geometry.hpp"
#include "qturn/parallel.hpp"

namespace qturn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxSplitDepth = 40;

double unit_uniform(std::mt19937_64& rng) {
    // 53 random bits mapped to [0,1); independent of the library's distributions
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Appends the points of segment [a,b) so that both the piece and its image are at most delta long.
void split_segment(const ModelHomeo& h, Vec2 a, Vec2 ha, Vec2 b, Vec2 hb, double delta, int depth,
                   std::vector<Vec2>& pts, std::vector<Vec2>& imgs) {
    bool short_enough = norm(b - a) <= delta && norm(hb - ha) <= delta;
    if (short_enough || depth >= kMaxSplitDepth) {
        pts.push_back(a);
        imgs.push_back(ha);
        return;
    }
    Vec2 m = (a + b) * 0.5;
    Vec2 hm = h.apply(m);
    split_segment(h, a, ha, m, hm, delta, depth + 1, pts, imgs);
    split_segment(h, m, hm, b, hb, delta, depth + 1, pts, imgs);
}

// Uniform grid of segment ids keyed by cell.
class SegmentGrid {
public:
    explicit SegmentGrid(double cell) : cell_(cell) {}

    template <class F>
    void for_cells(Vec2 a, Vec2 b, double pad, F&& f) const {
        long x0 = cell_index(std::min(a.x, b.x) - pad), x1 = cell_index(std::max(a.x, b.x) + pad);
        long y0 = cell_index(std::min(a.y, b.y) - pad), y1 = cell_index(std::max(a.y, b.y) + pad);
        for (long x = x0; x <= x1; ++x)
            for (long y = y0; y <= y1; ++y) f(key(x, y));
    }

    void insert(std::uint32_t id, Vec2 a, Vec2 b, double pad) {
        for_cells(a, b, pad, [&](std::int64_t k) { cells_[k].push_back(id); });
    }

    void erase(std::uint32_t id, Vec2 a, Vec2 b, double pad) {
        for_cells(a, b, pad, [&](std::int64_t k) {
            auto it = cells_.find(k);
            if (it == cells_.end()) return;
            auto& v = it->second;
            auto pos = std::find(v.begin(), v.end(), id);
            if (pos != v.end()) {
                *pos = v.back();
                v.pop_back();
            }
        });
    }

    template <class F>
    void query(Vec2 a, Vec2 b, double pad, F&& f) const {
        for_cells(a, b, pad, [&](std::int64_t k) {
            auto it = cells_.find(k);
            if (it == cells_.end()) return;
            for (std::uint32_t id : it->second) f(id);
        });
    }

private:
    long cell_index(double v) const { return static_cast<long>(std::floor(v / cell_)); }
    static std::int64_t key(long x, long y) {
        return (static_cast<std::int64_t>(x) << 32) ^ static_cast<std::int64_t>(static_cast<std::uint32_t>(y));
    }

    double cell_;
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells_;
};

enum class Contact { None, Near, Cross };

Contact contact(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2, double tau) {
    if (std::max(p1.x, p2.x) + tau < std::min(q1.x, q2.x) || std::max(q1.x, q2.x) + tau < std::min(p1.x, p2.x) ||
        std::max(p1.y, p2.y) + tau < std::min(q1.y, q2.y) || std::max(q1.y, q2.y) + tau < std::min(p1.y, p2.y))
        return Contact::None;
    if (geom::segments_intersect(p1, p2, q1, q2)) return Contact::Cross;
    if (geom::segment_distance(p1, p2, q1, q2) <= tau) return Contact::Near;
    return Contact::None;
}

// Curve segments and image segments of a sliding arc with running contact counts.
class ArcWindow {
public:
    explicit ArcWindow(const DenseCurve& dc)
        : dc_(dc), curve_(2.0 * dc.delta), image_(2.0 * dc.delta), stamp_(dc.dense_size(), 0) {}

    long cross() const { return cross_; }
    long near() const { return near_; }

    void add(std::size_t e) { update(e, +1); }
    void remove(std::size_t e) { update(e, -1); }

private:
    Vec2 cp(std::size_t e, int end) const { return dc_.points[(e + end) % dc_.dense_size()]; }
    Vec2 ip(std::size_t e, int end) const { return dc_.images[(e + end) % dc_.dense_size()]; }

    void count(std::size_t c, std::size_t f, int sign) {
        Contact k = contact(cp(c, 0), cp(c, 1), ip(f, 0), ip(f, 1), dc_.tau);
        if (k == Contact::Cross) cross_ += sign;
        else if (k == Contact::Near) near_ += sign;
    }

    template <class F>
    void query_unique(const SegmentGrid& g, Vec2 a, Vec2 b, F&& f) {
        ++tick_;
        g.query(a, b, dc_.tau, [&](std::uint32_t id) {
            if (stamp_[id] == tick_) return;
            stamp_[id] = tick_;
            f(id);
        });
    }

    void update(std::size_t e, int sign) {
        e %= dc_.dense_size();
        const auto id = static_cast<std::uint32_t>(e);
        if (sign > 0) {
            query_unique(image_, cp(e, 0), cp(e, 1), [&](std::uint32_t f) { count(e, f, +1); });
            curve_.insert(id, cp(e, 0), cp(e, 1), dc_.tau);
            query_unique(curve_, ip(e, 0), ip(e, 1), [&](std::uint32_t c) { count(c, e, +1); });
            image_.insert(id, ip(e, 0), ip(e, 1), dc_.tau);
        } else {
            curve_.erase(id, cp(e, 0), cp(e, 1), dc_.tau);
            query_unique(image_, cp(e, 0), cp(e, 1), [&](std::uint32_t f) { count(e, f, -1); });
            image_.erase(id, ip(e, 0), ip(e, 1), dc_.tau);
            query_unique(curve_, ip(e, 0), ip(e, 1), [&](std::uint32_t c) { count(c, e, -1); });
        }
    }

    const DenseCurve& dc_;
    SegmentGrid curve_, image_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t tick_ = 0;
    long cross_ = 0, near_ = 0;
};

struct Extent {
    double diameter = 0.0;
    double radius = 0.0;
};

// Largest distance between two points: convex hull (monotone chain), then all hull pairs.
double point_set_diameter(std::span<const Vec2> pts) {
    std::vector<Vec2> p(pts.begin(), pts.end());
    std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) return p.size() == 2 ? norm(p[1] - p[0]) : 0.0;
    std::vector<Vec2> hull(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && geom::orient(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
        hull[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && geom::orient(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
        hull[k++] = p[i];
    }
    hull.resize(k - 1);
    double best = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t j = i + 1; j < hull.size(); ++j) best = std::max(best, norm(hull[j] - hull[i]));
    return best;
}

Extent extent_of(std::span<const Vec2> pts) {
    Extent e;
    if (pts.empty()) return e;
    double rs = 0.0;
    for (Vec2 p : pts) rs += norm(p);
    e.diameter = point_set_diameter(pts);
    e.radius = rs / static_cast<double>(pts.size());
    return e;
}

// Brute contact classification of an open arc at one densification level.
Freeness classify_open(std::span<const Vec2> arc, const ModelHomeo& h, double delta, double tau) {
    std::vector<Vec2> pts, imgs;
    Vec2 prev = arc[0], hprev = h.apply(prev);
    for (std::size_t i = 1; i < arc.size(); ++i) {
        Vec2 b = arc[i], hb = h.apply(b);
        split_segment(h, prev, hprev, b, hb, delta, 0, pts, imgs);
        prev = b;
        hprev = hb;
    }
    pts.push_back(prev);
    imgs.push_back(hprev);
    if (pts.size() == 1) return norm(imgs[0] - pts[0]) > tau ? Freeness::Free : Freeness::NotFree;
    SegmentGrid grid(2.0 * delta);
    for (std::size_t f = 0; f + 1 < imgs.size(); ++f)
        grid.insert(static_cast<std::uint32_t>(f), imgs[f], imgs[f + 1], tau);
    std::vector<std::uint32_t> stamp(imgs.size(), 0);
    std::uint32_t tick = 0;
    bool near = false;
    for (std::size_t c = 0; c + 1 < pts.size(); ++c) {
        ++tick;
        bool crossed = false;
        grid.query(pts[c], pts[c + 1], tau, [&](std::uint32_t f) {
            if (crossed || stamp[f] == tick) return;
            stamp[f] = tick;
            Contact k = contact(pts[c], pts[c + 1], imgs[f], imgs[f + 1], tau);
            if (k == Contact::Cross) crossed = true;
            else if (k == Contact::Near) near = true;
        });
        if (crossed) return Freeness::NotFree;
    }
    return near ? Freeness::Indeterminate : Freeness::Free;
}

Freeness free_refined(std::span<const Vec2> arc, const ModelHomeo& h, double delta, double tau, int rounds) {
    Freeness f = Freeness::Indeterminate;
    for (int k = 0; k <= rounds; ++k) {
        f = classify_open(arc, h, delta, tau);
        if (f != Freeness::Indeterminate) return f;
        delta *= 0.5;
    }
    return f;
}

}  // namespace

ClosedCurve::ClosedCurve(std::vector<Vec2> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 8) throw std::invalid_argument("closed curve needs at least 8 samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        Vec2 a = samples_[i], b = samples_[(i + 1) % samples_.size()];
        if (!std::isfinite(a.x) || !std::isfinite(a.y)) throw std::invalid_argument("curve sample is not finite");
        if (a.x == 0.0 && a.y == 0.0) throw std::invalid_argument("curve sample " + std::to_string(i) + " is 0");
        if (a == b) throw std::invalid_argument("curve samples " + std::to_string(i) + " and next coincide");
        if (geom::segment_hits_origin(a, b))
            throw std::invalid_argument("curve segment " + std::to_string(i) + " passes through 0");
    }
}

ClosedCurve ClosedCurve::circle(double radius, std::size_t samples, bool ccw) {
    if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be > 0");
    std::vector<Vec2> pts(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        double t = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        if (!ccw) t = -t;
        pts[i] = {radius * std::cos(t), radius * std::sin(t)};
    }
    return ClosedCurve(std::move(pts));
}

ClosedCurve ClosedCurve::star(double radius, std::size_t samples, std::uint64_t seed, double amplitude, int modes) {
    if (!(radius > 0.0)) throw std::invalid_argument("star radius must be > 0");
    if (modes < 1) throw std::invalid_argument("star needs at least one mode");
    std::mt19937_64 rng(seed);
    std::vector<double> a(static_cast<std::size_t>(modes)), b(a.size());
    for (int m = 0; m < modes; ++m) {
        a[static_cast<std::size_t>(m)] = 2.0 * unit_uniform(rng) - 1.0;
        b[static_cast<std::size_t>(m)] = 2.0 * unit_uniform(rng) - 1.0;
    }
    std::vector<Vec2> pts(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        double t = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        double e = 0.0;
        for (int m = 0; m < modes; ++m)
            e += a[static_cast<std::size_t>(m)] * std::cos((m + 1) * t) + b[static_cast<std::size_t>(m)] * std::sin((m + 1) * t);
        double rho = radius * std::exp(amplitude * e / modes);
        pts[i] = {rho * std::cos(t), rho * std::sin(t)};
    }
    return ClosedCurve(std::move(pts));
}

double ClosedCurve::diameter() const { return extent_of(samples_).diameter; }
double ClosedCurve::mean_radius() const { return extent_of(samples_).radius; }

ClosedCurve ClosedCurve::refined() const {
    std::vector<Vec2> pts;
    pts.reserve(2 * samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        pts.push_back(samples_[i]);
        pts.push_back((samples_[i] + at(i + 1)) * 0.5);
    }
    return ClosedCurve(std::move(pts));
}

ClosedCurve ClosedCurve::reindexed(std::size_t start) const {
    std::vector<Vec2> pts(samples_.size());
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = at(start + i);
    return ClosedCurve(std::move(pts));
}

void ClosedCurve::write_csv(std::ostream& os) const {
    char buf[96];
    for (Vec2 p : samples_) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
        os << buf;
    }
}

ClosedCurve ClosedCurve::read_csv(std::istream& is) {
    std::vector<Vec2> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("curve csv line " + std::to_string(lineno) + ": expected x,y");
        try {
            pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
        } catch (const std::logic_error&) {
            throw std::invalid_argument("curve csv line " + std::to_string(lineno) + ": bad number");
        }
    }
    return ClosedCurve(std::move(pts));
}

int degree(const ClosedCurve& c) {
    double total = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Vec2 a = c.at(i), b = c.at(i + 1);
        total += std::atan2(cross(a, b), dot(a, b));
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

void FreenessParams::validate() const {
    if (!(delta_fraction > 0.0)) throw std::invalid_argument("delta fraction must be > 0");
    if (!(tau_relative >= 0.0)) throw std::invalid_argument("tau must be >= 0");
    if (max_refinements < 0) throw std::invalid_argument("max refinements must be >= 0");
}

std::string to_string(Freeness f) {
    switch (f) {
        case Freeness::Free: return "free";
        case Freeness::NotFree: return "not free";
        case Freeness::Indeterminate: return "indeterminate";
    }
    return "?";
}

Freeness is_free(std::span<const Vec2> arc, const ModelHomeo& h, const FreenessParams& params,
                 double scale_diameter, double scale_radius) {
    params.validate();
    if (arc.empty()) throw std::invalid_argument("is_free needs a nonempty arc");
    Extent e = extent_of(arc);
    double diam = scale_diameter > 0.0 ? scale_diameter : e.diameter;
    double rad = scale_radius > 0.0 ? scale_radius : e.radius;
    double delta = diam > 0.0 ? diam * params.delta_fraction : rad * params.delta_fraction;
    return free_refined(arc, h, delta, params.tau_relative * rad, params.max_refinements);
}

DenseCurve densify(const ClosedCurve& c, const ModelHomeo& h, double delta, double tau) {
    if (!(delta > 0.0)) throw std::invalid_argument("densify needs delta > 0");
    DenseCurve dc;
    dc.delta = delta;
    dc.tau = tau;
    const std::size_t m = c.size();
    std::vector<Vec2> himg(m);
    for (std::size_t i = 0; i < m; ++i) himg[i] = h.apply(c.at(i));
    for (std::size_t i = 0; i < m; ++i) {
        dc.sample_start.push_back(dc.points.size());
        split_segment(h, c.at(i), himg[i], c.at(i + 1), himg[(i + 1) % m], delta, 0, dc.points, dc.images);
    }
    dc.sample_start.push_back(dc.points.size());
    return dc;
}

namespace {

std::size_t dense_index(const DenseCurve& dc, std::size_t sample) {
    const std::size_t m = dc.samples();
    return dc.sample_start[sample % m] + (sample / m) * dc.dense_size();
}

}  // namespace

bool image_meets(const DenseCurve& dc, std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1) {
    const std::size_t n = dc.dense_size();
    const std::size_t ia = dense_index(dc, a0), ja = dense_index(dc, a1);
    const std::size_t ib = dense_index(dc, b0), jb = dense_index(dc, b1);
    SegmentGrid grid(2.0 * dc.delta);
    for (std::size_t e = ib; e < jb; ++e)
        grid.insert(static_cast<std::uint32_t>(e % n), dc.points[e % n], dc.points[(e + 1) % n], 0.0);
    bool hit = false;
    for (std::size_t f = ia; f < ja && !hit; ++f) {
        Vec2 p = dc.images[f % n], q = dc.images[(f + 1) % n];
        grid.query(p, q, 0.0, [&](std::uint32_t c) {
            if (!hit && geom::segments_intersect(dc.points[c], dc.points[(c + 1) % n], p, q)) hit = true;
        });
    }
    return hit;
}

Decomposition cover_from(const std::vector<std::size_t>& reach, std::size_t start) {
    const std::size_t m = reach.size();
    auto reach_unrolled = [&](std::size_t pos) { return reach[pos % m] + (pos - pos % m); };
    Decomposition d;
    std::size_t pos = start % m;
    const std::size_t end = pos + m;
    d.vertices.push_back(pos);
    while (reach_unrolled(pos) < end) {
        std::size_t next = reach_unrolled(pos);
        if (next == pos) throw std::logic_error("no free cover: sample " + std::to_string(pos % m) + " cannot advance");
        pos = next;
        d.vertices.push_back(pos % m);
    }
    std::sort(d.vertices.begin(), d.vertices.end());
    return d;
}

HLengthResult h_length(const ClosedCurve& c, const ModelHomeo& h, const FreenessParams& params) {
    params.validate();
    double delta = c.diameter() * params.delta_fraction;
    double tau = c.mean_radius() * params.tau_relative;
    DenseCurve dc = densify(c, h, delta, tau);
    return h_length(dc, c, h, params);
}

HLengthResult h_length(const DenseCurve& dc, const ClosedCurve& c, const ModelHomeo& h,
                       const FreenessParams& params) {
    if (degree(c) != 1) throw std::invalid_argument("h_length needs a curve of degree 1");
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i)
        if (norm(h.apply(c.at(i)) - c.at(i)) <= dc.tau)
            throw std::logic_error("no free cover: sample " + std::to_string(i) + " is not free");

    HLengthResult res;
    res.reach.assign(m, 0);
    ArcWindow win(dc);
    long accepted_near = 0;
    auto add_span = [&](std::size_t s) {
        for (std::size_t e = dense_index(dc, s); e < dense_index(dc, s + 1); ++e) win.add(e);
    };
    auto remove_span = [&](std::size_t s) {
        for (std::size_t e = dense_index(dc, s); e < dense_index(dc, s + 1); ++e) win.remove(e);
        accepted_near = std::min(accepted_near, win.near());
    };
    std::size_t j = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (j < i) j = i;
        while (j + 1 <= i + m - 1) {
            add_span(j);
            bool ok = win.cross() == 0 && win.near() <= accepted_near;
            if (!ok && win.cross() == 0) {
                // only near contacts: decide on a refined copy of this arc
                ++res.ambiguous_checks;
                std::vector<Vec2> arc;
                for (std::size_t s = i; s <= j + 1; ++s) arc.push_back(c.at(s));
                Freeness f = free_refined(arc, h, dc.delta * 0.5, dc.tau, params.max_refinements);
                if (f == Freeness::Indeterminate)
                    throw IndeterminateError("freeness of arc " + std::to_string(i) + ".." +
                                             std::to_string((j + 1) % m) + " is indeterminate at margin " +
                                             std::to_string(dc.tau));
                if (f == Freeness::Free) {
                    accepted_near = win.near();
                    ok = true;
                }
            }
            if (!ok) {
                for (std::size_t e = dense_index(dc, j); e < dense_index(dc, j + 1); ++e) win.remove(e);
                break;
            }
            ++j;
        }
        res.reach[i] = j;
        if (j > i) remove_span(i);
    }

    res.length = std::numeric_limits<std::size_t>::max();
    for (std::size_t s = 0; s < m; ++s) {
        Decomposition d = cover_from(res.reach, s);
        if (d.arcs() < res.length) {
            res.length = d.arcs();
            res.witness = std::move(d);
        }
    }
    return res;
}

void CandidateSpec::validate() const {
    if (!(base_radius > 0.0)) throw std::invalid_argument("candidate base radius must be > 0");
    if (samples < 8) throw std::invalid_argument("candidate curves need at least 8 samples");
    if (k_min > k_max) throw std::invalid_argument("candidate radius exponents need k_min <= k_max");
    if (stars < 0) throw std::invalid_argument("star count must be >= 0");
    if (star_modes < 1) throw std::invalid_argument("star modes must be >= 1");
}

std::vector<ClosedCurve> candidate_family(const CandidateSpec& spec) {
    spec.validate();
    std::vector<ClosedCurve> out;
    for (int k = spec.k_min; k <= spec.k_max; ++k)
        out.push_back(ClosedCurve::circle(spec.base_radius * std::ldexp(1.0, k), spec.samples));
    std::mt19937_64 seeds(spec.seed);
    for (int s = 0; s < spec.stars; ++s)
        out.push_back(ClosedCurve::star(spec.base_radius, spec.samples, seeds(), spec.star_amplitude, spec.star_modes));
    return out;
}

ModuleEstimate estimate_module(const ModelHomeo& h, const std::vector<ClosedCurve>& candidates, long index,
                               const FreenessParams& params, unsigned jobs) {
    if (candidates.empty()) throw std::invalid_argument("estimate_module needs at least one candidate");
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (degree(candidates[i]) != 1)
            throw std::invalid_argument("candidate " + std::to_string(i) + " does not have degree 1");
    std::vector<HLengthResult> results(candidates.size());
    parallel_for(candidates.size(), jobs, [&](std::size_t i) { results[i] = h_length(candidates[i], h, params); });
    ModuleEstimate est;
    est.best = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        est.lengths.push_back(results[i].length);
        if (results[i].length < results[est.best].length) est.best = i;
    }
    est.upper = results[est.best].length;
    est.witness = results[est.best].witness;
    est.lower_bound = module_lower_bound(index);
    est.certified = static_cast<long>(est.upper) == est.lower_bound;
    return est;
}

}  // namespace qturn
