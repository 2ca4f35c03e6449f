#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "qturn/model.hpp"

namespace qturn {

class ClosedCurve {
public:
    // M >= 8 cyclic samples, none at 0, consecutive samples distinct, no segment through 0
    explicit ClosedCurve(std::vector<Vec2> samples);

    static ClosedCurve circle(double radius, std::size_t samples, bool counterclockwise = true);
    // r(t) = radius * exp(amplitude * sum_m (a_m cos mt + b_m sin mt) / modes), coefficients from seed
    static ClosedCurve star(double radius, std::size_t samples, std::uint64_t seed, double amplitude,
                            int modes);

    std::size_t size() const { return samples_.size(); }
    const std::vector<Vec2>& samples() const { return samples_; }
    Vec2 at(std::size_t i) const { return samples_[i % samples_.size()]; }
    double diameter() const;
    double mean_radius() const;

    // sample doubling by midpoint insertion
    ClosedCurve refined() const;
    // samples re-indexed to start at `start`
    ClosedCurve reindexed(std::size_t start) const;

    void write_csv(std::ostream& os) const;
    static ClosedCurve read_csv(std::istream& is);

private:
    std::vector<Vec2> samples_;
};

int degree(const ClosedCurve& c);

struct FreenessParams {
    double delta_fraction = 1.0 / 512.0;  // densification step as a fraction of the curve diameter
    double tau_relative = 1e-7;           // safety margin as a fraction of the curve radius
    int max_refinements = 6;
    void validate() const;
};

enum class Freeness { Free, NotFree, Indeterminate };
std::string to_string(Freeness f);

class IndeterminateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Open polyline arc. diameter/radius scales default to the arc's own.
Freeness is_free(std::span<const Vec2> arc, const ModelHomeo& h, const FreenessParams& params = {},
                 double scale_diameter = 0.0, double scale_radius = 0.0);

// Densified closed curve together with its image, both with segments of length <= delta.
struct DenseCurve {
    std::vector<Vec2> points;
    std::vector<Vec2> images;
    std::vector<std::size_t> sample_start;  // dense index of each sample, plus the total count at the end
    double delta = 0.0;
    double tau = 0.0;

    std::size_t samples() const { return sample_start.size() - 1; }
    std::size_t dense_size() const { return points.size(); }
};

DenseCurve densify(const ClosedCurve& c, const ModelHomeo& h, double delta, double tau);

// Whether the image of the arc over samples [a0, a1] meets the arc over [b0, b1].
// Sample indices are unrolled: a0 <= a1 < a0 + M.
bool image_meets(const DenseCurve& dc, std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1);

struct Decomposition {
    std::vector<std::size_t> vertices;  // sample indices in increasing cyclic order
    std::size_t arcs() const { return vertices.size(); }
};

struct HLengthResult {
    std::size_t length = 0;
    Decomposition witness;
    std::vector<std::size_t> reach;  // reach[i] in [i, i+M-1]: furthest free arc end, unrolled
    std::size_t ambiguous_checks = 0;
};

// Greedy hops from one start sample; the minimum over all starts is the exact circular cover.
Decomposition cover_from(const std::vector<std::size_t>& reach, std::size_t start);

HLengthResult h_length(const ClosedCurve& c, const ModelHomeo& h, const FreenessParams& params = {});
// same computation on an already densified curve
HLengthResult h_length(const DenseCurve& dc, const ClosedCurve& c, const ModelHomeo& h,
                       const FreenessParams& params);

struct CandidateSpec {
    double base_radius = 1.0;
    std::size_t samples = 512;
    int k_min = -2;
    int k_max = 2;
    int stars = 4;
    double star_amplitude = 0.15;
    int star_modes = 5;
    std::uint64_t seed = 1;
    void validate() const;
};

std::vector<ClosedCurve> candidate_family(const CandidateSpec& spec);

struct ModuleEstimate {
    std::size_t upper = 0;
    std::size_t best = 0;  // index into the candidate list
    Decomposition witness;
    std::vector<std::size_t> lengths;
    long lower_bound = 0;
    bool certified = false;
};

ModuleEstimate estimate_module(const ModelHomeo& h, const std::vector<ClosedCurve>& candidates, long index,
                               const FreenessParams& params = {}, unsigned jobs = 1);

}  // namespace qturn
