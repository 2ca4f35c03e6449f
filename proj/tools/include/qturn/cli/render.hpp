#pragma once

#include <cstdint>
#include <string>

#include "qturn/model.hpp"
#include "qturn/pipeline.hpp"

namespace qturn::cli {

struct RenderOptions {
    double extent = 2.0;  // half width of the view, in units of the candidate base radius
    CandidateSpec candidates;  // best curve is chosen among these; seed also drives the streaks
    int streak_seeds = 24;
    int streak_steps = 10;
    FreenessParams freeness;
};

// Sector rays, seeded orbit streaks, the best candidate curve and its decomposition vertices.
std::string render_svg(const ModelHomeo& h, const RenderOptions& opt);

// n x n cartesian grid over [-extent*R, extent*R]^2 (R the base radius) with fates and a colour per class.
std::string render_fate_csv(const ModelHomeo& h, std::size_t n, const RenderOptions& opt, const FateParams& fate,
                            unsigned jobs);

std::string fate_colour(const OrbitFate& f);

}  // namespace qturn::cli
