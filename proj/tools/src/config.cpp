#include "qturn/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

namespace qturn::cli {

using json = nlohmann::ordered_json;

unsigned default_jobs() {
    const char* env = std::getenv("QTURN_JOBS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 256) return 1;
    return static_cast<unsigned>(v);
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument("config: '" + where + "' must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw std::invalid_argument("config: unknown key '" + where + "." + it.key() + "'");
}

template <class T>
void get_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

json to_json(const PipelineConfig& c) {
    return json{
        {"fate", {{"r_in", c.fate.r_in}, {"R_out", c.fate.R_out}, {"max_iter", c.fate.max_iter}}},
        {"winding",
         {{"radius", c.winding.radius},
          {"initial_samples", c.winding.initial_samples},
          {"max_depth", c.winding.max_depth},
          {"step_bound", c.winding.step_bound},
          {"snap_tolerance", c.winding.snap_tolerance}}},
        {"freeness",
         {{"delta_fraction", c.freeness.delta_fraction},
          {"tau_relative", c.freeness.tau_relative},
          {"max_refinements", c.freeness.max_refinements}}},
        {"candidates",
         {{"base_radius", c.candidates.base_radius},
          {"samples", c.candidates.samples},
          {"k_min", c.candidates.k_min},
          {"k_max", c.candidates.k_max},
          {"stars", c.candidates.stars},
          {"star_amplitude", c.candidates.star_amplitude},
          {"star_modes", c.candidates.star_modes},
          {"seed", c.candidates.seed}}},
        {"reverse_probes", c.reverse_probes},
        {"jobs", c.jobs},
    };
}

json to_json(const Config& c) {
    json j = to_json(c.pipeline);
    j["sweep_d"] = c.sweep_d;
    j["include_index_one"] = c.include_index_one;
    j["out"] = c.out;
    j["grid"] = c.grid;
    j["render_extent"] = c.render_extent;
    return j;
}

Config config_from_json(const json& j) {
    Config c;
    try {
        check_keys(j,
                   {"fate", "winding", "freeness", "candidates", "reverse_probes", "jobs", "sweep_d",
                    "include_index_one", "out", "grid", "render_extent"},
                   "config");
        PipelineConfig& p = c.pipeline;
        if (j.contains("fate")) {
            const json& f = j.at("fate");
            check_keys(f, {"r_in", "R_out", "max_iter"}, "fate");
            get_if(f, "r_in", p.fate.r_in);
            get_if(f, "R_out", p.fate.R_out);
            get_if(f, "max_iter", p.fate.max_iter);
        }
        if (j.contains("winding")) {
            const json& w = j.at("winding");
            check_keys(w, {"radius", "initial_samples", "max_depth", "step_bound", "snap_tolerance"}, "winding");
            get_if(w, "radius", p.winding.radius);
            get_if(w, "initial_samples", p.winding.initial_samples);
            get_if(w, "max_depth", p.winding.max_depth);
            get_if(w, "step_bound", p.winding.step_bound);
            get_if(w, "snap_tolerance", p.winding.snap_tolerance);
        }
        if (j.contains("freeness")) {
            const json& f = j.at("freeness");
            check_keys(f, {"delta_fraction", "tau_relative", "max_refinements"}, "freeness");
            get_if(f, "delta_fraction", p.freeness.delta_fraction);
            get_if(f, "tau_relative", p.freeness.tau_relative);
            get_if(f, "max_refinements", p.freeness.max_refinements);
        }
        if (j.contains("candidates")) {
            const json& k = j.at("candidates");
            check_keys(k,
                       {"base_radius", "samples", "k_min", "k_max", "stars", "star_amplitude", "star_modes", "seed"},
                       "candidates");
            get_if(k, "base_radius", p.candidates.base_radius);
            get_if(k, "samples", p.candidates.samples);
            get_if(k, "k_min", p.candidates.k_min);
            get_if(k, "k_max", p.candidates.k_max);
            get_if(k, "stars", p.candidates.stars);
            get_if(k, "star_amplitude", p.candidates.star_amplitude);
            get_if(k, "star_modes", p.candidates.star_modes);
            get_if(k, "seed", p.candidates.seed);
        }
        get_if(j, "reverse_probes", p.reverse_probes);
        get_if(j, "jobs", p.jobs);
        get_if(j, "sweep_d", c.sweep_d);
        get_if(j, "include_index_one", c.include_index_one);
        get_if(j, "out", c.out);
        get_if(j, "grid", c.grid);
        get_if(j, "render_extent", c.render_extent);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.pipeline.fate.validate();
    c.pipeline.winding.validate();
    c.pipeline.freeness.validate();
    c.pipeline.candidates.validate();
    if (c.pipeline.jobs == 0) throw std::invalid_argument("config: jobs must be >= 1");
    if (!(c.render_extent > 0.0)) throw std::invalid_argument("config: render_extent must be positive");
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config '" + path + "': " + e.what());
    }
    // a full report is accepted too: its embedded config is used
    if (j.is_object() && j.contains("format") && j.contains("config")) j = j.at("config");
    return config_from_json(j);
}

}  // namespace qturn::cli
