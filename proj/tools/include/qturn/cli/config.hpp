#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qturn/pipeline.hpp"

namespace qturn::cli {

struct Config {
    PipelineConfig pipeline;
    std::size_t sweep_d = 0;  // 0: no sweep
    bool include_index_one = false;
    std::string out;          // empty: stdout
    std::size_t grid = 0;     // render: fate grid size, 0 = none
    double render_extent = 2.0;
};

// QTURN_JOBS if set and valid, otherwise 1
unsigned default_jobs();

nlohmann::ordered_json to_json(const PipelineConfig& c);
nlohmann::ordered_json to_json(const Config& c);
// Missing keys keep their defaults; unknown keys are rejected.
Config config_from_json(const nlohmann::ordered_json& j);
Config load_config(const std::string& path);

}  // namespace qturn::cli
