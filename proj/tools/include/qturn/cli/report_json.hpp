#pragma once

#include <vector>

#include "json.hpp"
#include "qturn/cli/config.hpp"
#include "qturn/pipeline.hpp"

namespace qturn::cli {

nlohmann::ordered_json report_to_json(const IndexReport& r);

struct SweepSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t outside_theory = 0;
    std::size_t numeric_failures = 0;
};

SweepSummary summarize(const std::vector<IndexReport>& reports);
nlohmann::ordered_json sweep_to_json(const Config& cfg, const std::vector<IndexReport>& reports);

}  // namespace qturn::cli
