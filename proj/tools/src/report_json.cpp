#include "qturn/cli/report_json.hpp"

#include <algorithm>

namespace qturn::cli {

using json = nlohmann::ordered_json;

namespace {

json fate_json(const OrbitFate& f) {
    auto lim = [](const std::optional<Limit>& l) -> json {
        if (!l) return nullptr;
        return *l == Limit::Zero ? "0" : "inf";
    };
    return json{{"alpha", lim(f.alpha)}, {"omega", lim(f.omega)}};
}

std::string petal_subword(const CyclicWord& w, std::size_t pos) {
    std::string s;
    for (long i = 0; i < 3; ++i) s += to_ascii(w.at(static_cast<long>(pos) + i));
    return s;
}

}  // namespace

json report_to_json(const IndexReport& r) {
    json j;
    j["format"] = r.format;
    j["chart_conventions"] = kChartConventions;
    j["word_in"] = r.word_in;
    const CyclicWord w = CyclicWord::parse(r.word_in);
    j["word_in_unicode"] = w.unicode();
    j["d"] = r.d;
    j["symbolic_index"] = r.symbolic_index;
    j["numeric_index"] = r.numeric_index ? json(*r.numeric_index) : json(nullptr);
    j["residual"] = r.residual;
    j["word_recovered"] = r.word_recovered ? json(*r.word_recovered) : json(nullptr);
    j["recovery_error"] = r.recovery_error;
    j["h_lengths"] = r.h_lengths;
    j["module_estimate"] = r.module_estimate;
    j["best_candidate"] = r.best_candidate;
    j["module_lower_bound"] = r.module_lower_bound;
    j["certified"] = r.certified;
    j["vertices"] = r.vertices;

    json tr = json::array();
    for (std::size_t k = 0; k < r.forward.size(); ++k)
        tr.push_back({{"vertex", k}, {"forward", static_cast<bool>(r.forward[k])},
                      {"backward", static_cast<bool>(r.backward[k])}});
    j["transitions"] = tr;

    json vf = json::array();
    for (std::size_t k = 0; k < r.vertex_fates.size(); ++k) {
        json e = fate_json(r.vertex_fates[k].fate);
        e["vertex"] = k;
        e["sample"] = r.vertex_fates[k].sample;
        vf.push_back(e);
    }
    j["vertex_fates"] = vf;

    json petals = json::array();
    for (const Petal& p : r.petals)
        petals.push_back({{"position", p.position}, {"kind", to_string(p.kind)}, {"subword", petal_subword(w, p.position)}});
    j["petals"] = petals;

    json types = json::array();
    for (SectorType t : r.sector_types) types.push_back(std::string(1, sector_code(t)));
    j["sector_types"] = types;
    j["conservative"] = r.conservative;
    j["outside_theory"] = r.outside_theory;
    j["numeric_failure"] = r.numeric_failure;
    j["warnings"] = r.warnings;

    json ro = json::array();
    for (const ReverseOrbitEntry& e : r.reverse_orbits) {
        json x{{"sector", e.sector},
               {"found", e.search.found},
               {"probes", e.search.probes},
               {"generic", fate_json(e.search.generic)}};
        if (e.search.found) {
            x["point"] = {e.search.point.x, e.search.point.y};
            x["strip_point"] = {e.search.strip_point.theta, e.search.strip_point.s};
            x["fate"] = fate_json(e.search.fate);
        }
        ro.push_back(x);
    }
    j["reverse_orbits"] = ro;

    json checks = json::array();
    for (const CheckResult& c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = checks;
    j["status"] = r.status();
    j["timings"] = r.timings;
    j["config"] = to_json(r.config);
    return j;
}

SweepSummary summarize(const std::vector<IndexReport>& reports) {
    SweepSummary s;
    for (const IndexReport& r : reports) {
        ++s.total;
        if (r.numeric_failure) ++s.numeric_failures;
        if (r.outside_theory)
            ++s.outside_theory;
        else if (r.all_checks_pass())
            ++s.passed;
        else
            ++s.failed;
    }
    return s;
}

json sweep_to_json(const Config& cfg, const std::vector<IndexReport>& reports) {
    json j;
    j["format"] = kReportFormat;
    j["sweep_d"] = cfg.sweep_d;
    j["include_index_one"] = cfg.include_index_one;

    // pass/fail matrix: one row per word, one column per check name in first-seen order
    std::vector<std::string> columns;
    for (const IndexReport& r : reports)
        for (const CheckResult& c : r.checks)
            if (std::find(columns.begin(), columns.end(), c.name) == columns.end()) columns.push_back(c.name);
    json rows = json::array();
    for (const IndexReport& r : reports) {
        json cells = json::array();
        for (const std::string& name : columns) {
            auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) { return c.name == name; });
            cells.push_back(it == r.checks.end() ? json(nullptr) : json(it->passed));
        }
        rows.push_back({{"word", r.word_in}, {"status", r.status()}, {"checks", cells}});
    }
    j["matrix"] = {{"columns", columns}, {"rows", rows}};

    SweepSummary s = summarize(reports);
    j["summary"] = {{"total", s.total},
                    {"passed", s.passed},
                    {"failed", s.failed},
                    {"outside_theory", s.outside_theory},
                    {"numeric_failures", s.numeric_failures}};
    json words = json::array();
    for (const IndexReport& r : reports) {
        json x = report_to_json(r);
        x.erase("config");  // shared, stored once below
        words.push_back(std::move(x));
    }
    j["reports"] = std::move(words);
    j["config"] = to_json(cfg);
    return j;
}

}  // namespace qturn::cli
