#include "qturn/cli/commands.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "qturn/cli/config.hpp"
#include "qturn/cli/render.hpp"
#include "qturn/cli/report_json.hpp"
#include "qturn/parallel.hpp"

namespace qturn::cli {

namespace {

using json = nlohmann::ordered_json;

// Thrown for bad input the user can fix; maps to the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CyclicWord parse_word(const std::string& text) {
    try {
        return CyclicWord::parse(text);
    } catch (const ParseError& e) {
        throw UsageError(e.what());  // message carries the column
    }
}

CyclicWord parse_allowed(const std::string& text) {
    CyclicWord w = parse_word(text);
    if (!is_allowed(w)) throw UsageError("word " + w.ascii() + " is not allowed: letters must alternate vertical and horizontal");
    if (w.d() < 2) throw UsageError("word " + w.ascii() + " has d = 1 and is not realizable");
    return w;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
    f << text;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed: " + std::strerror(errno));
}

// Flags shared by verify and render. Values are applied on top of the config only when given.
struct CommonFlags {
    double radius = 1.0;
    std::size_t samples = 512;
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    std::string out;
    std::string config;
    CLI::Option* o_radius = nullptr;
    CLI::Option* o_samples = nullptr;
    CLI::Option* o_jobs = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_out = nullptr;

    void attach(CLI::App* app) {
        o_radius = app->add_option("--radius", radius, "curve and winding-circle radius")->check(CLI::PositiveNumber);
        o_samples = app->add_option("--samples", samples, "samples per candidate curve")->check(CLI::Range(8, 1 << 20));
        o_jobs = app->add_option("--jobs", jobs, "worker threads (default: QTURN_JOBS or 1)")->check(CLI::Range(1, 256));
        o_seed = app->add_option("--seed", seed, "seed for star candidates and render streaks");
        o_out = app->add_option("--out", out, "output file (default: stdout)");
        app->add_option("--config", config, "config file (a serialized config or a full report)");
    }

    Config resolve() const {
        Config c;
        if (!config.empty()) {
            try {
                c = load_config(config);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            } catch (const std::runtime_error& e) {
                throw IoError(e.what());
            }
        } else {
            c.pipeline.jobs = default_jobs();
        }
        if (o_radius->count()) {
            c.pipeline.winding.radius = radius;
            c.pipeline.candidates.base_radius = radius;
        }
        if (o_samples->count()) c.pipeline.candidates.samples = samples;
        if (o_jobs->count()) c.pipeline.jobs = jobs;
        if (o_seed->count()) c.pipeline.candidates.seed = seed;
        if (o_out->count()) c.out = out;
        return c;
    }
};

std::string petal_text(const CyclicWord& w, const Petal& p) {
    std::string s;
    for (long i = 0; i < 3; ++i) s += to_unicode(w.at(static_cast<long>(p.position) + i));
    return s + " " + to_string(p.kind) + " (position " + std::to_string(p.position) + ")";
}

int cmd_word(const std::string& text, bool as_json, std::ostream& out) {
    CyclicWord w = parse_word(text);
    if (!is_allowed(w)) throw UsageError("word " + w.ascii() + " is not allowed: letters must alternate vertical and horizontal");
    const long index = symbolic_index(w);
    const std::vector<SectorType> types = sector_types(w);
    const std::vector<Petal> petals = detect_petals(w);
    std::string sectors;
    for (std::size_t k = 0; k < types.size(); ++k) sectors += (k ? "," : "") + std::string(1, sector_code(types[k]));

    if (as_json) {
        json j{{"format", kReportFormat},
               {"word", w.ascii()},
               {"word_unicode", w.unicode()},
               {"canonical", w.canonical().ascii()},
               {"allowed", true},
               {"d", w.d()},
               {"ip_cyclic", ip_cyclic(w).str()},
               {"symbolic_index", index},
               {"sector_types", json::array()},
               {"petals", json::array()},
               {"conservative", is_conservative_word(w)},
               {"module_lower_bound", module_lower_bound(index)}};
        for (SectorType t : types) j["sector_types"].push_back(std::string(1, sector_code(t)));
        for (const Petal& p : petals) j["petals"].push_back({{"position", p.position}, {"kind", to_string(p.kind)}});
        out << j.dump(2) << '\n';
        return kPass;
    }
    out << "word:               " << w.unicode() << " (" << w.ascii() << ")\n";
    out << "canonical:          " << w.canonical().ascii() << '\n';
    out << "allowed:            yes\n";
    out << "d:                  " << w.d() << '\n';
    out << "IP_c:               " << ip_cyclic(w).str() << '\n';
    out << "index:              " << index << '\n';
    out << "sectors:            " << sectors << '\n';
    out << "petals:             " << petals.size() << '\n';
    for (const Petal& p : petals) out << "  " << petal_text(w, p) << '\n';
    out << "conservative:       " << (is_conservative_word(w) ? "yes" : "no") << '\n';
    out << "module lower bound: " << module_lower_bound(index) << '\n';
    return kPass;
}

int exit_for(const std::vector<IndexReport>& reports) {
    bool failed = false, numeric = false;
    for (const IndexReport& r : reports) {
        if (r.outside_theory || r.all_checks_pass()) continue;
        if (r.numeric_failure)
            numeric = true;
        else
            failed = true;
    }
    if (failed) return kAssertFailure;
    return numeric ? kNonConvergence : kPass;
}

int cmd_verify(const std::string& text, const Config& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.sweep_d == 0) {
        if (text.empty()) throw UsageError("verify needs a WORD or --sweep d");
        CyclicWord w = parse_allowed(text);
        IndexReport r = verify(w, cfg.pipeline);
        json j = report_to_json(r);
        j["config"] = to_json(cfg);
        write_text(cfg.out, j.dump(2) + "\n", out);
        err << w.ascii() << ": " << r.status() << '\n';
        return exit_for({r});
    }
    if (!text.empty()) throw UsageError("verify takes either a WORD or --sweep, not both");
    if (cfg.sweep_d < 2 || cfg.sweep_d > 8) throw UsageError("--sweep needs 2 <= d <= 8");

    std::vector<CyclicWord> words;
    for (const CyclicWord& w : enumerate_allowed(cfg.sweep_d)) {
        bool outside = symbolic_index(w) == 1 && w.d() < 4;
        if (!outside || cfg.include_index_one) words.push_back(w);
    }
    // words in parallel, each verified single-threaded; results merged by position
    PipelineConfig inner = cfg.pipeline;
    inner.jobs = 1;
    std::vector<IndexReport> reports(words.size());
    parallel_for(words.size(), cfg.pipeline.jobs, [&](std::size_t i) { reports[i] = verify(words[i], inner); });

    write_text(cfg.out, sweep_to_json(cfg, reports).dump(2) + "\n", out);
    SweepSummary s = summarize(reports);
    err << "sweep d=" << cfg.sweep_d << ": " << s.total << " words, " << s.passed << " pass, " << s.failed
        << " fail, " << s.outside_theory << " outside theory\n";
    for (const IndexReport& r : reports)
        if (!r.outside_theory && !r.all_checks_pass()) err << "  fail: " << r.word_in << '\n';
    return exit_for(reports);
}

int cmd_render(const std::string& text, const Config& cfg, const std::string& csv_path, std::ostream& out) {
    CyclicWord w = parse_allowed(text);
    const ModelHomeo h(w);
    RenderOptions opt;
    opt.extent = cfg.render_extent;
    opt.candidates = cfg.pipeline.candidates;
    opt.freeness = cfg.pipeline.freeness;
    const bool want_csv = cfg.grid > 0;
    if (!cfg.out.empty() || !want_csv) write_text(cfg.out, render_svg(h, opt), out);
    if (want_csv) write_text(csv_path, render_fate_csv(h, cfg.grid, opt, cfg.pipeline.fate, cfg.pipeline.jobs), out);
    return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quarter-turn index toolkit for planar fixed points", "qturn"};
    app.require_subcommand(1);

    std::string word_text;
    bool word_json = false;
    CLI::App* word = app.add_subcommand("word", "symbolic data of a cyclic word");
    word->add_option("WORD", word_text, "cyclic word, e.g. URDL or ↑→↓←")->required();
    word->add_flag("--json", word_json, "print JSON instead of text");

    std::string verify_text;
    std::size_t sweep_d = 0;
    bool include_one = false;
    CommonFlags vflags;
    CLI::App* ver = app.add_subcommand("verify", "run the full pipeline on a word or a sweep");
    ver->add_option("WORD", verify_text, "cyclic word");
    CLI::Option* o_sweep = ver->add_option("--sweep", sweep_d, "verify every allowed class with this d");
    ver->add_flag("--include-index-one", include_one, "keep index-1 words below d = 4 (reported as outside theory)");
    vflags.attach(ver);

    std::string render_text, csv_path;
    std::size_t grid = 0;
    double extent = 2.0;
    CommonFlags rflags;
    CLI::App* ren = app.add_subcommand("render", "SVG phase portrait and fate grid");
    ren->add_option("WORD", render_text, "cyclic word")->required();
    CLI::Option* o_grid = ren->add_option("--grid", grid, "also emit an n x n fate CSV")->check(CLI::Range(1, 4096));
    ren->add_option("--csv", csv_path, "CSV output file (default: stdout)");
    CLI::Option* o_extent =
        ren->add_option("--extent", extent, "view half width in units of the radius")->check(CLI::PositiveNumber);
    rflags.attach(ren);

    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (word->parsed()) return cmd_word(word_text, word_json, out);
        if (ver->parsed()) {
            Config cfg = vflags.resolve();
            if (o_sweep->count()) cfg.sweep_d = sweep_d;
            if (include_one) cfg.include_index_one = true;
            return cmd_verify(verify_text, cfg, out, err);
        }
        Config cfg = rflags.resolve();
        if (o_grid->count()) cfg.grid = grid;
        if (o_extent->count()) cfg.render_extent = extent;
        return cmd_render(render_text, cfg, csv_path, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const IndeterminateError& e) {
        err << "error: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kAssertFailure;
    }
}

}  // namespace qturn::cli
