#include "qturn/pipeline.hpp"

#include <algorithm>
#include <chrono>

namespace qturn {

namespace {

Letter from_alpha(Limit a) { return a == Limit::Zero ? Letter::Down : Letter::Up; }
Letter from_omega(Limit o) { return o == Limit::Zero ? Letter::Up : Letter::Down; }

class Stopwatch {
public:
    double lap() {
        auto now = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

std::string to_string(PipelineError::Kind k) {
    switch (k) {
        case PipelineError::Kind::BothFlags: return "both transition flags";
        case PipelineError::Kind::NeitherFlag: return "no transition flag";
        case PipelineError::Kind::InconsistentConstraints: return "inconsistent vertical constraints";
        case PipelineError::Kind::UndecidedFate: return "undecided vertex fate";
    }
    return "?";
}

std::size_t TransitionReading::ambiguous_count() const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < size(); ++k)
        if (!unambiguous(k)) ++n;
    return n;
}

TransitionReading read_transitions(const DenseCurve& dc, const Decomposition& dec) {
    const std::size_t l = dec.arcs(), m = dc.samples();
    if (l == 0) throw std::invalid_argument("read_transitions needs a nonempty decomposition");
    auto unrolled = [&](std::size_t k) { return dec.vertices[k % l] + m * (k / l); };
    TransitionReading tr;
    for (std::size_t k = 0; k < l; ++k) {
        std::size_t p0 = unrolled(k + l - 1), p1 = unrolled(k + l), c1 = unrolled(k + l + 1);
        tr.forward.push_back(image_meets(dc, p0, p1, p1, c1));
        tr.backward.push_back(image_meets(dc, p1, c1, p0, p1));
    }
    return tr;
}

TransitionReading read_transitions(const ModelHomeo& h, const ClosedCurve& c, const Decomposition& dec,
                                   const FreenessParams& params) {
    params.validate();
    DenseCurve dc = densify(c, h, c.diameter() * params.delta_fraction, c.mean_radius() * params.tau_relative);
    return read_transitions(dc, dec);
}

std::vector<Letter> transition_letters(const TransitionReading& tr, const Decomposition& dec, const ClosedCurve& c) {
    std::vector<Letter> out;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        if (tr.unambiguous(k)) {
            out.push_back(tr.forward[k] ? Letter::Right : Letter::Left);
            continue;
        }
        auto kind = tr.forward[k] ? PipelineError::Kind::BothFlags : PipelineError::Kind::NeitherFlag;
        std::size_t s = dec.vertices[k];
        throw PipelineError(kind, k, s, c.at(s),
                            to_string(kind) + " at vertex " + std::to_string(k) + " (sample " + std::to_string(s) + ")");
    }
    return out;
}

std::vector<VertexFate> vertex_fates(const ModelHomeo& h, const ClosedCurve& c, const Decomposition& dec,
                                     const FateParams& params) {
    std::vector<VertexFate> out;
    const std::size_t m = c.size();
    for (std::size_t s : dec.vertices) {
        VertexFate vf{orbit_fate(h, c.at(s), params), s};
        for (std::size_t alt : {(s + m - 1) % m, (s + 1) % m}) {
            if (vf.fate.decided()) break;
            OrbitFate f = orbit_fate(h, c.at(alt), params);
            if (f.decided()) vf = {f, alt};
        }
        out.push_back(vf);
    }
    return out;
}

std::vector<Letter> read_vertical_letters(const std::vector<Letter>& horiz, const std::vector<OrbitFate>& fates) {
    const std::size_t l = horiz.size();
    if (fates.size() != l) throw std::invalid_argument("read_vertical_letters: one fate per vertex expected");
    auto fail = [](PipelineError::Kind kind, std::size_t k, const std::string& msg) {
        throw PipelineError(kind, k, 0, {}, to_string(kind) + " at vertex " + std::to_string(k) + ": " + msg);
    };
    std::vector<Letter> out;
    for (std::size_t k = 0; k < l; ++k) {
        std::size_t k1 = (k + 1) % l;
        const OrbitFate& a = fates[k];
        const OrbitFate& b = fates[k1];
        // from vertex k (letter before v_k) and vertex k+1 (letter after v_k)
        std::optional<Limit> left = horiz[k] == Letter::Right ? a.omega : a.alpha;
        std::optional<Limit> right = horiz[k1] == Letter::Right ? b.alpha : b.omega;
        if (!left) fail(PipelineError::Kind::UndecidedFate, k, "needed limit is undecided");
        if (!right) fail(PipelineError::Kind::UndecidedFate, k1, "needed limit is undecided");
        Letter from_left = horiz[k] == Letter::Right ? from_omega(*left) : from_alpha(*left);
        Letter from_right = horiz[k1] == Letter::Right ? from_alpha(*right) : from_omega(*right);
        if (from_left != from_right)
            fail(PipelineError::Kind::InconsistentConstraints, k,
                 std::string("vertex ") + std::to_string(k) + " gives " + to_ascii(from_left) + ", vertex " +
                     std::to_string(k1) + " gives " + to_ascii(from_right));
        out.push_back(from_left);
    }
    return out;
}

Recovery recover_word(const ModelHomeo& h, const ClosedCurve& c, const FreenessParams& freeness,
                      const FateParams& fate) {
    if (degree(c) != 1) throw std::invalid_argument("recover_word needs a curve of degree 1");
    freeness.validate();
    DenseCurve dc = densify(c, h, c.diameter() * freeness.delta_fraction, c.mean_radius() * freeness.tau_relative);
    HLengthResult hl = h_length(dc, c, h, freeness);
    TransitionReading tr = read_transitions(dc, hl.witness);
    std::vector<Letter> horiz = transition_letters(tr, hl.witness, c);
    std::vector<VertexFate> vf = vertex_fates(h, c, hl.witness, fate);
    std::vector<OrbitFate> fates;
    for (const auto& f : vf) fates.push_back(f.fate);
    std::vector<Letter> vert;
    try {
        vert = read_vertical_letters(horiz, fates);
    } catch (const PipelineError& e) {
        std::size_t s = vf[e.vertex()].sample;
        throw PipelineError(e.kind(), e.vertex(), s, c.at(s), std::string(e.what()) + " (sample " + std::to_string(s) + ")");
    }
    std::vector<Letter> letters;
    for (std::size_t k = 0; k < horiz.size(); ++k) {
        letters.push_back(horiz[k]);
        letters.push_back(vert[k]);
    }
    return {CyclicWord(std::move(letters)), std::move(hl), std::move(tr), std::move(vf)};
}

bool IndexReport::all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string IndexReport::status() const {
    if (outside_theory) return "outside theory";
    return all_checks_pass() ? "pass" : "fail";
}

IndexReport verify(const CyclicWord& word, const PipelineConfig& cfg) {
    if (!is_allowed(word)) throw std::invalid_argument("word " + word.ascii() + " is not allowed");
    if (word.d() < 2) throw std::invalid_argument("word " + word.ascii() + " has d = 1 and is not realizable");
    cfg.fate.validate();
    cfg.winding.validate();
    cfg.freeness.validate();
    cfg.candidates.validate();

    IndexReport rep;
    rep.config = cfg;
    Stopwatch clock;
    const ModelHomeo h(word);
    rep.word_in = h.word().ascii();
    rep.d = h.d();
    rep.symbolic_index = h.index();
    rep.sector_types = sector_types(h.word());
    rep.petals = detect_petals(h.word());
    rep.conservative = is_conservative_word(h.word());
    rep.module_lower_bound = module_lower_bound(rep.symbolic_index);
    rep.outside_theory = h.outside_theory();
    rep.warnings = h.warnings();
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    rep.timings["build"] = clock.lap();

    try {
        WindingResult wr = pl_index(h, cfg.winding);
        rep.numeric_index = wr.index;
        rep.residual = wr.residual;
        add("numeric index equals symbolic index", wr.index == rep.symbolic_index,
            "numeric " + std::to_string(wr.index) + ", symbolic " + std::to_string(rep.symbolic_index));
    } catch (const NumericError& e) {
        rep.numeric_failure = true;
        add("numeric index equals symbolic index", false, e.what());
    }
    rep.timings["winding"] = clock.lap();

    std::vector<ClosedCurve> candidates = candidate_family(cfg.candidates);
    std::optional<ModuleEstimate> est;
    try {
        est = estimate_module(h, candidates, rep.symbolic_index, cfg.freeness, cfg.jobs);
        rep.h_lengths = est->lengths;
        rep.module_estimate = est->upper;
        rep.best_candidate = est->best;
        rep.certified = est->certified;
        add("module estimate equals d", est->upper == rep.d,
            "estimate " + std::to_string(est->upper) + ", d " + std::to_string(rep.d));
        bool bound_ok = std::all_of(est->lengths.begin(), est->lengths.end(),
                                    [&](std::size_t v) { return static_cast<long>(v) >= rep.module_lower_bound; });
        add("h-length respects the index lower bound", bound_ok,
            "lower bound " + std::to_string(rep.module_lower_bound));
    } catch (const std::exception& e) {
        rep.numeric_failure = rep.numeric_failure || dynamic_cast<const IndeterminateError*>(&e) != nullptr;
        add("module estimate equals d", false, e.what());
    }
    rep.timings["module"] = clock.lap();

    if (est) {
        const ClosedCurve& best = candidates[est->best];
        try {
            Recovery rec = recover_word(h, best, cfg.freeness, cfg.fate);
            rep.word_recovered = rec.word.ascii();
            rep.vertices = rec.hlength.witness.vertices;
            rep.forward = rec.transitions.forward;
            rep.backward = rec.transitions.backward;
            rep.vertex_fates = rec.fates;
            add("recovered word equals input word", rec.word == h.word(),
                "recovered " + rec.word.ascii() + ", input " + rep.word_in);
            long rec_index = symbolic_index(rec.word);
            bool three_way = rep.numeric_index && rec_index == *rep.numeric_index && rec_index == rep.symbolic_index;
            add("three-way index identity", three_way, "recovered-word index " + std::to_string(rec_index));
            add("franks dichotomy at every vertex", rec.transitions.ambiguous_count() == 0,
                std::to_string(rec.transitions.ambiguous_count()) + " ambiguous vertices");
            const auto& v = rec.hlength.witness.vertices;
            std::size_t unfree = 0;
            for (std::size_t k = 0; k < v.size(); ++k) {
                std::size_t a = v[k], b = k + 1 < v.size() ? v[k + 1] : v[0] + best.size();
                std::vector<Vec2> arc;
                for (std::size_t s = a; s <= b; ++s) arc.push_back(best.at(s));
                if (is_free(arc, h, cfg.freeness, best.diameter(), best.mean_radius()) != Freeness::Free) ++unfree;
            }
            add("witness arcs are free", unfree == 0, std::to_string(unfree) + " arcs failed re-verification");
        } catch (const PipelineError& e) {
            rep.recovery_error = e.what();
            add("recovered word equals input word", false, e.what());
        } catch (const std::exception& e) {
            rep.recovery_error = e.what();
            rep.numeric_failure = rep.numeric_failure || dynamic_cast<const IndeterminateError*>(&e) != nullptr;
            add("recovered word equals input word", false, e.what());
        }
    }
    rep.timings["recovery"] = clock.lap();

    std::size_t missing = 0, searched = 0;
    for (std::size_t k = 0; k < h.d(); ++k) {
        if (h.sector(k).kind() != SectorType::Indifferent) continue;
        ++searched;
        ReverseOrbitEntry e{k, find_reverse_orbit(h, k, cfg.fate, cfg.reverse_probes)};
        if (!e.search.found) ++missing;
        rep.reverse_orbits.push_back(e);
    }
    if (searched > 0)
        add("reverse orbit in every indifferent sector", missing == 0,
            std::to_string(searched - missing) + " of " + std::to_string(searched) + " sectors");
    rep.timings["reverse_orbits"] = clock.lap();

    bool all_h = std::all_of(rep.sector_types.begin(), rep.sector_types.end(),
                             [](SectorType t) { return t == SectorType::Hyperbolic; });
    bool consistent = rep.conservative == all_h && rep.conservative == !has_forbidden_pair(h.word());
    add("conservative characterizations agree", consistent, rep.conservative ? "conservative" : "not conservative");
    return rep;
}

}  // namespace qturn
