#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qturn/curve.hpp"
#include "qturn/dynamics.hpp"
#include "qturn/model.hpp"
#include "qturn/word.hpp"

namespace qturn {

inline constexpr const char* kReportFormat = "qturn-report/1";
inline constexpr const char* kChartConventions =
    "sector k on angles [k, k+1] * 2pi/d from the positive x axis; band radius exp(-r); "
    "indifferent strip height r/log2 plus tabulated offset";

struct PipelineConfig {
    FateParams fate;
    WindingParams winding;
    FreenessParams freeness;
    CandidateSpec candidates;
    std::size_t reverse_probes = 10000;
    unsigned jobs = 1;
};

// Per vertex k: forward = h(arc k-1) meets arc k, backward = arc k-1 meets h(arc k).
struct TransitionReading {
    std::vector<bool> forward;
    std::vector<bool> backward;
    std::size_t size() const { return forward.size(); }
    bool unambiguous(std::size_t k) const { return forward[k] != backward[k]; }
    std::size_t ambiguous_count() const;
};

class PipelineError : public std::runtime_error {
public:
    enum class Kind { BothFlags, NeitherFlag, InconsistentConstraints, UndecidedFate };
    PipelineError(Kind kind, std::size_t vertex, std::size_t sample, Vec2 where, const std::string& what)
        : std::runtime_error(what), kind_(kind), vertex_(vertex), sample_(sample), where_(where) {}
    Kind kind() const { return kind_; }
    std::size_t vertex() const { return vertex_; }
    std::size_t sample() const { return sample_; }
    Vec2 where() const { return where_; }

private:
    Kind kind_;
    std::size_t vertex_;
    std::size_t sample_;
    Vec2 where_;
};

std::string to_string(PipelineError::Kind k);

TransitionReading read_transitions(const DenseCurve& dc, const Decomposition& dec);
TransitionReading read_transitions(const ModelHomeo& h, const ClosedCurve& c, const Decomposition& dec,
                                   const FreenessParams& params = {});

// Horizontal letter per vertex; throws PipelineError on BothFlags / NeitherFlag.
std::vector<Letter> transition_letters(const TransitionReading& tr, const Decomposition& dec, const ClosedCurve& c);

struct VertexFate {
    OrbitFate fate;
    std::size_t sample = 0;  // sample actually used (after nudging)
};

// Fate at each vertex; an undecided vertex is retried one sample before and after.
std::vector<VertexFate> vertex_fates(const ModelHomeo& h, const ClosedCurve& c, const Decomposition& dec,
                                     const FateParams& params = {});

// Vertical letter between vertex k and k+1 from the adjacent constraints.
std::vector<Letter> read_vertical_letters(const std::vector<Letter>& horizontals, const std::vector<OrbitFate>& fates);

struct Recovery {
    CyclicWord word;
    HLengthResult hlength;
    TransitionReading transitions;
    std::vector<VertexFate> fates;
};

Recovery recover_word(const ModelHomeo& h, const ClosedCurve& c, const FreenessParams& freeness = {},
                      const FateParams& fate = {});

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ReverseOrbitEntry {
    std::size_t sector = 0;
    ReverseOrbitSearch search;
};

struct IndexReport {
    std::string format = kReportFormat;
    std::string word_in;
    std::size_t d = 0;
    long symbolic_index = 0;
    std::optional<long> numeric_index;
    double residual = 0.0;
    std::optional<std::string> word_recovered;
    std::string recovery_error;
    std::vector<std::size_t> h_lengths;
    std::size_t module_estimate = 0;
    std::size_t best_candidate = 0;
    long module_lower_bound = 0;
    bool certified = false;
    std::vector<std::size_t> vertices;
    std::vector<bool> forward;
    std::vector<bool> backward;
    std::vector<VertexFate> vertex_fates;
    std::vector<Petal> petals;
    std::vector<SectorType> sector_types;
    bool conservative = false;
    bool outside_theory = false;
    bool numeric_failure = false;
    std::vector<std::string> warnings;
    std::vector<ReverseOrbitEntry> reverse_orbits;
    std::vector<CheckResult> checks;
    std::map<std::string, double> timings;
    PipelineConfig config;

    bool all_checks_pass() const;
    // "pass", "fail" or "outside theory"
    std::string status() const;
};

// Full pipeline on the model built from `word`. Rejects non-allowed words and d = 1.
IndexReport verify(const CyclicWord& word, const PipelineConfig& config = {});

}  // namespace qturn
