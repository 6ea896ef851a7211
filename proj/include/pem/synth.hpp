#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pem/featmat.hpp"
#include "pem/signal.hpp"

namespace pem {

struct PlantedEvent {
    std::string event_key;     // raw readcode, canonicalized on use
    double baseline_rate = 0;  // per-window occurrence probability, in (0,1)
    double effect_multiplier = 1.0; // after-window rate = baseline * multiplier
};

struct SynthConfig {
    std::size_t n_patients = 10000;
    std::size_t n_null_events = 200;
    double null_rate_min = 0.002; // null baseline rates drawn log-uniformly
    double null_rate_max = 0.05;
    std::vector<PlantedEvent> planted;
    int window_days = 60;
    std::size_t group_size = 100;
    std::uint64_t seed = 0;
    std::string drug_code = "PRAVA01";
};

// key=value config file with repeatable "planted=CODE:rate:multiplier" lines;
// '#' starts a comment.
SynthConfig load_synth_config(const std::string& path);

// Writes therapy/medical files in the ingest schema. One prescription per
// patient at a random anchor; every event occurs Bernoulli per window,
// uniform day within the window. Byte-identical output for a given seed.
void generate_cohort(const SynthConfig& cfg, const std::string& therapy_path,
                     const std::string& medical_path);

struct EvalResult {
    double recall_at_k = 0.0;
    std::size_t k = 0;
    // canonical planted key -> 1-based rank; missing keys were not found
    std::unordered_map<std::string, std::size_t> planted_ranks;
};

EvalResult evaluate(const SignalReport& report, const SynthConfig& cfg, std::size_t k);

// Same scoring against an already-written TSV report.
EvalResult evaluate_report_file(const std::string& report_path, const SynthConfig& cfg,
                                std::size_t k);

} // namespace pem
