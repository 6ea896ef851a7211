#pragma once

#include <optional>
#include <string>

#include "pem/signal.hpp"

namespace pem {

// Full detect composition: ingest -> exposure index -> universe -> matrices
// -> grouping -> tests -> ranking.
struct DetectConfig {
    std::string therapy_path;
    std::string medical_path;
    std::optional<std::string> dictionary_path;
    std::string drug_prefix;
    char delimiter = ',';
    WindowConfig window;
    UniverseMode mode = UniverseMode::Level15;
    TestVariant variant = TestVariant::PooledUnpaired;
    double alpha = 0.05;
    Ranking ranking = Ranking::ByPAscending;
    std::size_t top_k = 20;
    std::optional<std::string> prefix_filter;
    bool direction_filter = true;
};

struct DetectSummary {
    std::size_t prescriptions_kept = 0;
    std::size_t prescriptions_skipped = 0;
    std::size_t events_kept = 0;
    std::size_t events_skipped = 0;
    std::size_t patients = 0;
    std::size_t universe_size = 0;
    std::size_t groups = 0;
    std::size_t signals = 0;
};

SignalReport run_detect_pipeline(const DetectConfig& cfg, DetectSummary* summary = nullptr);

} // namespace pem
