#include "pem/pipeline.hpp"

namespace pem {

namespace {

std::vector<std::pair<std::string, std::string>> provenance_of(const DetectConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> prov;
    prov.emplace_back("therapy", cfg.therapy_path);
    prov.emplace_back("medical", cfg.medical_path);
    prov.emplace_back("drug_prefix", cfg.drug_prefix);
    prov.emplace_back("window_days", std::to_string(cfg.window.window_days));
    prov.emplace_back("group_size", std::to_string(cfg.window.group_size));
    prov.emplace_back("mode", cfg.mode == UniverseMode::Level15 ? "level15" : "level13");
    prov.emplace_back("variant",
                      cfg.variant == TestVariant::PooledUnpaired ? "pooled_unpaired" : "paired");
    char alpha[32];
    std::snprintf(alpha, sizeof alpha, "%g", cfg.alpha);
    prov.emplace_back("alpha", alpha);
    prov.emplace_back("ranking", cfg.ranking == Ranking::ByPAscending ? "p" : "r1");
    prov.emplace_back("top_k", std::to_string(cfg.top_k));
    prov.emplace_back("direction_filter", cfg.direction_filter ? "1" : "0");
    if (cfg.prefix_filter) prov.emplace_back("prefix_filter", *cfg.prefix_filter);
    return prov;
}

} // namespace

SignalReport run_detect_pipeline(const DetectConfig& cfg, DetectSummary* summary) {
    LoadSummary therapy_sum, medical_sum;
    auto prescriptions =
        load_therapy(cfg.therapy_path, cfg.drug_prefix, &therapy_sum, cfg.delimiter);
    auto events = load_medical(cfg.medical_path, &medical_sum, cfg.delimiter);

    TermDictionary dict;
    if (cfg.dictionary_path) dict = TermDictionary::load(*cfg.dictionary_path);

    auto index = build_exposure_index(prescriptions);
    if (index.empty())
        throw DataError("EmptyCohort", "no exposed patients for prefix '" + cfg.drug_prefix + "'");

    auto universe = build_universe(events, cfg.mode);
    auto [before, after] = build_feature_matrices(index, events, universe, cfg.mode, cfg.window);
    auto grouped_before = group_matrix(before, cfg.window.group_size);
    auto grouped_after = group_matrix(after, cfg.window.group_size);

    auto stats = per_event_tests(grouped_before, grouped_after, column_counts(before),
                                 column_counts(after), universe, index.size(), cfg.variant);
    for (auto& s : stats) s.description = dict.lookup(s.event_key);

    if (cfg.prefix_filter) stats = filter_prefix(stats, *cfg.prefix_filter);

    SignalReport report = cfg.ranking == Ranking::ByPAscending
                              ? rank_by_p(std::move(stats), cfg.alpha, cfg.top_k,
                                          cfg.direction_filter)
                              : rank_by_r1(std::move(stats), cfg.alpha, cfg.top_k,
                                           cfg.direction_filter);
    report.mode = cfg.mode;
    report.provenance = provenance_of(cfg);

    if (summary) {
        summary->prescriptions_kept = therapy_sum.kept;
        summary->prescriptions_skipped = therapy_sum.skipped;
        summary->events_kept = medical_sum.kept;
        summary->events_skipped = medical_sum.skipped;
        summary->patients = index.size();
        summary->universe_size = universe.size();
        summary->groups = grouped_before.groups();
        summary->signals = report.rows.size();
    }
    return report;
}

} // namespace pem
