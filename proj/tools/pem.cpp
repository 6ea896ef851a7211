#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pem/pipeline.hpp"
#include "pem/synth.hpp"

namespace {

using namespace pem;

int run_detect(const DetectConfig& cfg, const std::string& out_path, bool pretty) {
    DetectSummary summary;
    SignalReport report = run_detect_pipeline(cfg, &summary);
    write_report(report, out_path, pretty ? ReportFormat::Pretty : ReportFormat::Tsv);
    std::cerr << "detect: patients=" << summary.patients << " events=" << summary.events_kept
              << " (skipped " << summary.events_skipped << ") universe=" << summary.universe_size
              << " groups=" << summary.groups << " signals=" << summary.signals << "\n";
    return 0;
}

int run_simulate(const std::string& config_path, std::uint64_t* seed_override,
                 const std::string& therapy_out, const std::string& medical_out) {
    SynthConfig cfg = load_synth_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    generate_cohort(cfg, therapy_out, medical_out);
    std::cerr << "simulate: patients=" << cfg.n_patients
              << " null_events=" << cfg.n_null_events << " planted=" << cfg.planted.size()
              << " seed=" << cfg.seed << "\n";
    return 0;
}

int run_evaluate(const std::string& report_path, const std::string& config_path, std::size_t k) {
    SynthConfig cfg = load_synth_config(config_path);
    EvalResult res = evaluate_report_file(report_path, cfg, k);
    std::cout << "recall@" << k << "\t" << res.recall_at_k << "\n";
    for (const auto& p : cfg.planted) {
        std::string key = parse_readcode(p.event_key).render();
        auto it = res.planted_ranks.find(key);
        // level13 reports key by the rolled-up code
        if (it == res.planted_ranks.end())
            it = res.planted_ranks.find(rollup(parse_readcode(p.event_key), 3).render());
        std::cout << key << "\t"
                  << (it == res.planted_ranks.end() ? std::string("absent")
                                                    : std::to_string(it->second))
                  << "\n";
    }
    return 0;
}

int run_rollup(int level) {
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        std::cout << rollup(parse_readcode(line), level).render() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prescription-event-monitoring signal detection"};
    app.require_subcommand(1);

    DetectConfig dcfg;
    std::string detect_out = "report.tsv";
    std::string dict_path, prefix_filter, mode = "level15", variant = "pooled_unpaired",
                ranking = "p", delimiter = ",";
    bool no_direction = false, pretty = false;

    auto* detect = app.add_subcommand("detect", "Run the full detection pipeline");
    detect->add_option("--therapy", dcfg.therapy_path, "Therapy (prescriptions) file")->required();
    detect->add_option("--medical", dcfg.medical_path, "Medical (events) file")->required();
    detect->add_option("--dict", dict_path, "Readcode term dictionary (TSV)");
    detect->add_option("--drug-prefix", dcfg.drug_prefix, "Drug code prefix to select the cohort")
        ->required();
    detect->add_option("--window-days", dcfg.window.window_days, "Observation window length")
        ->default_val(60)
        ->check(CLI::PositiveNumber);
    detect->add_option("--group-size", dcfg.window.group_size, "Patients per group")
        ->default_val(100)
        ->check(CLI::PositiveNumber);
    detect->add_option("--mode", mode, "Universe mode")
        ->default_val("level15")
        ->check(CLI::IsMember({"level15", "level13"}));
    detect->add_option("--variant", variant, "t-test variant")
        ->default_val("pooled_unpaired")
        ->check(CLI::IsMember({"pooled_unpaired", "paired"}));
    detect->add_option("--alpha", dcfg.alpha, "p-value threshold")
        ->default_val(0.05)
        ->check(CLI::Range(1e-12, 1.0));
    detect->add_option("--ranking", ranking, "Report ordering")
        ->default_val("p")
        ->check(CLI::IsMember({"p", "r1"}));
    detect->add_option("--top-k", dcfg.top_k, "Report row limit")
        ->default_val(20)
        ->check(CLI::PositiveNumber);
    detect->add_option("--prefix-filter", prefix_filter,
                       "Keep only event codes with this prefix (e.g. B for neoplasms)");
    detect->add_option("--delimiter", delimiter, "Input field delimiter")->default_val(",");
    detect->add_flag("--no-direction-filter", no_direction,
                     "Also report events that decreased after exposure");
    detect->add_option("--out", detect_out, "Report output path")->default_val("report.tsv");
    detect->add_flag("--pretty", pretty, "Space-aligned output instead of TSV");

    std::string sim_config, sim_therapy = "therapy.csv", sim_medical = "medical.csv";
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic cohort");
    simulate->add_option("--config", sim_config, "Synth config file (key=value)")->required();
    simulate->add_option("--seed", sim_seed, "Override the config seed")
        ->each([&](const std::string&) { sim_seed_set = true; });
    simulate->add_option("--out-therapy", sim_therapy, "Therapy output path")
        ->default_val("therapy.csv");
    simulate->add_option("--out-medical", sim_medical, "Medical output path")
        ->default_val("medical.csv");

    std::string eval_report, eval_config;
    std::size_t eval_k = 20;
    auto* evaluate = app.add_subcommand("evaluate", "Score a report against planted events");
    evaluate->add_option("--report", eval_report, "Report TSV from detect")->required();
    evaluate->add_option("--config", eval_config, "Synth config the cohort was generated with")
        ->required();
    evaluate->add_option("--k", eval_k, "Rank cutoff")->default_val(20)->check(CLI::PositiveNumber);

    int rollup_level = 3;
    auto* rollup_cmd = app.add_subcommand("rollup", "Roll up readcodes from stdin to stdout");
    rollup_cmd->add_option("--level", rollup_level, "Target level")
        ->default_val(3)
        ->check(CLI::Range(1, 5));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*detect) {
            if (!dict_path.empty()) dcfg.dictionary_path = dict_path;
            if (!prefix_filter.empty()) dcfg.prefix_filter = prefix_filter;
            if (delimiter.size() != 1) throw pem::DataError("InvalidDelimiter", "one character");
            dcfg.delimiter = delimiter[0];
            dcfg.mode = mode == "level13" ? UniverseMode::Level13 : UniverseMode::Level15;
            dcfg.variant =
                variant == "paired" ? TestVariant::Paired : TestVariant::PooledUnpaired;
            dcfg.ranking = ranking == "r1" ? Ranking::ByR1Descending : Ranking::ByPAscending;
            dcfg.direction_filter = !no_direction;
            return run_detect(dcfg, detect_out, pretty);
        }
        if (*simulate)
            return run_simulate(sim_config, sim_seed_set ? &sim_seed : nullptr, sim_therapy,
                                sim_medical);
        if (*evaluate) return run_evaluate(eval_report, eval_config, eval_k);
        if (*rollup_cmd) return run_rollup(rollup_level);
    } catch (const pem::PemError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 4;
    }
    return 1;
}
