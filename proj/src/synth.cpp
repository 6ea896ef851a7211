#include "pem/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "pem/ingest.hpp"

namespace pem {

namespace {

// Deterministic helpers on top of mt19937_64; avoids the
// implementation-defined distribution adaptors so files are reproducible
// across standard libraries, not just across runs.
double u01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = std::uint64_t(hi - lo) + 1;
    return lo + std::int64_t(rng() % span);
}

void validate(const SynthConfig& cfg) {
    auto bad = [](const std::string& msg) { throw DataError("InvalidConfig", msg); };
    if (cfg.n_patients == 0) bad("n_patients must be positive");
    if (cfg.window_days < 1) bad("window_days must be >= 1");
    if (cfg.group_size < 1) bad("group_size must be >= 1");
    if (!(cfg.null_rate_min > 0.0 && cfg.null_rate_max < 1.0 &&
          cfg.null_rate_min <= cfg.null_rate_max))
        bad("null rates must satisfy 0 < min <= max < 1");
    for (const auto& p : cfg.planted) {
        if (!(p.baseline_rate > 0.0 && p.baseline_rate < 1.0))
            bad("planted baseline rate must be in (0,1): " + p.event_key);
        if (p.effect_multiplier < 1.0)
            bad("planted effect multiplier must be >= 1: " + p.event_key);
        if (p.baseline_rate * p.effect_multiplier > 1.0)
            bad("baseline_rate * multiplier must be <= 1: " + p.event_key);
        parse_readcode(p.event_key); // must be a valid code
    }
}

std::string null_event_code(std::size_t i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "Q%04zu", i);
    return buf;
}

} // namespace

SynthConfig load_synth_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open synth config: " + path);

    SynthConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("InvalidConfig",
                            path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        try {
            if (key == "n_patients") cfg.n_patients = std::stoull(value);
            else if (key == "n_null_events") cfg.n_null_events = std::stoull(value);
            else if (key == "null_rate_min") cfg.null_rate_min = std::stod(value);
            else if (key == "null_rate_max") cfg.null_rate_max = std::stod(value);
            else if (key == "window_days") cfg.window_days = std::stoi(value);
            else if (key == "group_size") cfg.group_size = std::stoull(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "drug_code") cfg.drug_code = value;
            else if (key == "planted") {
                std::istringstream ss(value);
                std::string code, rate, mult;
                if (!std::getline(ss, code, ':') || !std::getline(ss, rate, ':') ||
                    !std::getline(ss, mult))
                    throw DataError("InvalidConfig", "planted needs CODE:rate:multiplier");
                cfg.planted.push_back({code, std::stod(rate), std::stod(mult)});
            } else {
                throw DataError("InvalidConfig", "unknown key '" + key + "'");
            }
        } catch (const std::logic_error&) {
            throw DataError("InvalidConfig",
                            path + ":" + std::to_string(lineno) + ": bad value for " + key);
        }
    }
    validate(cfg);
    return cfg;
}

void generate_cohort(const SynthConfig& cfg, const std::string& therapy_path,
                     const std::string& medical_path) {
    validate(cfg);

    struct Event {
        std::string code;
        double rate_before;
        double rate_after;
    };
    std::mt19937_64 rng(cfg.seed);

    std::set<std::string> planted_keys;
    for (const auto& p : cfg.planted) planted_keys.insert(parse_readcode(p.event_key).render());

    std::vector<Event> events;
    events.reserve(cfg.n_null_events + cfg.planted.size());
    const double log_lo = std::log(cfg.null_rate_min);
    const double log_hi = std::log(cfg.null_rate_max);
    for (std::size_t i = 0; i < cfg.n_null_events; ++i) {
        std::string code = null_event_code(i);
        if (planted_keys.count(parse_readcode(code).render()))
            throw DataError("InvalidConfig", "planted key collides with null event " + code);
        double rate = std::exp(log_lo + (log_hi - log_lo) * u01(rng));
        events.push_back({std::move(code), rate, rate});
    }
    for (const auto& p : cfg.planted)
        events.push_back({p.event_key, p.baseline_rate,
                          std::min(1.0, p.baseline_rate * p.effect_multiplier)});

    std::ofstream therapy(therapy_path, std::ios::binary | std::ios::trunc);
    if (!therapy) throw IoError("cannot open therapy output: " + therapy_path);
    std::ofstream medical(medical_path, std::ios::binary | std::ios::trunc);
    if (!medical) throw IoError("cannot open medical output: " + medical_path);

    therapy << "patient_id,drug_code,date\n";
    medical << "patient_id,event_code,date\n";

    // Anchors sit inside a 2-year span with a window of slack on both ends.
    const Day base = parse_date("2000-01-01");
    const Day anchor_lo = base + cfg.window_days;
    const Day anchor_hi = base + 730 - cfg.window_days;

    char pid[16];
    for (std::size_t i = 0; i < cfg.n_patients; ++i) {
        std::snprintf(pid, sizeof pid, "P%07zu", i + 1);
        const Day anchor = uniform_int(rng, anchor_lo, anchor_hi);
        therapy << pid << ',' << cfg.drug_code << ',' << format_date(anchor) << '\n';
        for (const auto& ev : events) {
            if (u01(rng) < ev.rate_before) {
                Day d = uniform_int(rng, anchor - cfg.window_days, anchor - 1);
                medical << pid << ',' << ev.code << ',' << format_date(d) << '\n';
            }
            if (u01(rng) < ev.rate_after) {
                Day d = uniform_int(rng, anchor + 1, anchor + cfg.window_days);
                medical << pid << ',' << ev.code << ',' << format_date(d) << '\n';
            }
        }
    }
    if (!therapy || !medical) throw IoError("write failed while generating cohort");
}

EvalResult evaluate(const SignalReport& report, const SynthConfig& cfg, std::size_t k) {
    EvalResult res;
    res.k = k;
    if (cfg.planted.empty()) return res;

    std::set<std::string> planted_keys;
    for (const auto& p : cfg.planted)
        planted_keys.insert(event_key(parse_readcode(p.event_key), report.mode));

    std::size_t found_in_k = 0;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (planted_keys.count(report.rows[i].event_key)) {
            res.planted_ranks.emplace(report.rows[i].event_key, i + 1);
            if (i < k) ++found_in_k;
        }
    }
    res.recall_at_k = double(found_in_k) / double(planted_keys.size());
    return res;
}

EvalResult evaluate_report_file(const std::string& report_path, const SynthConfig& cfg,
                                std::size_t k) {
    std::ifstream in(report_path);
    if (!in) throw IoError("cannot open report: " + report_path);

    SignalReport report;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            if (line.find("mode=level13") != std::string::npos) report.mode = UniverseMode::Level13;
            continue;
        }
        if (!header_seen) { // column header
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        auto tab1 = line.find('\t');
        auto tab2 = line.find('\t', tab1 + 1);
        if (tab1 == std::string::npos || tab2 == std::string::npos)
            throw DataError("MalformedReport", report_path + ": expected TSV row");
        EventStats s;
        s.event_key = line.substr(tab1 + 1, tab2 - tab1 - 1);
        report.rows.push_back(std::move(s));
    }
    return evaluate(report, cfg, k);
}

} // namespace pem
