#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pem/featmat.hpp"

using namespace pem;

namespace {

EventRecord ev(const std::string& pid, const std::string& code, Day d) {
    return {pid, parse_readcode(code), d};
}

// Independent oracle: scans every (patient, event) pair directly.
std::pair<FeatureMatrix, FeatureMatrix> oracle_matrices(const ExposureIndex& index,
                                                        const std::vector<EventRecord>& events,
                                                        const EventUniverse& u, UniverseMode mode,
                                                        const WindowConfig& cfg) {
    std::vector<std::string> pids;
    for (const auto& [pid, _] : index) pids.push_back(pid);
    std::sort(pids.begin(), pids.end());

    FeatureMatrix a{MatrixRole::Before, pids, u.size(),
                    std::vector<std::uint8_t>(pids.size() * u.size(), 0)};
    FeatureMatrix b{MatrixRole::After, pids, u.size(),
                    std::vector<std::uint8_t>(pids.size() * u.size(), 0)};
    for (std::size_t r = 0; r < pids.size(); ++r) {
        Day anchor = index.at(pids[r]);
        for (const auto& e : events) {
            if (e.patient_id != pids[r]) continue;
            std::size_t c = u.index_of(event_key(e.event_code, mode));
            if (c == EventUniverse::npos) continue;
            if (e.date >= anchor - cfg.window_days && e.date <= anchor - 1)
                a.cells[r * u.size() + c] = 1;
            if (e.date >= anchor + 1 && e.date <= anchor + cfg.window_days)
                b.cells[r * u.size() + c] = 1;
        }
    }
    return {a, b};
}

} // namespace

TEST_CASE("build_universe modes") {
    std::vector<EventRecord> events = {ev("P1", "N245.16", 0), ev("P1", "N245111", 1),
                                       ev("P2", "C34.00", 2)};
    auto u13 = build_universe(events, UniverseMode::Level13);
    CHECK(u13.keys() == std::vector<std::string>{"C34..00", "N24..00"});

    auto u15 = build_universe(events, UniverseMode::Level15);
    CHECK(u15.size() == 3);
    CHECK(std::is_sorted(u15.keys().begin(), u15.keys().end()));

    CHECK(build_universe({}, UniverseMode::Level15).size() == 0);
}

TEST_CASE("window membership and same-day exclusion") {
    ExposureIndex index{{"P1", 100}};
    WindowConfig cfg{60, 100};
    std::vector<EventRecord> events = {
        ev("P1", "AAA01", 80),  // before
        ev("P1", "BBB01", 100), // anchor day: excluded from both
        ev("P1", "CCC01", 40),  // d-60 boundary, included before
        ev("P1", "DDD01", 160), // d+60 boundary, included after
        ev("P1", "EEE01", 39),  // outside
        ev("P1", "FFF01", 161), // outside
        ev("P2", "AAA01", 90),  // unexposed patient
    };
    auto u = build_universe(events, UniverseMode::Level15);
    MatrixBuildStats stats;
    auto [a, b] = build_feature_matrices(index, events, u, UniverseMode::Level15, cfg, &stats);

    REQUIRE(a.rows() == 1);
    auto cell = [&](const FeatureMatrix& m, const char* code) {
        return int(m.at(0, u.index_of(parse_readcode(code).render())));
    };
    CHECK(cell(a, "AAA01") == 1);
    CHECK(cell(b, "AAA01") == 0);
    CHECK(cell(a, "BBB01") == 0);
    CHECK(cell(b, "BBB01") == 0);
    CHECK(cell(a, "CCC01") == 1);
    CHECK(cell(b, "DDD01") == 1);
    CHECK(cell(a, "EEE01") == 0);
    CHECK(cell(b, "FFF01") == 0);
    CHECK(stats.unexposed_events == 1);
}

TEST_CASE("duplicate events stay binary and record order does not matter") {
    ExposureIndex index{{"P1", 100}, {"P2", 200}};
    WindowConfig cfg{60, 100};
    std::vector<EventRecord> events = {ev("P1", "AAA01", 80), ev("P1", "AAA01", 85),
                                       ev("P2", "AAA01", 210), ev("P1", "AAA01", 80)};
    auto u = build_universe(events, UniverseMode::Level15);
    auto [a, b] = build_feature_matrices(index, events, u, UniverseMode::Level15, cfg);
    CHECK(a.at(0, 0) == 1);
    CHECK(b.at(1, 0) == 1);

    std::mt19937_64 rng(3);
    std::shuffle(events.begin(), events.end(), rng);
    auto [a2, b2] = build_feature_matrices(index, events, u, UniverseMode::Level15, cfg);
    CHECK(a2.cells == a.cells);
    CHECK(b2.cells == b.cells);
}

TEST_CASE("brute-force oracle equivalence on random small cohorts") {
    std::mt19937_64 rng(11);
    const char* codes[] = {"AAA01", "AAB01", "N245.16", "N245111", "C34.00", "B33..11"};
    for (int trial = 0; trial < 20; ++trial) {
        ExposureIndex index;
        std::size_t n = 1 + rng() % 50;
        for (std::size_t i = 0; i < n; ++i)
            index.emplace("P" + std::to_string(100 + i), Day(200 + rng() % 400));

        std::vector<EventRecord> events;
        std::size_t n_events = rng() % 400;
        for (std::size_t i = 0; i < n_events; ++i)
            events.push_back(ev("P" + std::to_string(100 + rng() % (n + 3)),
                                codes[rng() % 6], Day(rng() % 900)));

        WindowConfig cfg{int(10 + rng() % 90), 100};
        UniverseMode mode = (trial % 2) ? UniverseMode::Level13 : UniverseMode::Level15;
        auto u = build_universe(events, mode);
        if (u.size() == 0) continue;

        auto [a, b] = build_feature_matrices(index, events, u, mode, cfg);
        auto [ea, eb] = oracle_matrices(index, events, u, mode, cfg);
        CHECK(a.cells == ea.cells);
        CHECK(b.cells == eb.cells);
        CHECK(a.patient_ids == ea.patient_ids);

        // no event record lands in both windows
        for (const auto& e : events) {
            auto it = index.find(e.patient_id);
            if (it == index.end()) continue;
            Day d = it->second;
            bool in_before = e.date >= d - cfg.window_days && e.date < d;
            bool in_after = e.date > d && e.date <= d + cfg.window_days;
            CHECK(!(in_before && in_after));
        }
    }
}

TEST_CASE("group_matrix shapes and remainder merge") {
    auto make_matrix = [](std::size_t rows, std::size_t cols) {
        FeatureMatrix m;
        m.cols = cols;
        for (std::size_t r = 0; r < rows; ++r) m.patient_ids.push_back("P" + std::to_string(r));
        m.cells.assign(rows * cols, 0);
        return m;
    };

    auto m = make_matrix(250, 3);
    for (std::size_t r = 0; r < 250; ++r) m.cells[r * 3 + (r % 3)] = 1;
    auto g = group_matrix(m, 100);
    REQUIRE(g.groups() == 2);
    CHECK(g.group_sizes == std::vector<std::size_t>{100, 150});

    // conservation per column
    auto counts = column_counts(m);
    for (std::size_t c = 0; c < 3; ++c) {
        std::uint32_t total = 0;
        for (std::size_t gr = 0; gr < g.groups(); ++gr) total += g.at(gr, c);
        CHECK(total == counts[c]);
        CHECK(g.at(0, c) <= g.group_sizes[0]);
    }

    auto one = make_matrix(1, 3);
    one.cells = {1, 0, 1};
    auto g1 = group_matrix(one, 100);
    REQUIRE(g1.groups() == 1);
    CHECK(g1.cells == std::vector<std::uint32_t>{1, 0, 1});

    auto big = make_matrix(10875, 1);
    auto gb = group_matrix(big, 100);
    CHECK(gb.groups() == 108);
    CHECK(gb.group_sizes.back() == 175);

    CHECK_THROWS_AS(group_matrix(make_matrix(0, 3), 100), DataError);
}

TEST_CASE("grouping conservation for arbitrary group sizes") {
    std::mt19937_64 rng(5);
    FeatureMatrix m;
    m.cols = 17;
    for (std::size_t r = 0; r < 137; ++r) m.patient_ids.push_back("P" + std::to_string(r));
    m.cells.resize(137 * 17);
    for (auto& c : m.cells) c = rng() % 2;

    auto counts = column_counts(m);
    for (std::size_t gs : {1u, 2u, 10u, 50u, 137u, 500u}) {
        auto g = group_matrix(m, gs);
        std::size_t total_rows = 0;
        for (auto s : g.group_sizes) total_rows += s;
        CHECK(total_rows == m.rows());
        for (std::size_t c = 0; c < m.cols; ++c) {
            std::uint32_t sum = 0;
            for (std::size_t gr = 0; gr < g.groups(); ++gr) sum += g.at(gr, c);
            CHECK(sum == counts[c]);
        }
    }
}

TEST_CASE("matrix dump format") {
    EventUniverse u({"AAA0100", "BBB0100"});
    FeatureMatrix m{MatrixRole::Before, {"P1"}, 2, {1, 0}};
    std::ostringstream os;
    dump_matrix(m, u, os);
    CHECK(os.str() == "AAA0100\tBBB0100\n1\t0\n");
}
