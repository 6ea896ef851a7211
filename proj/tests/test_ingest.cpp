#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "pem/ingest.hpp"

using namespace pem;

namespace {

struct TempFile {
    std::string path;
    TempFile(std::string p, const std::string& content) : path(std::move(p)) {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("parse_date") {
    CHECK(parse_date("1970-01-01") == 0);
    CHECK(parse_date("1970-01-02") == 1);
    CHECK(parse_date("2000-03-01") == parse_date("2000-02-29") + 1);
    CHECK(format_date(parse_date("2001-03-04")) == "2001-03-04");
    CHECK_THROWS_AS(parse_date("2001-02-30"), DataError);
    CHECK_THROWS_AS(parse_date("01-02-2001"), DataError);
    CHECK_THROWS_AS(parse_date("1899-12-31"), DataError);
    CHECK_THROWS_AS(parse_date("2100-01-02"), DataError);
}

TEST_CASE("load_therapy filters by drug prefix") {
    TempFile f("therapy_test.csv",
               "patient_id,drug_code,date\n"
               "P1,PRAVA01,2001-01-01\n"
               "P2,SIMVA01,2001-01-02\n"
               "P3,PRAVA02,2001-01-03\n"
               "P4,PRAVA01,bad-date\n"
               ",PRAVA01,2001-01-05\n");
    LoadSummary sum;
    auto recs = load_therapy(f.path, "PRAVA", &sum);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].patient_id == "P1");
    CHECK(recs[1].patient_id == "P3");
    CHECK(sum.kept == 2);
    CHECK(sum.skipped == 2); // bad date + empty patient_id
    CHECK(sum.filtered == 1);
    CHECK(sum.total() == 5);
}

TEST_CASE("load_therapy header errors") {
    TempFile f("therapy_badhdr.csv", "patient,drug,when\nP1,PRAVA01,2001-01-01\n");
    CHECK_THROWS_AS(load_therapy(f.path, "PRAVA"), DataError);
    CHECK_THROWS_AS(load_therapy("no_such.csv", "PRAVA"), IoError);

    TempFile empty("therapy_empty.csv", "patient_id,drug_code,date\n");
    LoadSummary sum;
    CHECK(load_therapy(empty.path, "PRAVA", &sum).empty());
    CHECK(sum.total() == 0);
}

TEST_CASE("load_medical canonicalizes event codes") {
    TempFile f("medical_test.csv",
               "patient_id,event_code,date\n"
               "P1,N245.16,2001-03-04\n"
               "P1,C34.00,2001-03-05\n"
               "P2,toolongcode,2001-03-06\n"
               ",N24,2001-03-07\n");
    LoadSummary sum;
    auto recs = load_medical(f.path, &sum);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].event_code.render() == "N245.16");
    CHECK(recs[0].date == parse_date("2001-03-04"));
    CHECK(recs[1].event_code.code == "C34..");
    CHECK(recs[1].event_code.term == "00");
    CHECK(sum.kept == 2);
    CHECK(sum.skipped == 2);
}

TEST_CASE("load with alternate delimiter") {
    TempFile f("medical_tab.tsv",
               "patient_id\tevent_code\tdate\n"
               "P1\tN24\t2001-03-04\n");
    auto recs = load_medical(f.path, nullptr, '\t');
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].event_code.render() == "N24..00");
}

TEST_CASE("build_exposure_index takes the first prescription date") {
    std::vector<PrescriptionRecord> recs = {
        {"P1", "PRAVA01", 160},
        {"P1", "PRAVA01", 100},
        {"P2", "PRAVA01", 50},
    };
    auto index = build_exposure_index(recs);
    REQUIRE(index.size() == 2);
    CHECK(index.at("P1") == 100);
    CHECK(index.at("P2") == 50);

    CHECK(build_exposure_index({}).empty());
}

TEST_CASE("exposure index is permutation-invariant and matches brute force") {
    std::mt19937_64 rng(7);
    std::vector<PrescriptionRecord> recs;
    for (int i = 0; i < 300; ++i)
        recs.push_back({"P" + std::to_string(rng() % 40), "PRAVA01", Day(rng() % 1000)});

    auto index = build_exposure_index(recs);
    auto shuffled = recs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(build_exposure_index(shuffled) == index);

    for (const auto& [pid, day] : index) {
        Day min_day = std::numeric_limits<Day>::max();
        for (const auto& r : recs)
            if (r.patient_id == pid) min_day = std::min(min_day, r.date);
        CHECK(day == min_day);
    }
}
