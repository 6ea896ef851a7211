#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "pem/readcode.hpp"

using namespace pem;

TEST_CASE("parse_readcode canonical forms") {
    auto rc = parse_readcode("N245111");
    CHECK(rc.code == "N2451");
    CHECK(rc.term == "11");
    CHECK(rc.level == 5);

    rc = parse_readcode("C34.00"); // loose 6-char form
    CHECK(rc.code == "C34..");
    CHECK(rc.term == "00");
    CHECK(rc.level == 3);

    rc = parse_readcode("A....00");
    CHECK(rc.code == "A....");
    CHECK(rc.term == "00");
    CHECK(rc.level == 1);

    rc = parse_readcode("N24");
    CHECK(rc.code == "N24..");
    CHECK(rc.term == "00");
    CHECK(rc.level == 3);

    rc = parse_readcode("  N245.16 "); // whitespace trimmed
    CHECK(rc.code == "N245.");
    CHECK(rc.term == "16");
    CHECK(rc.level == 4);
}

TEST_CASE("parse_readcode rejects malformed input") {
    CHECK_THROWS_AS(parse_readcode(""), DataError);
    CHECK_THROWS_AS(parse_readcode("   "), DataError);
    CHECK_THROWS_AS(parse_readcode("N2451112"), DataError); // > 7 chars
    CHECK_THROWS_AS(parse_readcode("N.4..00"), DataError);  // interior dot
    CHECK_THROWS_AS(parse_readcode(".....00"), DataError);  // no code characters
    CHECK_THROWS_AS(parse_readcode("N2\x01.00"), DataError);
}

TEST_CASE("rollup truncates to the target level") {
    CHECK(rollup(parse_readcode("N245.16"), 3).render() == "N24..00");
    CHECK(rollup(parse_readcode("N24..00"), 3).render() == "N24..00");
    CHECK(rollup(parse_readcode("N245111"), 3).render() == "N24..00");
    CHECK(rollup(parse_readcode("N245111"), 1).render() == "N....00");
    CHECK_THROWS_AS(rollup(parse_readcode("N245111"), 0), DataError);
    CHECK_THROWS_AS(rollup(parse_readcode("N245111"), 6), DataError);
}

namespace {

Readcode random_code(std::mt19937_64& rng) {
    static const char alphabet[] = "ABCNZ12345abkz";
    int level = 1 + int(rng() % 5);
    std::string raw;
    for (int i = 0; i < level; ++i) raw += alphabet[rng() % (sizeof alphabet - 1)];
    raw.resize(5, '.');
    raw += '0' + char(rng() % 10);
    raw += '0' + char(rng() % 10);
    return parse_readcode(raw);
}

} // namespace

TEST_CASE("rollup properties over random codes") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 2000; ++i) {
        Readcode c = random_code(rng);
        int target = 1 + int(rng() % 5);
        Readcode rolled = rollup(c, target);

        // idempotence
        CHECK(rollup(rolled, target) == rolled);
        // level contract
        CHECK(rolled.level == std::min(c.level, target));
        // prefix-ancestor: non-dot chars of the rollup prefix the original
        CHECK(c.code.compare(0, size_t(rolled.level), rolled.code, 0, size_t(rolled.level)) == 0);
        // canonical 7-char render round-trips
        CHECK(parse_readcode(c.render()) == c);
    }
}

TEST_CASE("term dictionary load") {
    const char* path = "dict_test.tsv";
    {
        std::ofstream out(path);
        out << "N24..00\tOther soft tissue disorders\n";
        out << "badline-no-tab\n";
        out << "N24..00\tDuplicate description\n";
        out << "C34..00\tGout\n";
    }
    TermDictionary::LoadSummary sum;
    auto dict = TermDictionary::load(path, &sum);
    CHECK(dict.size() == 2);
    CHECK(sum.loaded == 2);
    CHECK(sum.skipped == 1);
    CHECK(sum.duplicates == 1);
    CHECK(dict.lookup("N24..00") == "Other soft tissue disorders"); // first wins
    CHECK(dict.lookup("C34..00") == "Gout");
    CHECK(dict.lookup("ZZZZZ99") == TermDictionary::kUnknownTerm);
    std::remove(path);

    CHECK_THROWS_AS(TermDictionary::load("no_such_file.tsv"), IoError);
}

TEST_CASE("empty dictionary file") {
    const char* path = "dict_empty.tsv";
    { std::ofstream out(path); }
    auto dict = TermDictionary::load(path);
    CHECK(dict.size() == 0);
    CHECK(dict.lookup("N24..00") == TermDictionary::kUnknownTerm);
    std::remove(path);
}
