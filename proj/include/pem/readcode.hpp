#pragma once

#include <map>
#include <string>
#include <string_view>

#include "pem/errors.hpp"

namespace pem {

// Hierarchical 5-character clinical code plus 2-character term code.
// The code is right-padded with '.'; level = number of leading non-'.'
// characters (1..5). Canonical rendering is the 7-character code+term.
struct Readcode {
    std::string code; // exactly 5 chars, '.'-padded
    std::string term; // exactly 2 chars, default "00"
    int level = 0;

    std::string render() const { return code + term; }

    bool operator==(const Readcode&) const = default;
    auto operator<=>(const Readcode&) const = default;
};

// Parse a raw code string (up to 7 chars after trimming).
//   "N245111" -> code N2451, term 11, level 5
//   "C34.00"  -> code C34.., term 00, level 3  (6-char form: 4+2 split)
//   "N24"     -> code N24.., term 00, level 3
// Throws DataError("EmptyCode") / DataError("MalformedCode").
Readcode parse_readcode(std::string_view raw);

// Truncate a code to target_level, padding with '.' and resetting the term
// to "00". Codes already at or below target_level are returned unchanged.
Readcode rollup(const Readcode& c, int target_level);

// Readcode -> description dictionary keyed by canonical 7-char rendering.
class TermDictionary {
public:
    struct LoadSummary {
        std::size_t loaded = 0;
        std::size_t skipped = 0;
        std::size_t duplicates = 0;
    };

    TermDictionary() = default;

    // One entry per line: canonical-code TAB description. Malformed lines are
    // skipped and counted; duplicate keys keep the first occurrence.
    static TermDictionary load(const std::string& path, LoadSummary* summary = nullptr);

    static constexpr const char* kUnknownTerm = "(unknown term)";

    // Never fails: missing keys yield kUnknownTerm.
    const std::string& lookup(const std::string& canonical) const;

    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::string, std::string> entries_;
};

} // namespace pem
