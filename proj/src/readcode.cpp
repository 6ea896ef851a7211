#include "pem/readcode.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace pem {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool printable_ascii(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= 0x21 && c <= 0x7e; });
}

// Leading non-'.' run; any non-'.' after a '.' is malformed.
int code_level(std::string_view code) {
    int level = 0;
    bool in_pad = false;
    for (char c : code) {
        if (c == '.') {
            in_pad = true;
        } else {
            if (in_pad) return -1;
            ++level;
        }
    }
    return level;
}

} // namespace

Readcode parse_readcode(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.empty()) throw DataError("EmptyCode", "empty readcode");
    if (s.size() > 7)
        throw DataError("MalformedCode", "readcode longer than 7 characters: '" + std::string(s) + "'");
    if (!printable_ascii(s))
        throw DataError("MalformedCode", "non-printable character in readcode");

    Readcode rc;
    if (s.size() == 7) {
        rc.code = std::string(s.substr(0, 5));
        rc.term = std::string(s.substr(5, 2));
    } else if (s.size() == 6) {
        // loose 6-char form like "C34.00": 4-char code + 2-char term
        rc.code = std::string(s.substr(0, 4));
        rc.term = std::string(s.substr(4, 2));
    } else {
        rc.code = std::string(s);
        rc.term = "00";
    }
    rc.code.resize(5, '.');

    rc.level = code_level(rc.code);
    if (rc.level <= 0)
        throw DataError("MalformedCode", "bad readcode structure: '" + std::string(s) + "'");
    return rc;
}

Readcode rollup(const Readcode& c, int target_level) {
    if (target_level < 1 || target_level > 5)
        throw DataError("InvalidLevel", "rollup level must be in 1..5");
    if (c.level <= target_level) return c;
    Readcode out;
    out.code = c.code.substr(0, static_cast<std::size_t>(target_level));
    out.code.resize(5, '.');
    out.term = "00";
    out.level = target_level;
    return out;
}

TermDictionary TermDictionary::load(const std::string& path, LoadSummary* summary) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dictionary file: " + path);

    TermDictionary dict;
    LoadSummary sum;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            ++sum.skipped;
            continue;
        }
        std::string key = line.substr(0, tab);
        std::string desc = line.substr(tab + 1);
        auto [it, inserted] = dict.entries_.emplace(std::move(key), std::move(desc));
        if (inserted)
            ++sum.loaded;
        else
            ++sum.duplicates;
    }
    if (summary) *summary = sum;
    return dict;
}

const std::string& TermDictionary::lookup(const std::string& canonical) const {
    static const std::string unknown = kUnknownTerm;
    auto it = entries_.find(canonical);
    return it == entries_.end() ? unknown : it->second;
}

} // namespace pem
