#include "pem/signal.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace pem {

namespace {

std::vector<EventStats> apply_filters(std::vector<EventStats> stats, double alpha,
                                      bool direction_filter) {
    std::erase_if(stats, [&](const EventStats& s) {
        if (!(s.test.p < alpha)) return true;
        if (direction_filter && s.n_after <= s.n_before) return true;
        return false;
    });
    return stats;
}

void truncate(std::vector<EventStats>& rows, std::size_t top_k) {
    if (rows.size() > top_k) rows.resize(top_k);
}

} // namespace

SignalReport rank_by_p(std::vector<EventStats> stats, double alpha, std::size_t top_k,
                       bool direction_filter) {
    SignalReport r;
    r.ranking = Ranking::ByPAscending;
    r.alpha = alpha;
    r.rows = apply_filters(std::move(stats), alpha, direction_filter);
    std::sort(r.rows.begin(), r.rows.end(), [](const EventStats& a, const EventStats& b) {
        if (a.test.p != b.test.p) return a.test.p < b.test.p;
        return a.event_key < b.event_key;
    });
    truncate(r.rows, top_k);
    return r;
}

SignalReport rank_by_r1(std::vector<EventStats> stats, double alpha, std::size_t top_k,
                        bool direction_filter) {
    SignalReport r;
    r.ranking = Ranking::ByR1Descending;
    r.alpha = alpha;
    r.rows = apply_filters(std::move(stats), alpha, direction_filter);
    std::sort(r.rows.begin(), r.rows.end(), [](const EventStats& a, const EventStats& b) {
        if (a.r1 != b.r1) return a.r1 > b.r1;
        if (a.test.p != b.test.p) return a.test.p < b.test.p;
        return a.event_key < b.event_key;
    });
    truncate(r.rows, top_k);
    return r;
}

std::vector<EventStats> filter_prefix(const std::vector<EventStats>& stats,
                                      const std::string& prefix) {
    if (prefix.empty()) throw DataError("EmptyPrefix", "code prefix must be non-empty");
    std::vector<EventStats> out;
    for (const auto& s : stats)
        if (s.event_key.rfind(prefix, 0) == 0) out.push_back(s);
    return out;
}

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

void write_rows(const SignalReport& r, std::ostream& os, ReportFormat format) {
    for (const auto& [key, value] : r.provenance) os << "# " << key << "=" << value << '\n';

    const char* sep = format == ReportFormat::Tsv ? "\t" : "  ";
    os << "rank" << sep << "readcode" << sep << "description" << sep << "N_B" << sep << "N_A"
       << sep << "R1" << sep << "R2" << sep << "t" << sep << "df" << sep << "p" << sep
       << "degenerate" << '\n';
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& s = r.rows[i];
        os << (i + 1) << sep << s.event_key << sep
           << (s.description.empty() ? TermDictionary::kUnknownTerm : s.description.c_str())
           << sep << s.n_before << sep << s.n_after << sep << fmt("%.2f", s.r1) << sep
           << fmt("%.2f", s.r2) << sep << fmt("%.4g", s.test.t) << sep << fmt("%g", s.test.df)
           << sep << fmt("%.3e", s.test.p) << sep << (s.test.degenerate ? 1 : 0) << '\n';
    }
}

} // namespace

void write_report(const SignalReport& r, std::ostream& os, ReportFormat format) {
    write_rows(r, os, format);
}

void write_report(const SignalReport& r, const std::string& path, ReportFormat format) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open report file for writing: " + tmp);
        write_rows(r, os, format);
        if (!os) throw IoError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename report into place: " + path);
    }
}

} // namespace pem
