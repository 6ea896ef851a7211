#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pem/stats.hpp"

namespace pem {

enum class Ranking { ByPAscending, ByR1Descending };

struct SignalReport {
    UniverseMode mode = UniverseMode::Level15;
    Ranking ranking = Ranking::ByPAscending;
    double alpha = 0.05;
    std::vector<EventStats> rows; // already sorted; rank = position + 1
    std::vector<std::pair<std::string, std::string>> provenance;
};

// Filter p < alpha (and N_A > N_B when direction_filter), sort by p
// ascending then event key, keep top_k.
SignalReport rank_by_p(std::vector<EventStats> stats, double alpha, std::size_t top_k,
                       bool direction_filter = true);

// Same filter; sort by R1 descending, then p ascending, then event key.
SignalReport rank_by_r1(std::vector<EventStats> stats, double alpha, std::size_t top_k,
                        bool direction_filter = true);

// Rows whose event code begins with prefix, order preserved.
std::vector<EventStats> filter_prefix(const std::vector<EventStats>& stats,
                                      const std::string& prefix);

enum class ReportFormat { Tsv, Pretty };

// Atomic write (temp file + rename). TSV columns: rank, readcode,
// description, N_B, N_A, R1, R2, t, df, p, degenerate; provenance as
// '#'-prefixed leading lines.
void write_report(const SignalReport& r, const std::string& path, ReportFormat format);
void write_report(const SignalReport& r, std::ostream& os, ReportFormat format);

} // namespace pem
