#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pem/readcode.hpp"

namespace pem {

// Calendar day as days since 1970-01-01.
using Day = std::int64_t;

// Parses ISO-8601 YYYY-MM-DD; rejects dates outside [1900-01-01, 2100-01-01].
Day parse_date(std::string_view iso);
std::string format_date(Day d);

struct PrescriptionRecord {
    std::string patient_id;
    std::string drug_code;
    Day date = 0;
};

struct EventRecord {
    std::string patient_id;
    Readcode event_code;
    Day date = 0;
};

struct LoadSummary {
    std::size_t kept = 0;
    std::size_t skipped = 0;  // malformed rows
    std::size_t filtered = 0; // well-formed rows dropped by the drug filter
    std::size_t total() const { return kept + skipped + filtered; }
};

// Per-patient anchor: first prescription date of the study drug.
using ExposureIndex = std::map<std::string, Day>;

// Therapy file: header row patient_id,drug_code,date. Keeps only rows whose
// drug_code starts with drug_prefix; malformed rows are skipped and counted.
std::vector<PrescriptionRecord> load_therapy(const std::string& path,
                                             const std::string& drug_prefix,
                                             LoadSummary* summary = nullptr,
                                             char delimiter = ',');

// Medical file: header row patient_id,event_code,date. Event codes are
// canonicalized via parse_readcode.
std::vector<EventRecord> load_medical(const std::string& path,
                                      LoadSummary* summary = nullptr,
                                      char delimiter = ',');

ExposureIndex build_exposure_index(const std::vector<PrescriptionRecord>& prescriptions);

} // namespace pem
