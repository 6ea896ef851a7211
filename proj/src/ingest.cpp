#include "pem/ingest.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

namespace pem {

namespace {

constexpr Day kMinDay = -25567; // 1900-01-01
constexpr Day kMaxDay = 47482;  // 2100-01-01

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(field);
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// Column positions resolved from the header row by name.
struct Columns {
    std::size_t patient = 0, code = 0, date = 0, width = 0;
};

Columns resolve_columns(const std::string& header, const char* code_name, char delim,
                        const std::string& path) {
    auto names = split(header, delim);
    Columns cols;
    cols.width = names.size();
    bool got_p = false, got_c = false, got_d = false;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == "patient_id") { cols.patient = i; got_p = true; }
        else if (names[i] == code_name) { cols.code = i; got_c = true; }
        else if (names[i] == "date") { cols.date = i; got_d = true; }
    }
    if (!got_p || !got_c || !got_d)
        throw DataError("MissingColumn",
                        path + ": header must name patient_id, " + std::string(code_name) + ", date");
    return cols;
}

} // namespace

Day parse_date(std::string_view iso) {
    int y = 0, m = 0, d = 0;
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw DataError("BadDate", "expected YYYY-MM-DD: '" + std::string(iso) + "'");
    auto num = [&](std::size_t pos, std::size_t len, int& out) {
        auto res = std::from_chars(iso.data() + pos, iso.data() + pos + len, out);
        return res.ec == std::errc{} && res.ptr == iso.data() + pos + len;
    };
    if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d))
        throw DataError("BadDate", "expected YYYY-MM-DD: '" + std::string(iso) + "'");
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) throw DataError("BadDate", "invalid calendar date: '" + std::string(iso) + "'");
    Day day = std::chrono::sys_days{ymd}.time_since_epoch().count();
    if (day < kMinDay || day > kMaxDay)
        throw DataError("BadDate", "date outside plausible range: '" + std::string(iso) + "'");
    return day;
}

std::string format_date(Day d) {
    std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{d}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

std::vector<PrescriptionRecord> load_therapy(const std::string& path,
                                             const std::string& drug_prefix,
                                             LoadSummary* summary, char delimiter) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open therapy file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError("MissingColumn", path + ": empty file, no header");
    Columns cols = resolve_columns(strip_cr(line), "drug_code", delimiter, path);

    std::vector<PrescriptionRecord> out;
    LoadSummary sum;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split(line, delimiter);
        try {
            if (fields.size() < cols.width) throw DataError("ShortRow", "");
            PrescriptionRecord rec;
            rec.patient_id = fields[cols.patient];
            rec.drug_code = fields[cols.code];
            rec.date = parse_date(fields[cols.date]);
            if (rec.patient_id.empty() || rec.drug_code.empty()) throw DataError("EmptyField", "");
            if (rec.drug_code.rfind(drug_prefix, 0) != 0) {
                ++sum.filtered;
                continue;
            }
            out.push_back(std::move(rec));
            ++sum.kept;
        } catch (const DataError&) {
            ++sum.skipped;
        }
    }
    if (summary) *summary = sum;
    return out;
}

std::vector<EventRecord> load_medical(const std::string& path, LoadSummary* summary,
                                      char delimiter) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open medical file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError("MissingColumn", path + ": empty file, no header");
    Columns cols = resolve_columns(strip_cr(line), "event_code", delimiter, path);

    std::vector<EventRecord> out;
    LoadSummary sum;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split(line, delimiter);
        try {
            if (fields.size() < cols.width) throw DataError("ShortRow", "");
            EventRecord rec;
            rec.patient_id = fields[cols.patient];
            if (rec.patient_id.empty()) throw DataError("EmptyField", "");
            rec.event_code = parse_readcode(fields[cols.code]);
            rec.date = parse_date(fields[cols.date]);
            out.push_back(std::move(rec));
            ++sum.kept;
        } catch (const DataError&) {
            ++sum.skipped;
        }
    }
    if (summary) *summary = sum;
    return out;
}

ExposureIndex build_exposure_index(const std::vector<PrescriptionRecord>& prescriptions) {
    ExposureIndex index;
    for (const auto& p : prescriptions) {
        auto [it, inserted] = index.emplace(p.patient_id, p.date);
        if (!inserted && p.date < it->second) it->second = p.date;
    }
    return index;
}

} // namespace pem
