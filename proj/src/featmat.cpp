#include "pem/featmat.hpp"

#include <algorithm>
#include <set>

#include "pem/kernels.hpp"

namespace pem {

EventUniverse::EventUniverse(std::vector<std::string> sorted_keys) : keys_(std::move(sorted_keys)) {
    index_.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
}

std::size_t EventUniverse::index_of(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? npos : it->second;
}

std::string event_key(const Readcode& code, UniverseMode mode) {
    return mode == UniverseMode::Level15 ? code.render() : rollup(code, 3).render();
}

EventUniverse build_universe(const std::vector<EventRecord>& events, UniverseMode mode) {
    std::set<std::string> keys;
    for (const auto& ev : events) keys.insert(event_key(ev.event_code, mode));
    return EventUniverse(std::vector<std::string>(keys.begin(), keys.end()));
}

std::pair<FeatureMatrix, FeatureMatrix> build_feature_matrices(
    const ExposureIndex& index, const std::vector<EventRecord>& events,
    const EventUniverse& universe, UniverseMode mode, const WindowConfig& cfg,
    MatrixBuildStats* stats) {
    // ExposureIndex is an ordered map, so row order is ascending patient_id.
    std::unordered_map<std::string, std::size_t> row_of;
    row_of.reserve(index.size());
    std::vector<std::string> patients;
    patients.reserve(index.size());
    std::vector<Day> anchors;
    anchors.reserve(index.size());
    for (const auto& [pid, day] : index) {
        row_of.emplace(pid, patients.size());
        patients.push_back(pid);
        anchors.push_back(day);
    }

    const std::size_t cols = universe.size();
    FeatureMatrix before{MatrixRole::Before, patients, cols,
                         std::vector<std::uint8_t>(patients.size() * cols, 0)};
    FeatureMatrix after{MatrixRole::After, patients, cols,
                        std::vector<std::uint8_t>(patients.size() * cols, 0)};

    MatrixBuildStats st;
    for (const auto& ev : events) {
        auto rit = row_of.find(ev.patient_id);
        if (rit == row_of.end()) {
            ++st.unexposed_events;
            continue;
        }
        std::size_t col = universe.index_of(event_key(ev.event_code, mode));
        if (col == EventUniverse::npos) {
            ++st.universe_misses;
            continue;
        }
        const std::size_t row = rit->second;
        const Day anchor = anchors[row];
        if (ev.date >= anchor - cfg.window_days && ev.date < anchor)
            before.cells[row * cols + col] = 1;
        else if (ev.date > anchor && ev.date <= anchor + cfg.window_days)
            after.cells[row * cols + col] = 1;
    }
    if (stats) *stats = st;
    return {std::move(before), std::move(after)};
}

GroupedMatrix group_matrix(const FeatureMatrix& m, std::size_t group_size) {
    if (m.rows() == 0) throw DataError("EmptyMatrix", "cannot group a matrix with no rows");
    if (group_size < 1) throw DataError("InvalidGroupSize", "group_size must be >= 1");

    const std::size_t rows = m.rows();
    const std::size_t groups = rows >= group_size ? rows / group_size : 1;

    GroupedMatrix out;
    out.role = m.role;
    out.cols = m.cols;
    out.cells.assign(groups * m.cols, 0);
    out.group_sizes.resize(groups);

    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t lo = g * group_size;
        const std::size_t hi = (g + 1 == groups) ? rows : lo + group_size;
        out.group_sizes[g] = hi - lo;
        std::uint32_t* acc = out.cells.data() + g * m.cols;
        for (std::size_t r = lo; r < hi; ++r)
            kernels::add_row_u8(acc, m.cells.data() + r * m.cols, m.cols);
    }
    return out;
}

std::vector<std::uint32_t> column_counts(const FeatureMatrix& m) {
    std::vector<std::uint32_t> counts(m.cols, 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        kernels::add_row_u8(counts.data(), m.cells.data() + r * m.cols, m.cols);
    return counts;
}

namespace {

void dump_header(const EventUniverse& u, std::ostream& os) {
    for (std::size_t c = 0; c < u.size(); ++c) os << (c ? "\t" : "") << u.key(c);
    os << '\n';
}

} // namespace

void dump_matrix(const FeatureMatrix& m, const EventUniverse& u, std::ostream& os) {
    dump_header(u, os);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) os << (c ? "\t" : "") << int(m.at(r, c));
        os << '\n';
    }
}

void dump_matrix(const GroupedMatrix& m, const EventUniverse& u, std::ostream& os) {
    dump_header(u, os);
    for (std::size_t g = 0; g < m.groups(); ++g) {
        for (std::size_t c = 0; c < m.cols; ++c) os << (c ? "\t" : "") << m.at(g, c);
        os << '\n';
    }
}

} // namespace pem
