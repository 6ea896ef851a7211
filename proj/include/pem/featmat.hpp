#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "pem/ingest.hpp"

namespace pem {

// level15: columns keyed by the full 7-char rendering.
// level13: codes rolled up to level 3 first, term reset to "00".
enum class UniverseMode { Level15, Level13 };

// Ordered, deduplicated set of event keys = matrix columns.
class EventUniverse {
public:
    EventUniverse() = default;
    explicit EventUniverse(std::vector<std::string> sorted_keys);

    std::size_t size() const { return keys_.size(); }
    const std::vector<std::string>& keys() const { return keys_; }
    const std::string& key(std::size_t col) const { return keys_[col]; }

    // npos when the key is not in the universe.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t index_of(const std::string& key) const;

private:
    std::vector<std::string> keys_;
    std::unordered_map<std::string, std::size_t> index_;
};

std::string event_key(const Readcode& code, UniverseMode mode);

EventUniverse build_universe(const std::vector<EventRecord>& events, UniverseMode mode);

enum class MatrixRole { Before, After };

// Binary patients x events matrix (dense, row-major).
struct FeatureMatrix {
    MatrixRole role = MatrixRole::Before;
    std::vector<std::string> patient_ids; // ascending
    std::size_t cols = 0;
    std::vector<std::uint8_t> cells; // rows * cols, 0/1

    std::size_t rows() const { return patient_ids.size(); }
    std::uint8_t at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
};

// Group-summed counterpart: one row per patient group.
struct GroupedMatrix {
    MatrixRole role = MatrixRole::Before;
    std::vector<std::size_t> group_sizes;
    std::size_t cols = 0;
    std::vector<std::uint32_t> cells; // groups * cols

    std::size_t groups() const { return group_sizes.size(); }
    std::uint32_t at(std::size_t g, std::size_t c) const { return cells[g * cols + c]; }
};

struct WindowConfig {
    int window_days = 60;
    std::size_t group_size = 100;
};

struct MatrixBuildStats {
    std::size_t unexposed_events = 0; // events for patients outside the index
    std::size_t universe_misses = 0;  // keys absent from an externally supplied universe
};

// A[p,e] = 1 iff some event with key e falls in [anchor-window, anchor);
// B[p,e] = 1 iff in (anchor, anchor+window]. Events dated exactly on the
// anchor day land in neither matrix.
std::pair<FeatureMatrix, FeatureMatrix> build_feature_matrices(
    const ExposureIndex& index, const std::vector<EventRecord>& events,
    const EventUniverse& universe, UniverseMode mode, const WindowConfig& cfg,
    MatrixBuildStats* stats = nullptr);

// floor(rows / group_size) groups, remainder rows merged into the last group;
// fewer rows than group_size form a single group.
GroupedMatrix group_matrix(const FeatureMatrix& m, std::size_t group_size);

std::vector<std::uint32_t> column_counts(const FeatureMatrix& m);

// Debug dump: header of event keys, one tab-separated row per patient/group.
void dump_matrix(const FeatureMatrix& m, const EventUniverse& u, std::ostream& os);
void dump_matrix(const GroupedMatrix& m, const EventUniverse& u, std::ostream& os);

} // namespace pem
