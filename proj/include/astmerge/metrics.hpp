#ifndef ASTMERGE_METRICS_HPP
#define ASTMERGE_METRICS_HPP

#include <stdexcept>
#include <string>

namespace astmerge {

struct MalformedHunk : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MergeMetrics {
    std::size_t conflict_hunks = 0;
    std::size_t conflicting_lines = 0;
    std::size_t line_diff = 0;
    std::size_t char_diff = 0;
};

struct ConflictScan {
    std::size_t hunks = 0;
    // Lines strictly between the markers, the separator line excluded.
    std::size_t conflicting_lines = 0;
};

// Counts marker-delimited conflict hunks. Throws MalformedHunk on
// unbalanced or nested markers.
ConflictScan scan_conflicts(std::string_view merged);

// Insertions plus deletions of an LCS line diff.
std::size_t line_diff_size(std::string_view a, std::string_view b);

// Insertions plus deletions of an LCS character diff.
std::size_t char_diff_size(std::string_view a, std::string_view b);

MergeMetrics compute_metrics(std::string_view merged, std::string_view expected);

}  // namespace astmerge

#endif
