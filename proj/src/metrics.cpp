#include "astmerge/metrics.hpp"

#include <string>
#include <vector>

#include "astmerge/lcs.hpp"
#include "astmerge/textmerge.hpp"

namespace astmerge {

namespace {

bool marker_line(const std::string& line, char c) {
    if (line.size() < 7) return false;
    std::size_t i = 0;
    while (i < line.size() && line[i] == c) ++i;
    if (i < 7) return false;
    if (c == '=') return i == line.size();        // separator is the whole line
    return i == line.size() || line[i] == ' ';    // markers may carry a label
}

}  // namespace

ConflictScan scan_conflicts(std::string_view merged) {
    ConflictScan scan;
    enum class State { outside, in_left, in_right };
    State state = State::outside;

    for (const std::string& line : split_lines(merged)) {
        if (marker_line(line, '<')) {
            if (state != State::outside) throw MalformedHunk("nested conflict start marker");
            state = State::in_left;
        } else if (marker_line(line, '=')) {
            if (state == State::in_left) {
                state = State::in_right;
            } else if (state == State::in_right) {
                throw MalformedHunk("duplicate separator in conflict hunk");
            }
            // A plain run of '=' outside any hunk is ordinary text.
        } else if (marker_line(line, '>')) {
            if (state != State::in_right) throw MalformedHunk("unmatched conflict end marker");
            state = State::outside;
            ++scan.hunks;
        } else if (state != State::outside) {
            ++scan.conflicting_lines;
        }
    }
    if (state != State::outside) throw MalformedHunk("unterminated conflict hunk");
    return scan;
}

std::size_t line_diff_size(std::string_view a, std::string_view b) {
    return diff_size(split_lines(a), split_lines(b));
}

std::size_t char_diff_size(std::string_view a, std::string_view b) {
    return diff_size(a, b);
}

MergeMetrics compute_metrics(std::string_view merged, std::string_view expected) {
    MergeMetrics m;
    ConflictScan scan = scan_conflicts(merged);
    m.conflict_hunks = scan.hunks;
    m.conflicting_lines = scan.conflicting_lines;
    m.line_diff = line_diff_size(merged, expected);
    m.char_diff = char_diff_size(merged, expected);
    return m;
}

}  // namespace astmerge
