#ifndef ASTMERGE_TEXTMERGE_HPP
#define ASTMERGE_TEXTMERGE_HPP

#include <string>
#include <vector>

namespace astmerge {

struct LineChunk {
    enum class Type { stable, conflict };
    Type type = Type::stable;
    std::vector<std::string> lines;        // stable content
    std::vector<std::string> left_lines;   // conflict sides
    std::vector<std::string> right_lines;
};

struct LineMergeResult {
    std::vector<LineChunk> chunks;
    bool clean = true;

    // Flattens the chunks into merged text, rendering conflicts as
    // marker-delimited hunks.
    std::string render(const std::string& left_label, const std::string& right_label,
                       std::size_t marker_len = 7) const;
};

std::vector<std::string> split_lines(std::string_view text);
std::string join_lines(const std::vector<std::string>& lines);

// Three-way line merge: one-sided changes win, identical changes merge,
// diverging changes become a conflict chunk with no context lines.
LineMergeResult diff3_merge(const std::vector<std::string>& base,
                            const std::vector<std::string>& left,
                            const std::vector<std::string>& right);

LineMergeResult diff3_merge_text(std::string_view base, std::string_view left,
                                 std::string_view right);

}  // namespace astmerge

#endif
