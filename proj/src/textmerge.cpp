#include "astmerge/textmerge.hpp"

#include <map>

#include "astmerge/lcs.hpp"

namespace astmerge {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(pos));
            break;
        }
        lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out.push_back('\n');
    }
    return out;
}

std::string LineMergeResult::render(const std::string& left_label,
                                    const std::string& right_label,
                                    std::size_t marker_len) const {
    std::vector<std::string> lines;
    for (const LineChunk& chunk : chunks) {
        if (chunk.type == LineChunk::Type::stable) {
            lines.insert(lines.end(), chunk.lines.begin(), chunk.lines.end());
        } else {
            lines.push_back(std::string(marker_len, '<') + " " + left_label);
            lines.insert(lines.end(), chunk.left_lines.begin(), chunk.left_lines.end());
            lines.push_back(std::string(marker_len, '='));
            lines.insert(lines.end(), chunk.right_lines.begin(), chunk.right_lines.end());
            lines.push_back(std::string(marker_len, '>') + " " + right_label);
        }
    }
    return join_lines(lines);
}

namespace {

using Lines = std::vector<std::string>;

Lines slice(const Lines& v, std::size_t begin, std::size_t end) {
    return Lines(v.begin() + static_cast<std::ptrdiff_t>(begin),
                 v.begin() + static_cast<std::ptrdiff_t>(end));
}

void push_stable(LineMergeResult& out, Lines lines) {
    if (lines.empty()) return;
    if (!out.chunks.empty() && out.chunks.back().type == LineChunk::Type::stable) {
        Lines& dst = out.chunks.back().lines;
        dst.insert(dst.end(), lines.begin(), lines.end());
        return;
    }
    LineChunk chunk;
    chunk.type = LineChunk::Type::stable;
    chunk.lines = std::move(lines);
    out.chunks.push_back(std::move(chunk));
}

void resolve_region(LineMergeResult& out, const Lines& b, const Lines& l, const Lines& r) {
    if (b.empty() && l.empty() && r.empty()) return;
    if (l == b && r == b) {
        push_stable(out, b);
    } else if (l == b) {
        push_stable(out, r);
    } else if (r == b) {
        push_stable(out, l);
    } else if (l == r) {
        push_stable(out, l);
    } else {
        LineChunk chunk;
        chunk.type = LineChunk::Type::conflict;
        chunk.left_lines = l;
        chunk.right_lines = r;
        out.chunks.push_back(std::move(chunk));
        out.clean = false;
    }
}

}  // namespace

LineMergeResult diff3_merge(const Lines& base, const Lines& left, const Lines& right) {
    auto bl = lcs_pairs(base, left);
    auto br = lcs_pairs(base, right);

    std::map<std::size_t, std::size_t> base_to_left(bl.begin(), bl.end());
    std::map<std::size_t, std::size_t> base_to_right(br.begin(), br.end());

    LineMergeResult out;

    // Anchors are base lines matched in both derived revisions; the
    // material between consecutive anchors is resolved as one region.
    std::size_t region_b = 0, region_l = 0, region_r = 0;
    for (std::size_t b = 0; b <= base.size(); ++b) {
        bool is_anchor = false;
        std::size_t al = 0, ar = 0;
        if (b < base.size()) {
            auto itl = base_to_left.find(b);
            auto itr = base_to_right.find(b);
            if (itl != base_to_left.end() && itr != base_to_right.end()) {
                is_anchor = true;
                al = itl->second;
                ar = itr->second;
            }
        } else {
            is_anchor = true;
            al = left.size();
            ar = right.size();
        }
        if (!is_anchor) continue;

        resolve_region(out, slice(base, region_b, b), slice(left, region_l, al),
                       slice(right, region_r, ar));
        if (b < base.size()) {
            push_stable(out, {base[b]});
            region_b = b + 1;
            region_l = al + 1;
            region_r = ar + 1;
        }
    }
    return out;
}

LineMergeResult diff3_merge_text(std::string_view base, std::string_view left,
                                 std::string_view right) {
    return diff3_merge(split_lines(base), split_lines(left), split_lines(right));
}

}  // namespace astmerge
