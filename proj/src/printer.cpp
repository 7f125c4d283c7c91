#include "astmerge/printer.hpp"

#include <algorithm>

namespace astmerge {

namespace {

void ensure_newline(std::string& out) {
    if (!out.empty() && out.back() != '\n') out.push_back('\n');
}

bool is_statement_kind(const Kind& kind) {
    return kind == kinds::call || kind == kinds::assign || kind == kinds::uop ||
           kind == kinds::ref || kind == kinds::int_lit;
}

std::string repeat(const std::string& unit, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += unit;
    return out;
}

// Strips the common leading whitespace of the non-blank lines and
// re-applies the target indentation.
std::string reindent(const std::string& text, const std::string& target) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    std::string common;
    bool first = true;
    for (const std::string& line : lines) {
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t ws = 0;
        while (ws < line.size() && (line[ws] == ' ' || line[ws] == '\t')) ++ws;
        std::string lead = line.substr(0, ws);
        if (first) {
            common = lead;
            first = false;
        } else {
            std::size_t i = 0;
            while (i < common.size() && i < lead.size() && common[i] == lead[i]) ++i;
            common.resize(i);
        }
    }
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.find_first_not_of(" \t") != std::string::npos) {
            out += target + line.substr(std::min(common.size(), line.size()));
        }
        if (i + 1 < lines.size()) out.push_back('\n');
    }
    return out;
}

bool lockstep(const MergedNode& m, const Node& src, Revision rev) {
    if (m.type != MergedNode::Type::concrete) return false;
    auto it = m.instances.find(rev);
    if (it == m.instances.end() || it->second != src.id) return false;
    if (m.kind != src.kind || m.content != src.content) return false;
    if (m.children.size() != src.children.size()) return false;
    for (std::size_t i = 0; i < m.children.size(); ++i) {
        if (!lockstep(m.children[i], src.children[i], rev)) return false;
    }
    return true;
}

class Renderer {
public:
    Renderer(const MergeSession* session, const PrintConfig& cfg)
        : session_(session), cfg_(cfg), marker_len_(std::max<std::size_t>(cfg.marker_len, 7)) {}

    std::string render(const MergedNode& node, std::size_t depth) {
        switch (node.type) {
            case MergedNode::Type::textual_conflict:
                return node.text;
            case MergedNode::Type::structural_conflict:
                return render_conflict(node, depth);
            case MergedNode::Type::concrete:
                break;
        }
        return render_concrete(node, depth);
    }

private:
    const MergeSession* session_;
    const PrintConfig& cfg_;
    std::size_t marker_len_;

    static bool is_block_output(const MergedNode& node) { return node.is_conflict(); }

    std::string name_of(const MergedNode& node) const {
        return node.content.empty() ? "" : node.content.front();
    }

    // Appends a child that may be a conflict block: markers must start at
    // the beginning of a line.
    void append_inline(std::string& out, const MergedNode& child, std::size_t depth) {
        if (is_block_output(child)) {
            out += "\n";
            out += render(child, depth);
        } else {
            out += render(child, depth);
        }
    }

    // Verbatim source slice for a subtree that stems from one revision.
    std::optional<std::string> single_revision_slice(const MergedNode& node) const {
        if (!session_ || node.type != MergedNode::Type::concrete) return std::nullopt;
        for (Revision rev : {Revision::base, Revision::left, Revision::right}) {
            if (!matches_revision(node, rev, session_->index)) continue;
            const Node* src = session_->index.find(node.instances.at(rev));
            if (!src || !src->span) continue;
            return print_subtree(*src, session_->source(rev));
        }
        return std::nullopt;
    }

    std::string side_text(const MergedNode& node, Revision rev, std::size_t depth) {
        if (session_ && node.type == MergedNode::Type::concrete) {
            auto it = node.instances.find(rev);
            if (it != node.instances.end()) {
                const Node* src = session_->index.find(it->second);
                if (src && src->span) {
                    return reindent(print_subtree(*src, session_->source(rev)),
                                    repeat(cfg_.indent, depth));
                }
            }
        }
        return render(node, depth);
    }

    std::string render_conflict(const MergedNode& node, std::size_t depth) {
        std::string out = std::string(marker_len_, '<') + " " + cfg_.left_label + "\n";
        for (const MergedNode& n : node.left_nodes) {
            out += side_text(n, Revision::left, depth);
            ensure_newline(out);
        }
        out += std::string(marker_len_, '=') + "\n";
        for (const MergedNode& n : node.right_nodes) {
            out += side_text(n, Revision::right, depth);
            ensure_newline(out);
        }
        out += std::string(marker_len_, '>') + " " + cfg_.right_label + "\n";
        return out;
    }

    std::string render_program(const MergedNode& node, std::size_t depth) {
        std::string out;
        for (const MergedNode& item : node.children) {
            if (is_block_output(item)) {
                ensure_newline(out);
                out += render(item, depth);
                continue;
            }
            // Top-level items reuse their original source when they stem
            // from a single revision.
            ensure_newline(out);
            if (std::optional<std::string> slice = single_revision_slice(item)) {
                out += *slice;
            } else {
                out += render(item, depth);
            }
        }
        ensure_newline(out);
        return out;
    }

    std::string render_args(const std::vector<MergedNode>& args, std::size_t depth) {
        std::string out;
        for (std::size_t i = 0; i < args.size(); ++i) {
            const MergedNode& arg = args[i];
            if (is_block_output(arg)) {
                if (i > 0) out += ",";
                out += "\n";  // markers start on a fresh line, after the "("
                out += render(arg, depth);
            } else {
                if (i > 0 && out.ends_with("\n")) {
                    // continues right after a conflict block
                } else if (i > 0) {
                    out += ", ";
                }
                out += render(arg, depth);
            }
        }
        return out;
    }

    std::string render_block(const MergedNode& node, std::size_t depth) {
        std::string out = "{\n";
        for (const MergedNode& stmt : node.children) {
            if (is_block_output(stmt)) {
                out += render(stmt, depth + 1);
                ensure_newline(out);
                continue;
            }
            out += repeat(cfg_.indent, depth + 1) + render(stmt, depth + 1);
            if (stmt.type == MergedNode::Type::concrete && is_statement_kind(stmt.kind)) {
                out += ";";
            }
            ensure_newline(out);
        }
        out += repeat(cfg_.indent, depth) + "}";
        return out;
    }

    std::string render_fn(const MergedNode& node, std::size_t depth) {
        std::string out = "fn " + name_of(node) + "(";
        std::vector<const MergedNode*> rest;
        bool first = true;
        for (const MergedNode& child : node.children) {
            if (child.type == MergedNode::Type::concrete && child.kind == kinds::param) {
                if (!first) out += ", ";
                out += name_of(child);
                first = false;
            } else {
                rest.push_back(&child);
            }
        }
        out += ")";
        for (const MergedNode* child : rest) {
            if (is_block_output(*child)) {
                ensure_newline(out);
                out += render(*child, depth);
            } else {
                out += " " + render(*child, depth);
            }
        }
        return out;
    }

    std::string render_concrete(const MergedNode& node, std::size_t depth) {
        const Kind& kind = node.kind;
        if (kind == kinds::program) return render_program(node, depth);
        if (kind == kinds::fn) return render_fn(node, depth);
        if (kind == kinds::block) return render_block(node, depth);
        if (kind == kinds::call) return name_of(node) + "(" + render_args(node.children, depth) + ")";
        if (kind == kinds::assign) {
            std::string out = name_of(node) + " =";
            for (const MergedNode& child : node.children) {
                if (!is_block_output(child)) out += " ";
                append_inline(out, child, depth);
            }
            return out;
        }
        if (kind == kinds::uop) {
            std::string out = name_of(node);
            for (const MergedNode& child : node.children) append_inline(out, child, depth);
            return out;
        }
        if (kind == kinds::comment || kind == kinds::ref || kind == kinds::int_lit ||
            kind == kinds::param) {
            return name_of(node);
        }
        // Unknown kind: content values, then children in parentheses.
        std::string out;
        for (std::size_t i = 0; i < node.content.size(); ++i) {
            if (i > 0) out += " ";
            out += node.content[i];
        }
        if (!node.children.empty()) {
            out += "(" + render_args(node.children, depth) + ")";
        }
        return out;
    }
};

MergedNode plain_to_merged(const Node& node) {
    MergedNode out;
    out.type = MergedNode::Type::concrete;
    out.rep = node.id;
    out.kind = node.kind;
    out.content = node.content;
    for (const Node& child : node.children) out.children.push_back(plain_to_merged(child));
    return out;
}

}  // namespace

std::string print_subtree(const Node& node, const std::string& source) {
    if (!node.span) {
        throw MissingSpan("node " + std::to_string(node.id.value) + " has no source span");
    }
    std::size_t start = std::min(node.span->start, source.size());
    std::size_t end = std::min(node.span->end, source.size());
    return source.substr(start, end - start);
}

std::string render_source_node(const Node& node, const PrintConfig& cfg, std::size_t depth) {
    return Renderer(nullptr, cfg).render(plain_to_merged(node), depth);
}

bool matches_revision(const MergedNode& node, Revision revision, const NodeIndex& index) {
    if (node.type != MergedNode::Type::concrete) return false;
    auto it = node.instances.find(revision);
    if (it == node.instances.end()) return false;
    const Node* src = index.find(it->second);
    if (!src) return false;
    return lockstep(node, *src, revision);
}

std::string print(const MergedTree& tree, const MergeSession& session, const PrintConfig& cfg) {
    for (Revision rev : {Revision::base, Revision::left, Revision::right}) {
        if (matches_revision(tree.root, rev, session.index)) return session.source(rev);
    }
    std::string out = Renderer(&session, cfg).render(tree.root, 0);
    if (!out.empty() && out.back() != '\n') out.push_back('\n');
    return out;
}

}  // namespace astmerge
