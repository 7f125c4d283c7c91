#include "astmerge/treefile.hpp"

#include <algorithm>
#include <cctype>

namespace astmerge {
namespace {

class Reader {
public:
    Reader(std::string_view src, Revision revision, NodeIdGen& ids)
        : src_(src), revision_(revision), ids_(ids) {}

    Node read_root() {
        skip_ws();
        Node n = read_node();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input after root node");
        return n;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    Revision revision_;
    NodeIdGen& ids_;

    [[noreturn]] void fail(const std::string& msg) { throw FormatError(msg, line_); }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    void advance() {
        if (peek() == '\n') ++line_;
        ++pos_;
    }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }
    void expect(char c, const char* what) {
        if (peek() != c) fail(std::string("expected ") + what);
        advance();
    }

    std::string read_symbol() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(peek())) &&
               peek() != '(' && peek() != ')') {
            advance();
        }
        if (pos_ == start) fail("expected symbol");
        return std::string(src_.substr(start, pos_ - start));
    }

    Content read_content() {
        expect('"', "'\"'");
        std::string raw;
        while (peek() != '"') {
            if (pos_ >= src_.size()) fail("unterminated content string");
            char c = peek();
            if (c == '\\') {
                advance();
                char esc = peek();
                if (esc != '"' && esc != '\\') fail("bad escape in content");
                raw.push_back(esc);
                advance();
            } else {
                raw.push_back(c);
                advance();
            }
        }
        advance();
        Content values;
        if (raw.empty()) return values;
        std::size_t start = 0;
        while (true) {
            std::size_t sep = raw.find('\x1f', start);
            if (sep == std::string::npos) {
                values.push_back(raw.substr(start));
                break;
            }
            values.push_back(raw.substr(start, sep - start));
            start = sep + 1;
        }
        // Content is a set: keep a sorted, duplicate-free representation.
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        return values;
    }

    long long read_int() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            advance();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer offset");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            advance();
        }
        return neg ? -v : v;
    }

    Node read_node() {
        expect('(', "'('");
        skip_ws();
        Node n;
        n.id = ids_.next();
        n.kind = read_symbol();
        n.revision = revision_;
        skip_ws();
        n.content = read_content();
        long long start = read_int();
        long long end = read_int();
        if (start >= 0 && end >= start) {
            n.span = SourceSpan{static_cast<std::size_t>(start), static_cast<std::size_t>(end)};
        } else if (!(start == -1 && end == -1)) {
            fail("bad span offsets");
        }
        skip_ws();
        while (peek() == '(') {
            n.children.push_back(read_node());
            skip_ws();
        }
        expect(')', "')'");
        return n;
    }
};

void escape_content(const Content& content, std::string& out) {
    out.push_back('"');
    for (std::size_t i = 0; i < content.size(); ++i) {
        if (i > 0) out.push_back('\x1f');
        for (char c : content[i]) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
    }
    out.push_back('"');
}

void write_node(const Node& n, std::string& out) {
    out.push_back('(');
    out += n.kind;
    out.push_back(' ');
    escape_content(n.content, out);
    if (n.span) {
        out += " " + std::to_string(n.span->start) + " " + std::to_string(n.span->end);
    } else {
        out += " -1 -1";
    }
    for (const Node& child : n.children) {
        out.push_back(' ');
        write_node(child, out);
    }
    out.push_back(')');
}

}  // namespace

Tree parse_tree_file(std::string source, Revision revision, NodeIdGen& ids) {
    Reader reader(source, revision, ids);
    Node root = reader.read_root();
    return Tree(std::move(root), std::move(source), revision);
}

std::string write_tree_file(const Node& root) {
    std::string out;
    write_node(root, out);
    return out;
}

}  // namespace astmerge
