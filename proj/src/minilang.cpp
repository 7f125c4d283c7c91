#include "astmerge/minilang.hpp"

#include <cctype>
#include <map>

namespace astmerge {
namespace {

enum class Tok {
    ident,
    integer,
    comment,
    kw_fn,
    lparen,
    rparen,
    lbrace,
    rbrace,
    comma,
    semi,
    eq,
    minus,
    eof,
};

struct Token {
    Tok type = Tok::eof;
    std::string_view text;
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next();

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;

    char peek(std::size_t off = 0) const {
        return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
    }
    void advance() {
        if (peek() == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
};

Token Lexer::next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(peek()))) advance();

    Token tok;
    tok.start = pos_;
    tok.line = line_;
    tok.column = col_;

    auto finish = [&](Tok type) {
        tok.type = type;
        tok.end = pos_;
        tok.text = src_.substr(tok.start, tok.end - tok.start);
        return tok;
    };

    if (pos_ >= src_.size()) return finish(Tok::eof);

    char c = peek();
    if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
        return finish(Tok::comment);
    }
    if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) throw ParseError("unterminated block comment", tok.line, tok.column);
        advance();
        advance();
        return finish(Tok::comment);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
        Token t = finish(Tok::ident);
        if (t.text == "fn") t.type = Tok::kw_fn;
        return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        return finish(Tok::integer);
    }

    advance();
    switch (c) {
        case '(': return finish(Tok::lparen);
        case ')': return finish(Tok::rparen);
        case '{': return finish(Tok::lbrace);
        case '}': return finish(Tok::rbrace);
        case ',': return finish(Tok::comma);
        case ';': return finish(Tok::semi);
        case '=': return finish(Tok::eq);
        case '-': return finish(Tok::minus);
        default:
            throw ParseError("unexpected character '" + std::string(1, c) + "'", tok.line, tok.column);
    }
}

class Parser {
public:
    Parser(std::string_view src, Revision revision, NodeIdGen& ids)
        : lexer_(src), revision_(revision), ids_(ids) {
        cur_ = lexer_.next();
    }

    Node parse_program(std::size_t source_len);

private:
    Lexer lexer_;
    Token cur_;
    Revision revision_;
    NodeIdGen& ids_;

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, cur_.line, cur_.column);
    }
    Token eat(Tok type, const char* what) {
        if (cur_.type != type) fail(std::string("expected ") + what);
        Token t = cur_;
        cur_ = lexer_.next();
        return t;
    }
    Node make(std::string_view kind, Content content, SourceSpan span) {
        Node n;
        n.id = ids_.next();
        n.kind = Kind(kind);
        n.content = std::move(content);
        n.span = span;
        n.revision = revision_;
        return n;
    }

    Node parse_fn();
    Node parse_block();
    Node parse_comment();
    Node parse_statement(bool require_semi);
    Node parse_expr();
};

Node Parser::parse_comment() {
    Token t = eat(Tok::comment, "comment");
    return make(kinds::comment, {std::string(t.text)}, {t.start, t.end});
}

Node Parser::parse_expr() {
    if (cur_.type == Tok::minus) {
        Token op = eat(Tok::minus, "'-'");
        Node operand = parse_expr();
        SourceSpan span{op.start, operand.span->end};
        Node n = make(kinds::uop, {"-"}, span);
        n.children.push_back(std::move(operand));
        return n;
    }
    if (cur_.type == Tok::integer) {
        Token t = eat(Tok::integer, "integer");
        return make(kinds::int_lit, {std::string(t.text)}, {t.start, t.end});
    }
    if (cur_.type != Tok::ident) fail("expected expression");
    Token name = eat(Tok::ident, "identifier");
    if (cur_.type == Tok::lparen) {
        eat(Tok::lparen, "'('");
        std::vector<Node> args;
        if (cur_.type != Tok::rparen) {
            args.push_back(parse_expr());
            while (cur_.type == Tok::comma) {
                eat(Tok::comma, "','");
                args.push_back(parse_expr());
            }
        }
        Token close = eat(Tok::rparen, "')'");
        Node n = make(kinds::call, {std::string(name.text)}, {name.start, close.end});
        n.children = std::move(args);
        return n;
    }
    if (cur_.type == Tok::eq) {
        eat(Tok::eq, "'='");
        Node rhs = parse_expr();
        SourceSpan span{name.start, rhs.span->end};
        Node n = make(kinds::assign, {std::string(name.text)}, span);
        n.children.push_back(std::move(rhs));
        return n;
    }
    return make(kinds::ref, {std::string(name.text)}, {name.start, name.end});
}

Node Parser::parse_statement(bool require_semi) {
    Node expr = parse_expr();
    if (cur_.type == Tok::semi) {
        eat(Tok::semi, "';'");
    } else if (require_semi) {
        fail("expected ';'");
    }
    return expr;
}

Node Parser::parse_block() {
    Token open = eat(Tok::lbrace, "'{'");
    std::vector<Node> items;
    while (cur_.type != Tok::rbrace) {
        if (cur_.type == Tok::eof) fail("unterminated block");
        if (cur_.type == Tok::comment) {
            items.push_back(parse_comment());
        } else {
            items.push_back(parse_statement(/*require_semi=*/true));
        }
    }
    Token close = eat(Tok::rbrace, "'}'");
    Node n = make(kinds::block, {}, {open.start, close.end});
    n.children = std::move(items);
    return n;
}

Node Parser::parse_fn() {
    Token kw = eat(Tok::kw_fn, "'fn'");
    Token name = eat(Tok::ident, "function name");
    eat(Tok::lparen, "'('");
    std::vector<Node> children;
    if (cur_.type == Tok::ident) {
        Token p = eat(Tok::ident, "parameter");
        children.push_back(make(kinds::param, {std::string(p.text)}, {p.start, p.end}));
        while (cur_.type == Tok::comma) {
            eat(Tok::comma, "','");
            Token q = eat(Tok::ident, "parameter");
            children.push_back(make(kinds::param, {std::string(q.text)}, {q.start, q.end}));
        }
    }
    eat(Tok::rparen, "')'");
    Node body = parse_block();
    SourceSpan span{kw.start, body.span->end};
    Node n = make(kinds::fn, {std::string(name.text)}, span);
    n.children = std::move(children);
    n.children.push_back(std::move(body));
    return n;
}

Node Parser::parse_program(std::size_t source_len) {
    std::vector<Node> items;
    while (cur_.type != Tok::eof) {
        if (cur_.type == Tok::comment) {
            items.push_back(parse_comment());
        } else if (cur_.type == Tok::kw_fn) {
            items.push_back(parse_fn());
        } else {
            items.push_back(parse_statement(/*require_semi=*/false));
        }
    }
    Node n = make(kinds::program, {}, {0, source_len});
    n.children = std::move(items);
    return n;
}

}  // namespace

Tree parse_minilang(std::string source, Revision revision, NodeIdGen& ids) {
    Parser parser(source, revision, ids);
    Node root = parser.parse_program(source.size());
    return Tree(std::move(root), std::move(source), revision);
}

IndentationStyle detect_indentation(std::string_view source) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        std::size_t nl = source.find('\n', pos);
        if (nl == std::string_view::npos) nl = source.size();
        lines.push_back(source.substr(pos, nl - pos));
        if (nl == source.size()) break;
        pos = nl + 1;
    }

    auto leading_ws = [](std::string_view line) {
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        return line.substr(0, i);
    };

    std::map<std::string, std::size_t> tally;
    std::vector<std::string> first_seen;
    std::string_view prev_indent;
    bool have_prev = false;
    for (std::string_view line : lines) {
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;  // blank
        std::string_view indent = leading_ws(line);
        if (have_prev && indent.size() > prev_indent.size() &&
            indent.substr(0, prev_indent.size()) == prev_indent) {
            std::string unit(indent.substr(prev_indent.size()));
            if (tally[unit]++ == 0) first_seen.push_back(unit);
        }
        prev_indent = indent;
        have_prev = true;
    }

    std::string best = "    ";
    std::size_t best_count = 0;
    for (const std::string& unit : first_seen) {
        if (tally[unit] > best_count) {
            best = unit;
            best_count = tally[unit];
        }
    }
    return best;
}

}  // namespace astmerge
