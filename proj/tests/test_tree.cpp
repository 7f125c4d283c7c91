#include <doctest.h>

#include <set>

#include "astmerge/minilang.hpp"
#include "astmerge/treefile.hpp"
#include "support/generators.hpp"

using namespace astmerge;
using astmerge::tests::MiniLangGen;
using astmerge::tests::Rng;

namespace {

const Node& child(const Node& n, std::size_t i) { return n.children.at(i); }

}  // namespace

TEST_CASE("parse_minilang handles the running example revisions") {
    NodeIdGen ids;

    Tree base = parse_minilang("add(a,b)", Revision::base, ids);
    REQUIRE(base.root.kind == kinds::program);
    REQUIRE(base.root.children.size() == 1);
    const Node& call = child(base.root, 0);
    CHECK(call.kind == kinds::call);
    CHECK(call.content == Content{"add"});
    REQUIRE(call.children.size() == 2);
    CHECK(child(call, 0).kind == kinds::ref);
    CHECK(child(call, 0).content == Content{"a"});
    CHECK(child(call, 1).content == Content{"b"});

    Tree right = parse_minilang("sum(-a,b,c)", Revision::right, ids);
    const Node& sum = child(right.root, 0);
    CHECK(sum.content == Content{"sum"});
    REQUIRE(sum.children.size() == 3);
    CHECK(child(sum, 0).kind == kinds::uop);
    CHECK(child(sum, 0).content == Content{"-"});
    CHECK(child(child(sum, 0), 0).content == Content{"a"});
    CHECK(child(sum, 2).content == Content{"c"});
}

TEST_CASE("parse_minilang handles the empty program") {
    NodeIdGen ids;
    Tree t = parse_minilang("", Revision::base, ids);
    CHECK(t.root.kind == kinds::program);
    CHECK(t.root.children.empty());
}

TEST_CASE("parse_minilang reports line and column on errors") {
    NodeIdGen ids;
    try {
        parse_minilang("fn f(a,b) {\n  x(;\n}", Revision::base, ids);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column > 1);
    }
}

TEST_CASE("parse_minilang spans cover exact extents and nest properly") {
    NodeIdGen ids;
    std::string src = "fn f(a, b) {\n  x = add(a, 1);\n  // note\n}\nf(2)";
    Tree t = parse_minilang(src, Revision::base, ids);

    for_each_node(t.root, [&](const Node& n) {
        REQUIRE(n.span.has_value());
        CHECK(n.span->start <= n.span->end);
        CHECK(n.span->end <= src.size());
        for (const Node& c : n.children) {
            REQUIRE(c.span.has_value());
            CHECK(c.span->start >= n.span->start);
            CHECK(c.span->end <= n.span->end);
        }
        for (std::size_t i = 1; i < n.children.size(); ++i) {
            CHECK(n.children[i - 1].span->end <= n.children[i].span->start);
        }
    });

    const Node& fn = child(t.root, 0);
    CHECK(src.substr(fn.span->start, fn.span->length()) ==
          "fn f(a, b) {\n  x = add(a, 1);\n  // note\n}");
    const Node& comment = child(child(fn, 2), 1);
    CHECK(comment.kind == kinds::comment);
    CHECK(comment.content == Content{"// note"});
}

TEST_CASE("minilang root span reproduces the source byte for byte") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        MiniLangGen gen(rng);
        std::string src = gen.file();
        NodeIdGen ids;
        Tree t = parse_minilang(src, Revision::base, ids);
        REQUIRE(t.root.span.has_value());
        CHECK(src.substr(t.root.span->start, t.root.span->length()) == src);

        NodeIdGen ids2;
        Tree t2 = parse_minilang(src, Revision::base, ids2);
        CHECK(same_shape(t.root, t2.root));
    }
}

TEST_CASE("node ids are unique across a session") {
    NodeIdGen ids;
    Tree a = parse_minilang("f(x); g(y)", Revision::base, ids);
    Tree b = parse_minilang("f(x); g(y)", Revision::left, ids);
    Tree c = parse_minilang("h()", Revision::right, ids);
    std::set<NodeId> seen;
    for (const Tree* t : {&a, &b, &c}) {
        for_each_node(t->root, [&](const Node& n) { CHECK(seen.insert(n.id).second); });
    }
}

TEST_CASE("child_roles partitions fn declarations") {
    NodeIdGen ids;
    Tree t = parse_minilang("fn f(a,b){x();}", Revision::base, ids);
    const Node& fn = child(t.root, 0);
    auto roles = child_roles(fn);
    REQUIRE(roles.size() == 3);
    CHECK(roles[0].role == "name");
    CHECK(roles[0].begin == roles[0].end);
    CHECK(roles[1].role == "params");
    CHECK(roles[1].end - roles[1].begin == 2);
    CHECK(roles[2].role == "body");
    CHECK(roles[2].end - roles[2].begin == 1);

    // empty roles stay listed
    Tree t2 = parse_minilang("fn g(){}", Revision::base, ids);
    auto roles2 = child_roles(child(t2.root, 0));
    REQUIRE(roles2.size() == 3);
    CHECK(roles2[1].begin == roles2[1].end);

    // single-role kinds get one anonymous group
    Tree t3 = parse_minilang("f(x,y)", Revision::base, ids);
    auto call_roles = child_roles(child(t3.root, 0));
    REQUIRE(call_roles.size() == 1);
    CHECK(call_roles[0].role.empty());
    CHECK(call_roles[0].end == 2);
}

TEST_CASE("detect_indentation") {
    CHECK(detect_indentation("fn f() {\n  a();\n  b();\n}\n") == "  ");
    CHECK(detect_indentation("fn f() {\n\tx();\n}\n") == "\t");
    CHECK(detect_indentation("f(a)") == "    ");  // undecidable: default
    CHECK(detect_indentation("") == "    ");
}

TEST_CASE("parse_tree_file reads the interchange format") {
    NodeIdGen ids;
    Tree t = parse_tree_file(R"((call "add" 0 8 (ref "a" 4 5) (ref "b" 6 7)))", Revision::base,
                             ids);
    CHECK(t.root.kind == "call");
    CHECK(t.root.content == Content{"add"});
    REQUIRE(t.root.span.has_value());
    CHECK(t.root.span->start == 0);
    CHECK(t.root.span->end == 8);
    REQUIRE(t.root.children.size() == 2);
    CHECK(t.root.children[0].content == Content{"a"});

    Tree leaf = parse_tree_file(R"((call "add" 0 8))", Revision::base, ids);
    CHECK(leaf.root.children.empty());

    Tree spanless = parse_tree_file(R"((x "" -1 -1))", Revision::base, ids);
    CHECK_FALSE(spanless.root.span.has_value());
    CHECK(spanless.root.content.empty());
}

TEST_CASE("parse_tree_file reports malformed input with a line number") {
    NodeIdGen ids;
    try {
        parse_tree_file("(call \"add\" 0 8\n  (ref \"a\" 4 5", Revision::base, ids);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_tree_file(")", Revision::base, ids), FormatError);
}

TEST_CASE("tree file escapes and multi-valued content round-trip") {
    NodeIdGen ids;
    Node n;
    n.id = ids.next();
    n.kind = "m";
    n.content = {"a\"b", "pub\\lic"};
    std::string text = write_tree_file(n);
    Tree back = parse_tree_file(text, Revision::base, ids);
    CHECK(back.root.content == n.content);
    CHECK(back.root.kind == "m");
}
