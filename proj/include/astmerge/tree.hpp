#ifndef ASTMERGE_TREE_HPP
#define ASTMERGE_TREE_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace astmerge {

// Identity of a node. Unique across all trees of one merge session,
// including the shared virtual nodes.
struct NodeId {
    std::int64_t value = 0;
    auto operator<=>(const NodeId&) const = default;
};

// Fixed ids for the session-wide virtual nodes. Concrete nodes and
// role-list nodes are allocated from kFirstAllocated upward, so the
// ordering root < list_start < list_end < everything-else holds by id.
inline constexpr NodeId k_none{0};
inline constexpr NodeId k_virtual_root{1};
inline constexpr NodeId k_list_start{2};
inline constexpr NodeId k_list_end{3};
inline constexpr std::int64_t k_first_allocated = 4;

inline bool is_list_sentinel(NodeId id) { return id == k_list_start || id == k_list_end; }
inline bool is_fixed_virtual(NodeId id) {
    return id == k_virtual_root || is_list_sentinel(id);
}

enum class Revision : unsigned char { base = 0, left = 1, right = 2 };

std::string_view revision_name(Revision r);

// Small set of revision tags, used for PCS/content origin tracking.
struct RevisionSet {
    unsigned char bits = 0;

    static RevisionSet of(Revision r) { return RevisionSet{static_cast<unsigned char>(1u << static_cast<unsigned>(r))}; }
    bool contains(Revision r) const { return bits & (1u << static_cast<unsigned>(r)); }
    void add(Revision r) { bits |= 1u << static_cast<unsigned>(r); }
    void merge(RevisionSet other) { bits |= other.bits; }
    bool empty() const { return bits == 0; }
    auto operator<=>(const RevisionSet&) const = default;
};

// Byte range [start, end) into one revision's source text.
struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t length() const { return end - start; }
    auto operator<=>(const SourceSpan&) const = default;
};

// Node categories are open-ended strings so external front ends can carry
// their own vocabularies through the interchange format. The MiniLang
// front end uses the constants below.
using Kind = std::string;

namespace kinds {
inline constexpr std::string_view program = "program";
inline constexpr std::string_view fn = "fn";
inline constexpr std::string_view param = "param";
inline constexpr std::string_view block = "block";
inline constexpr std::string_view call = "call";
inline constexpr std::string_view assign = "assign";
inline constexpr std::string_view uop = "uop";
inline constexpr std::string_view ref = "ref";
inline constexpr std::string_view int_lit = "int";
inline constexpr std::string_view comment = "comment";
}  // namespace kinds

// The non-structural data of a node, kept as a sorted set of values.
using Content = std::vector<std::string>;

struct Node {
    NodeId id;
    Kind kind;
    Content content;                 // empty for nodes without content
    std::vector<Node> children;      // order is significant
    std::optional<SourceSpan> span;
    Revision revision = Revision::base;

    bool is_leaf() const { return children.empty(); }
};

// One parsed revision. Move-only: copying would duplicate NodeIds.
struct Tree {
    Node root;
    std::string source;
    Revision revision = Revision::base;

    Tree() = default;
    Tree(Node r, std::string src, Revision rev)
        : root(std::move(r)), source(std::move(src)), revision(rev) {}
    Tree(const Tree&) = delete;
    Tree& operator=(const Tree&) = delete;
    Tree(Tree&&) = default;
    Tree& operator=(Tree&&) = default;
};

// Session-scoped NodeId allocator.
class NodeIdGen {
public:
    NodeId next() { return NodeId{counter_++}; }

private:
    std::int64_t counter_ = k_first_allocated;
};

// A contiguous slice of a node's child list belonging to one syntactic role.
struct RoleGroup {
    std::string role;       // empty for the single anonymous role
    std::size_t begin = 0;  // child index range [begin, end)
    std::size_t end = 0;
};

// Partition of a node's child list into role groups. Kinds with a role
// table list every role even when it holds no children; all other kinds
// get one anonymous group covering the whole list.
std::vector<RoleGroup> child_roles(const Node& node);

// Declarations whose sibling order carries no meaning (named members).
bool is_declaration_kind(const Kind& kind);

// Lookup from NodeId to node across the trees of a session.
class NodeIndex {
public:
    void add_tree(const Tree& tree);
    const Node* find(NodeId id) const;
    const Node& at(NodeId id) const;
    const Node* parent_of(NodeId id) const;

private:
    std::map<NodeId, const Node*> nodes_;
    std::map<NodeId, NodeId> parents_;
    void add_node(const Node& node, NodeId parent);
};

// Pre-order walk helper used all over the code base.
template <typename F>
void for_each_node(const Node& node, F&& fn) {
    fn(node);
    for (const Node& child : node.children) for_each_node(child, fn);
}

std::size_t subtree_size(const Node& node);

// Structural equality ignoring ids, spans and revision tags.
bool same_shape(const Node& a, const Node& b);

}  // namespace astmerge

#endif
