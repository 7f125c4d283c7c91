#include "astmerge/tree.hpp"

namespace astmerge {

std::string_view revision_name(Revision r) {
    switch (r) {
        case Revision::base: return "base";
        case Revision::left: return "left";
        case Revision::right: return "right";
    }
    return "?";
}

bool is_declaration_kind(const Kind& kind) { return kind == kinds::fn; }

std::vector<RoleGroup> child_roles(const Node& node) {
    std::vector<RoleGroup> groups;
    if (node.kind == kinds::fn) {
        // fn: name (no child nodes), params, body. Every role is listed
        // even when empty so that the interposed virtual nodes exist in
        // all revisions.
        std::size_t params_end = 0;
        while (params_end < node.children.size() &&
               node.children[params_end].kind == kinds::param) {
            ++params_end;
        }
        groups.push_back({"name", 0, 0});
        groups.push_back({"params", 0, params_end});
        groups.push_back({"body", params_end, node.children.size()});
        return groups;
    }
    groups.push_back({"", 0, node.children.size()});
    return groups;
}

void NodeIndex::add_tree(const Tree& tree) { add_node(tree.root, k_none); }

void NodeIndex::add_node(const Node& node, NodeId parent) {
    nodes_.emplace(node.id, &node);
    parents_.emplace(node.id, parent);
    for (const Node& child : node.children) add_node(child, node.id);
}

const Node* NodeIndex::find(NodeId id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : it->second;
}

const Node& NodeIndex::at(NodeId id) const {
    const Node* n = find(id);
    if (!n) throw std::logic_error("NodeIndex: unknown node id");
    return *n;
}

const Node* NodeIndex::parent_of(NodeId id) const {
    auto it = parents_.find(id);
    if (it == parents_.end() || it->second == k_none) return nullptr;
    return find(it->second);
}

std::size_t subtree_size(const Node& node) {
    std::size_t n = 1;
    for (const Node& child : node.children) n += subtree_size(child);
    return n;
}

bool same_shape(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.content != b.content) return false;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!same_shape(a.children[i], b.children[i])) return false;
    }
    return true;
}

}  // namespace astmerge
