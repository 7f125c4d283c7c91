#include "astmerge/classrep.hpp"

#include <functional>

namespace astmerge {

std::set<NodeId> ClassRepMap::class_members(NodeId rep_id) const {
    std::set<NodeId> members;
    members.insert(rep_id);
    for (const auto& [id, r] : map_) {
        if (r == rep_id) members.insert(id);
    }
    return members;
}

std::string ClassRepMap::dump() const {
    std::string out;
    for (const auto& [id, r] : map_) {
        out += std::to_string(id.value) + " -> " + std::to_string(r.value) + "\n";
    }
    return out;
}

namespace {

// Parent lookup that treats a root's parent as the shared virtual root,
// making the parents-agree rule uniform at the top.
NodeId parent_or_virtual_root(const NodeIndex& index, const Tree& tree, NodeId id) {
    if (tree.root.id == id) return k_virtual_root;
    const Node* p = index.parent_of(id);
    return p ? p->id : k_virtual_root;
}

}  // namespace

ClassRepMap build_class_reps(const Tree& base, const Tree& left, const Tree& right,
                             const MatchingTriple& matchings) {
    ClassRepMap reps;

    std::set<NodeId> base_ids;
    for_each_node(base.root, [&](const Node& n) {
        base_ids.insert(n.id);
        reps.set(n.id, n.id);
    });

    for_each_node(left.root, [&](const Node& n) {
        NodeId m = matchings.base_left.partner(n.id);
        reps.set(n.id, m != k_none ? m : n.id);
    });

    for_each_node(right.root, [&](const Node& n) {
        NodeId m = matchings.base_right.partner(n.id);
        reps.set(n.id, m != k_none ? m : n.id);
    });

    // Admit left/right matches top-down over the left tree: subtrees
    // become mappable once their parents share a representative.
    NodeIndex left_index;
    left_index.add_tree(left);
    NodeIndex right_index;
    right_index.add_tree(right);

    for_each_node(left.root, [&](const Node& ln) {
        NodeId rn = matchings.left_right.partner(ln.id);
        if (rn == k_none) return;
        if (base_ids.count(reps.rep(ln.id)) != 0) return;  // left endpoint mapped to base
        if (base_ids.count(reps.rep(rn)) != 0) return;     // right endpoint mapped to base
        NodeId lp = parent_or_virtual_root(left_index, left, ln.id);
        NodeId rp = parent_or_virtual_root(right_index, right, rn);
        if (reps.rep(lp) != reps.rep(rp)) return;
        reps.set(rn, ln.id);
    });

    return reps;
}

ClassRepMap self_map_subtrees(const ClassRepMap& reps, const std::set<NodeId>& conflict_classes,
                              const Tree& base, const Tree& left, const Tree& right) {
    ClassRepMap out = reps;
    if (conflict_classes.empty()) return out;

    auto sweep = [&](const Tree& tree) {
        // Self-map entire subtrees rooted at any member of a conflicting
        // class, in every revision that has such a member.
        std::function<void(const Node&, bool)> walk = [&](const Node& n, bool inside) {
            bool here = inside || conflict_classes.count(reps.rep(n.id)) != 0;
            if (here) out.set(n.id, n.id);
            for (const Node& child : n.children) walk(child, here);
        };
        walk(tree.root, false);
    };
    sweep(base);
    sweep(left);
    sweep(right);
    return out;
}

}  // namespace astmerge
