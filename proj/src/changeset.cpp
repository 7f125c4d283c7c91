#include "astmerge/changeset.hpp"

#include <algorithm>

namespace astmerge {

namespace {

std::string id_to_string(NodeId id) {
    if (id == k_virtual_root) return "^";
    if (id == k_list_start) return "<";
    if (id == k_list_end) return ">";
    return std::to_string(id.value);
}

std::string origins_to_string(RevisionSet origins) {
    std::string s = "[";
    s += origins.contains(Revision::base) ? 'B' : '.';
    s += origins.contains(Revision::left) ? 'L' : '.';
    s += origins.contains(Revision::right) ? 'R' : '.';
    s += ']';
    return s;
}

}  // namespace

std::string pcs_to_string(const PcsKey& key) {
    return "(" + id_to_string(key.parent) + "," + id_to_string(key.pred) + "," +
           id_to_string(key.succ) + ")";
}

NodeId VirtualNodeTable::role_list(NodeId parent_rep, const std::string& role) {
    auto key = std::make_pair(parent_rep, role);
    auto it = interned_.find(key);
    if (it != interned_.end()) return it->second;
    NodeId id = ids_->next();
    interned_.emplace(key, id);
    info_.emplace(id, RoleListInfo{parent_rep, role});
    return id;
}

const VirtualNodeTable::RoleListInfo* VirtualNodeTable::role_info(NodeId id) const {
    auto it = info_.find(id);
    return it == info_.end() ? nullptr : &it->second;
}

void ChangeSet::add_pcs(PcsKey key, RevisionSet origins) {
    auto [it, inserted] = pcs_.emplace(key, origins);
    if (!inserted) {
        it->second.merge(origins);
        return;
    }
    by_parent_[key.parent].insert(key);
    if (!is_list_sentinel(key.pred)) by_child_[key.pred].insert(key);
    if (!is_list_sentinel(key.succ)) by_child_[key.succ].insert(key);
}

void ChangeSet::remove_pcs(PcsKey key) {
    auto it = pcs_.find(key);
    if (it == pcs_.end()) return;
    pcs_.erase(it);
    by_parent_[key.parent].erase(key);
    if (!is_list_sentinel(key.pred)) by_child_[key.pred].erase(key);
    if (!is_list_sentinel(key.succ)) by_child_[key.succ].erase(key);
}

RevisionSet ChangeSet::origins(PcsKey key) const {
    auto it = pcs_.find(key);
    return it == pcs_.end() ? RevisionSet{} : it->second;
}

void ChangeSet::add_content(NodeId node, Content content, RevisionSet origins) {
    std::vector<ContentTuple>& tuples = contents_[node];
    for (ContentTuple& t : tuples) {
        if (t.content == content) {
            t.origins.merge(origins);
            return;
        }
    }
    tuples.push_back({node, std::move(content), origins});
}

const std::vector<ContentTuple>& ChangeSet::contents_of(NodeId node) const {
    static const std::vector<ContentTuple> empty;
    auto it = contents_.find(node);
    return it == contents_.end() ? empty : it->second;
}

void ChangeSet::set_contents_of(NodeId node, std::vector<ContentTuple> tuples) {
    if (tuples.empty()) {
        contents_.erase(node);
    } else {
        contents_[node] = std::move(tuples);
    }
}

const std::set<PcsKey>& ChangeSet::with_parent(NodeId parent) const {
    static const std::set<PcsKey> empty;
    auto it = by_parent_.find(parent);
    return it == by_parent_.end() ? empty : it->second;
}

const std::set<PcsKey>& ChangeSet::with_child(NodeId child) const {
    static const std::set<PcsKey> empty;
    auto it = by_child_.find(child);
    return it == by_child_.end() ? empty : it->second;
}

std::string ChangeSet::dump() const {
    std::string out;
    for (const auto& [key, origins] : pcs_) {
        out += pcs_to_string(key) + " " + origins_to_string(origins) + "\n";
    }
    for (const auto& [node, tuples] : contents_) {
        for (const ContentTuple& t : tuples) {
            out += "c(" + id_to_string(node) + ",{";
            for (std::size_t i = 0; i < t.content.size(); ++i) {
                if (i > 0) out += ",";
                out += t.content[i];
            }
            out += "}) " + origins_to_string(t.origins) + "\n";
        }
    }
    return out;
}

namespace {

// Emits the PCS child list for `children` under `parent_rep`.
void emit_child_list(ChangeSet& cs, NodeId parent_rep, const std::vector<NodeId>& children,
                     RevisionSet origin) {
    NodeId prev = k_list_start;
    for (NodeId child : children) {
        cs.add_pcs({parent_rep, prev, child}, origin);
        prev = child;
    }
    cs.add_pcs({parent_rep, prev, k_list_end}, origin);
}

void convert_node(ChangeSet& cs, const Node& node, const ClassRepMap& reps,
                  VirtualNodeTable& virtuals, RevisionSet origin) {
    NodeId rep = reps.rep(node.id);
    if (!node.content.empty()) cs.add_content(rep, node.content, origin);

    std::vector<RoleGroup> roles = child_roles(node);
    if (roles.size() == 1 && roles[0].role.empty()) {
        std::vector<NodeId> children;
        for (const Node& child : node.children) children.push_back(reps.rep(child.id));
        emit_child_list(cs, rep, children, origin);
    } else {
        std::vector<NodeId> role_nodes;
        for (const RoleGroup& group : roles) {
            NodeId role_id = virtuals.role_list(rep, group.role);
            role_nodes.push_back(role_id);
            std::vector<NodeId> children;
            for (std::size_t i = group.begin; i < group.end; ++i) {
                children.push_back(reps.rep(node.children[i].id));
            }
            emit_child_list(cs, role_id, children, origin);
        }
        emit_child_list(cs, rep, role_nodes, origin);
    }

    for (const Node& child : node.children) {
        convert_node(cs, child, reps, virtuals, origin);
    }
}

}  // namespace

ChangeSet to_change_set(const Tree& tree, const ClassRepMap& reps, VirtualNodeTable& virtuals) {
    ChangeSet cs;
    RevisionSet origin = RevisionSet::of(tree.revision);
    emit_child_list(cs, k_virtual_root, {reps.rep(tree.root.id)}, origin);
    convert_node(cs, tree.root, reps, virtuals, origin);
    return cs;
}

ChangeSet union_change_sets(const ChangeSet& a, const ChangeSet& b, const ChangeSet& c) {
    ChangeSet out;
    for (const ChangeSet* cs : {&a, &b, &c}) {
        for (const auto& [key, origins] : cs->pcs()) out.add_pcs(key, origins);
        for (const auto& [node, tuples] : cs->contents()) {
            for (const ContentTuple& t : tuples) out.add_content(node, t.content, t.origins);
        }
    }
    return out;
}

std::vector<PcsKey> get_all_inconsistent_pcs(const PcsKey& p, const ChangeSet& cs) {
    std::set<PcsKey> found;

    // Same parent: a shared predecessor with different successors or a
    // shared successor with different predecessors.
    for (const PcsKey& q : cs.with_parent(p.parent)) {
        if (q == p) continue;
        if ((q.pred == p.pred && q.succ != p.succ) || (q.succ == p.succ && q.pred != p.pred)) {
            found.insert(q);
        }
    }

    // Different parent claiming one of p's concrete children.
    for (NodeId child : {p.pred, p.succ}) {
        if (is_list_sentinel(child)) continue;
        for (const PcsKey& q : cs.with_child(child)) {
            if (q.parent != p.parent) found.insert(q);
        }
    }

    return std::vector<PcsKey>(found.begin(), found.end());
}

std::vector<Violation> is_consistent(const ChangeSet& cs) {
    std::vector<Violation> out;

    std::map<NodeId, std::set<NodeId>> parents_of;
    std::map<NodeId, std::set<NodeId>> succs_of;            // concrete predecessor -> successors
    std::map<NodeId, std::set<NodeId>> preds_of;            // concrete successor -> predecessors
    std::map<NodeId, std::set<NodeId>> first_in_list;       // parent -> successors of list start
    std::map<NodeId, std::set<NodeId>> last_in_list;        // parent -> predecessors of list end

    for (const auto& [key, origins] : cs.pcs()) {
        (void)origins;
        if (!is_list_sentinel(key.pred)) parents_of[key.pred].insert(key.parent);
        if (!is_list_sentinel(key.succ)) parents_of[key.succ].insert(key.parent);
        if (is_list_sentinel(key.pred)) {
            first_in_list[key.parent].insert(key.succ);
        } else {
            succs_of[key.pred].insert(key.succ);
        }
        if (is_list_sentinel(key.succ)) {
            last_in_list[key.parent].insert(key.pred);
        } else {
            preds_of[key.succ].insert(key.pred);
        }
    }

    for (const auto& [node, parents] : parents_of) {
        if (parents.size() > 1) out.push_back({Violation::Criterion::parent, node});
    }
    for (const auto& [node, succs] : succs_of) {
        if (succs.size() > 1) out.push_back({Violation::Criterion::successor, node});
    }
    for (const auto& [parent, succs] : first_in_list) {
        if (succs.size() > 1) out.push_back({Violation::Criterion::successor, parent});
    }
    for (const auto& [node, preds] : preds_of) {
        if (preds.size() > 1) out.push_back({Violation::Criterion::predecessor, node});
    }
    for (const auto& [parent, preds] : last_in_list) {
        if (preds.size() > 1) out.push_back({Violation::Criterion::predecessor, parent});
    }
    for (const auto& [node, tuples] : cs.contents()) {
        if (tuples.size() > 1) out.push_back({Violation::Criterion::content, node});
    }
    return out;
}

}  // namespace astmerge
