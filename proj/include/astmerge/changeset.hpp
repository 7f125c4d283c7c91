#ifndef ASTMERGE_CHANGESET_HPP
#define ASTMERGE_CHANGESET_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "astmerge/classrep.hpp"
#include "astmerge/tree.hpp"

namespace astmerge {

// Parent-predecessor-successor triple over class-representative ids.
// Natural tuple order doubles as the canonical order because the virtual
// ids sort root < list-start < list-end < everything concrete.
struct PcsKey {
    NodeId parent;
    NodeId pred;
    NodeId succ;
    auto operator<=>(const PcsKey&) const = default;
};

struct Pcs {
    PcsKey key;
    RevisionSet origins;
};

struct ContentTuple {
    NodeId node;
    Content content;
    RevisionSet origins;
};

std::string pcs_to_string(const PcsKey& key);

// Interns the per-(parent-class, role) virtual nodes that separate child
// groups of different syntactic roles. Shared by the change sets of all
// three revisions so identical role lists merge by set union.
class VirtualNodeTable {
public:
    explicit VirtualNodeTable(NodeIdGen& ids) : ids_(&ids) {}

    struct RoleListInfo {
        NodeId parent_rep;
        std::string role;
    };

    NodeId role_list(NodeId parent_rep, const std::string& role);
    const RoleListInfo* role_info(NodeId id) const;
    bool is_role_list(NodeId id) const { return info_.count(id) != 0; }

private:
    NodeIdGen* ids_;
    std::map<std::pair<NodeId, std::string>, NodeId> interned_;
    std::map<NodeId, RoleListInfo> info_;
};

// Set of PCS triples plus node contents, with the secondary indices the
// merge needs. Origins ride along and merge on union.
class ChangeSet {
public:
    void add_pcs(PcsKey key, RevisionSet origins);
    void remove_pcs(PcsKey key);
    bool contains(PcsKey key) const { return pcs_.count(key) != 0; }
    RevisionSet origins(PcsKey key) const;
    std::size_t pcs_count() const { return pcs_.size(); }
    const std::map<PcsKey, RevisionSet>& pcs() const { return pcs_; }

    void add_content(NodeId node, Content content, RevisionSet origins);
    const std::vector<ContentTuple>& contents_of(NodeId node) const;
    void set_contents_of(NodeId node, std::vector<ContentTuple> tuples);
    const std::map<NodeId, std::vector<ContentTuple>>& contents() const { return contents_; }

    const std::set<PcsKey>& with_parent(NodeId parent) const;
    const std::set<PcsKey>& with_child(NodeId child) const;

    // One PCS per line "(p,q,r) [BLR]", then one content tuple per line
    // "c(n,{...}) [BLR]"; virtual ids print as ^ < >.
    std::string dump() const;

private:
    std::map<PcsKey, RevisionSet> pcs_;
    std::map<NodeId, std::set<PcsKey>> by_parent_;
    std::map<NodeId, std::set<PcsKey>> by_child_;  // pred/succ slots, sentinels excluded
    std::map<NodeId, std::vector<ContentTuple>> contents_;
};

// Converts one revision's tree into a change set over class
// representatives, inserting role-list virtual nodes for kinds with a
// role table and wrapping the root under the virtual root.
ChangeSet to_change_set(const Tree& tree, const ClassRepMap& reps, VirtualNodeTable& virtuals);

ChangeSet union_change_sets(const ChangeSet& a, const ChangeSet& b, const ChangeSet& c);

// All triples that violate a consistency criterion together with `p`
// (two parents, predecessors or successors for one node), in canonical
// order.
std::vector<PcsKey> get_all_inconsistent_pcs(const PcsKey& p, const ChangeSet& cs);

struct Violation {
    enum class Criterion { parent, predecessor, successor, content };
    Criterion criterion;
    NodeId node;
};

// Empty iff every node has at most one parent, predecessor, successor
// and content set.
std::vector<Violation> is_consistent(const ChangeSet& cs);

}  // namespace astmerge

#endif
