#ifndef ASTMERGE_CLASSREP_HPP
#define ASTMERGE_CLASSREP_HPP

#include <map>
#include <set>
#include <string>

#include "astmerge/matching.hpp"
#include "astmerge/tree.hpp"

namespace astmerge {

// Total map from every node of every revision to its class
// representative. Base nodes map to themselves; the map is idempotent and
// directional.
class ClassRepMap {
public:
    NodeId rep(NodeId id) const {
        auto it = map_.find(id);
        return it == map_.end() ? id : it->second;
    }
    void set(NodeId id, NodeId rep) { map_[id] = rep; }

    // Members of a representative's class, the representative included.
    std::set<NodeId> class_members(NodeId rep) const;

    std::string dump() const;  // "<id> -> <rep-id>" lines

    const std::map<NodeId, NodeId>& raw() const { return map_; }

private:
    std::map<NodeId, NodeId> map_;
};

// Builds the mapping: base nodes self-mapped, left nodes to their base
// match, right nodes to their base match or to an admissible left/right
// match. Left/right admission is scanned top-down over the left tree and
// requires that neither endpoint is mapped to base and that both parents
// share a representative.
ClassRepMap build_class_reps(const Tree& base, const Tree& left, const Tree& right,
                             const MatchingTriple& matchings);

// Returns a copy of reps where every node of every revision's subtree of
// each given class is mapped to itself. Used to restart the merge after
// an inter-parent move conflict.
ClassRepMap self_map_subtrees(const ClassRepMap& reps, const std::set<NodeId>& conflict_classes,
                              const Tree& base, const Tree& left, const Tree& right);

}  // namespace astmerge

#endif
