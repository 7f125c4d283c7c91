#ifndef ASTMERGE_MATCHING_HPP
#define ASTMERGE_MATCHING_HPP

#include <map>
#include <string>
#include <vector>

#include "astmerge/tree.hpp"

namespace astmerge {

// Symmetric, injective, kind-respecting relation between the nodes of two
// trees.
class Matching {
public:
    void add(NodeId a, NodeId b);
    bool matched(NodeId a) const { return pairs_.count(a) != 0; }
    NodeId partner(NodeId a) const;  // k_none when unmatched
    std::size_t size() const { return pairs_.size() / 2; }
    const std::map<NodeId, NodeId>& relation() const { return pairs_; }

    std::string dump() const;  // "<idA> <-> <idB>" per pair, a < b

private:
    std::map<NodeId, NodeId> pairs_;  // both directions
};

struct MatchingTriple {
    Matching base_left;
    Matching base_right;
    Matching left_right;
};

// Default matcher: exact-subtree hash matching (largest first, unique
// candidates, parent-guided disambiguation), then a bottom-up pass that
// pairs unmatched inner nodes of equal kind by matched-descendant dice
// similarity (threshold 0.5), finally pairing equal-kind roots.
Matching match_trees(const Tree& a, const Tree& b);

MatchingTriple compute_matchings(const Tree& base, const Tree& left, const Tree& right);

}  // namespace astmerge

#endif
