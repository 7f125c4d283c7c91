#ifndef ASTMERGE_MERGE_CORE_HPP
#define ASTMERGE_MERGE_CORE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "astmerge/changeset.hpp"

namespace astmerge {

// Unordered pair of mutually inconsistent non-base triples.
struct HardPcsPair {
    PcsKey first;   // first <= second in canonical order
    PcsKey second;
    auto operator<=>(const HardPcsPair&) const = default;
};

struct HardContent {
    NodeId node;
    ContentTuple left;
    ContentTuple right;
};

// One effective invocation of the soft-inconsistency removal: the input
// triple, everything found inconsistent with it, what was removed, and
// which hard partners were newly registered.
struct TraceRow {
    PcsKey input;
    std::vector<PcsKey> inconsistencies;
    std::vector<PcsKey> removals;
    std::vector<PcsKey> hard;
};

struct MergedChangeSet {
    ChangeSet cs;
    std::vector<HardPcsPair> hard_pcs;
    std::vector<HardContent> hard_content;
    std::vector<TraceRow> trace;

    bool has_hard_pcs(const PcsKey& a, const PcsKey& b) const;
    bool node_has_hard_content(NodeId node) const;
};

// The merge loop: converts the three trees to change sets over the class
// representatives, unions them, then removes soft inconsistencies and
// registers hard ones, processing content alongside structure. Conflicts
// are data in the result, not errors.
MergedChangeSet merge_change_sets(const Tree& base, const Tree& left, const Tree& right,
                                  const ClassRepMap& reps, VirtualNodeTable& virtuals);

// Exposed for tests: one invocation of the removal step on `p`.
void remove_soft_pcs_inconsistencies(const PcsKey& p, ChangeSet& cs, MergedChangeSet& out);

// Exposed for tests: drops base-origin content of `node` when multiple
// tuples exist; registers a hard content inconsistency if more than one
// non-base tuple remains.
void remove_soft_content_inconsistencies(NodeId node, ChangeSet& cs, MergedChangeSet& out);

}  // namespace astmerge

#endif
