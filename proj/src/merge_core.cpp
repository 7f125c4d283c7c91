#include "astmerge/merge_core.hpp"

#include <algorithm>
#include <cassert>

namespace astmerge {

namespace {

// Loop order: child-list reading order by (pred, succ, parent), with the
// list start before any concrete node and the list end after all of
// them. This is the order in which the cleanup visits triples.
struct IterationLess {
    static int position_class(NodeId id) {
        if (id == k_list_start) return 0;
        if (id == k_list_end) return 2;
        return 1;
    }
    static std::pair<int, std::int64_t> rank(NodeId id) {
        return {position_class(id), id.value};
    }
    bool operator()(const PcsKey& a, const PcsKey& b) const {
        auto ta = std::make_tuple(rank(a.pred), rank(a.succ), a.parent);
        auto tb = std::make_tuple(rank(b.pred), rank(b.succ), b.parent);
        return ta < tb;
    }
};

bool in_base(const ChangeSet& cs, const PcsKey& key) {
    return cs.origins(key).contains(Revision::base);
}

HardPcsPair make_pair_sorted(const PcsKey& a, const PcsKey& b) {
    return a <= b ? HardPcsPair{a, b} : HardPcsPair{b, a};
}

// Drops child lists whose parent is no longer referenced as a child
// anywhere, cascading until stable, along with the contents of dropped
// nodes. Keeps the result equal to the surviving revisions' change sets
// when one side absorbs the other.
void sweep_unreachable(ChangeSet& cs) {
    while (true) {
        std::set<NodeId> referenced;
        referenced.insert(k_virtual_root);
        for (const auto& [key, origins] : cs.pcs()) {
            (void)origins;
            if (!is_list_sentinel(key.pred)) referenced.insert(key.pred);
            if (!is_list_sentinel(key.succ)) referenced.insert(key.succ);
        }
        std::vector<PcsKey> dead;
        for (const auto& [key, origins] : cs.pcs()) {
            (void)origins;
            if (referenced.count(key.parent) == 0) dead.push_back(key);
        }
        if (dead.empty()) {
            std::vector<NodeId> dead_contents;
            for (const auto& [node, tuples] : cs.contents()) {
                (void)tuples;
                if (referenced.count(node) == 0) dead_contents.push_back(node);
            }
            for (NodeId node : dead_contents) cs.set_contents_of(node, {});
            return;
        }
        for (const PcsKey& key : dead) cs.remove_pcs(key);
    }
}

}  // namespace

bool MergedChangeSet::has_hard_pcs(const PcsKey& a, const PcsKey& b) const {
    HardPcsPair pair = make_pair_sorted(a, b);
    return std::find(hard_pcs.begin(), hard_pcs.end(), pair) != hard_pcs.end();
}

bool MergedChangeSet::node_has_hard_content(NodeId node) const {
    for (const HardContent& hc : hard_content) {
        if (hc.node == node) return true;
    }
    return false;
}

void remove_soft_pcs_inconsistencies(const PcsKey& p, ChangeSet& cs, MergedChangeSet& out) {
    std::vector<PcsKey> inconsistencies = get_all_inconsistent_pcs(p, cs);
    if (inconsistencies.empty()) return;

    TraceRow row;
    row.input = p;
    row.inconsistencies = inconsistencies;

    if (in_base(cs, p)) {
        // Removing the base-revision triple resolves every inconsistency
        // it participates in.
        cs.remove_pcs(p);
        row.removals.push_back(p);
        out.trace.push_back(std::move(row));
        return;
    }

    for (const PcsKey& other : inconsistencies) {
        if (in_base(cs, other)) {
            cs.remove_pcs(other);
            row.removals.push_back(other);
        } else {
            HardPcsPair pair = make_pair_sorted(p, other);
            if (std::find(out.hard_pcs.begin(), out.hard_pcs.end(), pair) == out.hard_pcs.end()) {
                out.hard_pcs.push_back(pair);
                row.hard.push_back(other);
            }
        }
    }
    if (!row.removals.empty() || !row.hard.empty()) out.trace.push_back(std::move(row));
}

void remove_soft_content_inconsistencies(NodeId node, ChangeSet& cs, MergedChangeSet& out) {
    const std::vector<ContentTuple>& tuples = cs.contents_of(node);
    if (tuples.size() <= 1) return;

    std::vector<ContentTuple> non_base;
    for (const ContentTuple& t : tuples) {
        if (!t.origins.contains(Revision::base)) non_base.push_back(t);
    }
    assert(!non_base.empty());
    cs.set_contents_of(node, non_base);

    if (non_base.size() > 1 && !out.node_has_hard_content(node)) {
        // A three-way merge leaves exactly one left and one right tuple.
        assert(non_base.size() == 2);
        const ContentTuple* left = &non_base[0];
        const ContentTuple* right = &non_base[1];
        if (!left->origins.contains(Revision::left)) std::swap(left, right);
        out.hard_content.push_back({node, *left, *right});
    }
}

namespace {

void handle_content(const PcsKey& p, ChangeSet& cs, MergedChangeSet& out) {
    for (NodeId node : {p.parent, p.pred, p.succ}) {
        if (node == k_virtual_root || is_list_sentinel(node)) continue;
        remove_soft_content_inconsistencies(node, cs, out);
    }
}

}  // namespace

MergedChangeSet merge_change_sets(const Tree& base, const Tree& left, const Tree& right,
                                  const ClassRepMap& reps, VirtualNodeTable& virtuals) {
    ChangeSet base_cs = to_change_set(base, reps, virtuals);
    ChangeSet left_cs = to_change_set(left, reps, virtuals);
    ChangeSet right_cs = to_change_set(right, reps, virtuals);

    MergedChangeSet out;
    out.cs = union_change_sets(base_cs, left_cs, right_cs);

    std::vector<PcsKey> snapshot;
    snapshot.reserve(out.cs.pcs_count());
    for (const auto& [key, origins] : out.cs.pcs()) {
        (void)origins;
        snapshot.push_back(key);
    }
    std::sort(snapshot.begin(), snapshot.end(), IterationLess{});

    for (const PcsKey& key : snapshot) {
        if (!out.cs.contains(key)) continue;  // removed by an earlier step
        remove_soft_pcs_inconsistencies(key, out.cs, out);
        if (!out.cs.contains(key)) continue;
        handle_content(key, out.cs, out);
    }

    sweep_unreachable(out.cs);
    std::sort(out.hard_pcs.begin(), out.hard_pcs.end());
    return out;
}

}  // namespace astmerge
