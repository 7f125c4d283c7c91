#include "astmerge/rebuild.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "astmerge/printer.hpp"
#include "astmerge/textmerge.hpp"

namespace astmerge {

namespace {

// Class id -> the concrete node of each revision that maps to it.
class ClassInstances {
public:
    ClassInstances(const MergeSession& session, const ClassRepMap& reps) {
        for (const Tree* tree : {&session.base, &session.left, &session.right}) {
            for_each_node(tree->root, [&](const Node& n) {
                instances_[reps.rep(n.id)][n.revision] = n.id;
            });
        }
    }

    const std::map<Revision, NodeId>* find(NodeId cls) const {
        auto it = instances_.find(cls);
        return it == instances_.end() ? nullptr : &it->second;
    }

private:
    std::map<NodeId, std::map<Revision, NodeId>> instances_;
};

std::vector<PcsKey> successors_of(const ChangeSet& cs, NodeId parent, NodeId pos) {
    std::vector<PcsKey> out;
    for (const PcsKey& key : cs.with_parent(parent)) {
        if (key.pred == pos) out.push_back(key);
    }
    return out;
}

NodeId normalize_parent(NodeId parent, const VirtualNodeTable& virtuals) {
    const VirtualNodeTable::RoleListInfo* info = virtuals.role_info(parent);
    return info ? info->parent_rep : parent;
}

}  // namespace

ChildListWalk traverse_child_list(const ChangeSet& cs, NodeId parent) {
    if (cs.with_parent(parent).empty()) {
        throw MalformedChangeSet("no child list for parent " + std::to_string(parent.value));
    }
    ChildListWalk walk;
    std::set<PcsKey> used;
    std::set<NodeId> seen;
    NodeId pos = k_list_start;
    while (true) {
        std::vector<PcsKey> next = successors_of(cs, parent, pos);
        if (next.empty()) {
            walk.disjoint = true;  // chain broke before the end sentinel
            break;
        }
        if (next.size() > 1) {
            ChildListWalk::Fork fork;
            fork.at = pos;
            for (const PcsKey& key : next) fork.successors.push_back(key.succ);
            walk.fork = std::move(fork);
            break;
        }
        used.insert(next[0]);
        NodeId succ = next[0].succ;
        if (succ == k_list_end) {
            walk.reached_end = true;
            break;
        }
        if (!seen.insert(succ).second) {
            walk.disjoint = true;  // cycle
            break;
        }
        walk.nodes.push_back(succ);
        pos = succ;
    }
    if (walk.reached_end) {
        for (const PcsKey& key : cs.with_parent(parent)) {
            if (used.count(key) == 0) {
                walk.disjoint = true;
                break;
            }
        }
    }
    return walk;
}

std::optional<DisjointInfo> detect_disjoint(const ChangeSet& cs, NodeId parent) {
    ChildListWalk walk;
    try {
        walk = traverse_child_list(cs, parent);
    } catch (const MalformedChangeSet&) {
        return std::nullopt;
    }
    if (!walk.disjoint) return std::nullopt;

    DisjointInfo info;
    info.parent = parent;
    // Leftovers: triples of this parent that a start-to-end walk cannot
    // reach.
    std::set<NodeId> reachable;
    reachable.insert(k_list_start);
    for (NodeId n : walk.nodes) reachable.insert(n);
    for (const PcsKey& key : cs.with_parent(parent)) {
        if (reachable.count(key.pred) == 0) info.leftover.push_back(key);
    }
    return info;
}

std::set<NodeId> detect_move_conflicts(const MergedChangeSet& merged) {
    std::set<NodeId> out;
    for (const HardPcsPair& pair : merged.hard_pcs) {
        if (pair.first.parent == pair.second.parent) continue;
        for (NodeId child : {pair.first.pred, pair.first.succ}) {
            if (is_list_sentinel(child)) continue;
            if (child == pair.second.pred || child == pair.second.succ) out.insert(child);
        }
    }
    return out;
}

std::optional<std::vector<MergedNode>> handle_empty_side(const MergedNode& conflict) {
    const bool left_empty = conflict.left_nodes.empty();
    const bool right_empty = conflict.right_nodes.empty();
    if (left_empty && right_empty) return std::vector<MergedNode>{};
    if (left_empty) return conflict.right_nodes;
    if (right_empty) return conflict.left_nodes;
    return std::nullopt;
}

std::optional<std::vector<MergedNode>> handle_ordering_conflict(const MergedNode& conflict) {
    auto all_declarations = [](const std::vector<MergedNode>& nodes) {
        for (const MergedNode& n : nodes) {
            if (n.type != MergedNode::Type::concrete || !is_declaration_kind(n.kind) ||
                n.content.empty()) {
                return false;
            }
        }
        return true;
    };
    if (!all_declarations(conflict.left_nodes) || !all_declarations(conflict.right_nodes)) {
        return std::nullopt;
    }
    std::vector<MergedNode> merged = conflict.left_nodes;
    merged.insert(merged.end(), conflict.right_nodes.begin(), conflict.right_nodes.end());
    std::stable_sort(merged.begin(), merged.end(), [](const MergedNode& a, const MergedNode& b) {
        return a.content.front() < b.content.front();
    });
    return merged;
}

namespace {

class TreeBuilder {
public:
    TreeBuilder(const MergeSession& session, const ClassRepMap& reps, MergedChangeSet& merged,
                const PrintConfig& print, std::set<NodeId> forced_fallback)
        : session_(session),
          reps_(reps),
          merged_(merged),
          print_(print),
          forced_fallback_(std::move(forced_fallback)),
          instances_(session, reps),
          pair_used_(merged.hard_pcs.size(), false),
          content_used_(merged.hard_content.size(), false) {}

    MergedNode build_root() {
        auto children = build_children_of(k_virtual_root);
        if (!children || children->size() != 1) return fallback_node(k_virtual_root);
        return std::move(children->front());
    }

    // Hard inconsistencies not explained by any conflict artifact.
    std::size_t unaccounted() const {
        std::set<NodeId> coverage = fallback_coverage();
        std::size_t count = 0;
        for (std::size_t i = 0; i < merged_.hard_pcs.size(); ++i) {
            if (pair_used_[i]) continue;
            if (!pair_covered(merged_.hard_pcs[i], coverage)) ++count;
        }
        for (std::size_t i = 0; i < merged_.hard_content.size(); ++i) {
            if (content_used_[i]) continue;
            NodeId node = merged_.hard_content[i].node;
            if (coverage.count(node) != 0) continue;
            if (merged_.cs.contents_of(node).size() <= 1) continue;  // swept or resolved
            ++count;
        }
        return count;
    }

private:
    const MergeSession& session_;
    const ClassRepMap& reps_;
    MergedChangeSet& merged_;
    const PrintConfig& print_;
    std::set<NodeId> forced_fallback_;
    ClassInstances instances_;
    std::vector<char> pair_used_;
    std::vector<char> content_used_;
    std::set<NodeId> fallback_classes_;

    const ChangeSet& cs() const { return merged_.cs; }

    void mark_pair(const PcsKey& a, const PcsKey& b) {
        for (std::size_t i = 0; i < merged_.hard_pcs.size(); ++i) {
            const HardPcsPair& pair = merged_.hard_pcs[i];
            if ((pair.first == a && pair.second == b) || (pair.first == b && pair.second == a)) {
                pair_used_[i] = true;
            }
        }
    }

    void mark_content(NodeId node) {
        for (std::size_t i = 0; i < merged_.hard_content.size(); ++i) {
            if (merged_.hard_content[i].node == node) content_used_[i] = true;
        }
    }

    bool pair_covered(const HardPcsPair& pair, const std::set<NodeId>& coverage) const {
        NodeId p1 = normalize_parent(pair.first.parent, session_.virtuals);
        NodeId p2 = normalize_parent(pair.second.parent, session_.virtuals);
        return coverage.count(p1) != 0 || coverage.count(p2) != 0;
    }

    // Every class replaced by a textual fallback, plus all classes inside
    // the replaced subtrees.
    std::set<NodeId> fallback_coverage() const {
        std::set<NodeId> out;
        for (NodeId cls : fallback_classes_) {
            out.insert(cls);
            const auto* inst = instances_.find(cls);
            if (!inst) continue;
            for (const auto& [rev, id] : *inst) {
                const Node* node = session_.index.find(id);
                if (!node) continue;
                for_each_node(*node, [&](const Node& n) { out.insert(reps_.rep(n.id)); });
            }
        }
        if (fallback_classes_.count(k_virtual_root) != 0) {
            for (const Tree* tree : {&session_.base, &session_.left, &session_.right}) {
                for_each_node(tree->root, [&](const Node& n) { out.insert(reps_.rep(n.id)); });
            }
        }
        return out;
    }

    struct ForkPath {
        std::vector<NodeId> nodes;  // concrete nodes, end sentinel excluded
        std::vector<PcsKey> keys;   // traversed triples, start edge included
        bool complete = false;      // reached the end sentinel
    };

    ForkPath follow_path(NodeId parent, const PcsKey& start) {
        ForkPath path;
        path.keys.push_back(start);
        std::set<NodeId> guard;
        NodeId cur = start.succ;
        while (true) {
            if (cur == k_list_end) {
                path.complete = true;
                return path;
            }
            if (!guard.insert(cur).second) return path;  // cycle
            path.nodes.push_back(cur);
            std::vector<PcsKey> next = successors_of(cs(), parent, cur);
            if (next.size() != 1) return path;  // dead end or nested fork
            path.keys.push_back(next[0]);
            cur = next[0].succ;
        }
    }

    struct ForkResolution {
        std::vector<NodeId> left_nodes;
        std::vector<NodeId> right_nodes;
        NodeId rejoin;  // concrete node or list end
        std::vector<PcsKey> used_keys;
    };

    std::optional<ForkResolution> resolve_fork(NodeId parent,
                                               const std::vector<PcsKey>& candidates) {
        if (candidates.size() != 2) return std::nullopt;

        const PcsKey* left_start = nullptr;
        const PcsKey* right_start = nullptr;
        for (const PcsKey& key : candidates) {
            RevisionSet origins = cs().origins(key);
            if (origins.contains(Revision::base)) return std::nullopt;
            if (origins.contains(Revision::left)) left_start = &key;
            if (origins.contains(Revision::right)) right_start = &key;
        }
        if (!left_start || !right_start || left_start == right_start) return std::nullopt;

        ForkPath left_path = follow_path(parent, *left_start);
        ForkPath right_path = follow_path(parent, *right_start);

        std::set<NodeId> right_set(right_path.nodes.begin(), right_path.nodes.end());
        NodeId rejoin = k_none;
        for (NodeId n : left_path.nodes) {
            if (right_set.count(n) != 0) {
                rejoin = n;
                break;
            }
        }
        if (rejoin == k_none) {
            if (!left_path.complete || !right_path.complete) return std::nullopt;
            rejoin = k_list_end;
        }

        auto cut = [&](const ForkPath& path) {
            std::pair<std::vector<NodeId>, std::vector<PcsKey>> out;
            for (std::size_t i = 0; i < path.nodes.size() && path.nodes[i] != rejoin; ++i) {
                out.first.push_back(path.nodes[i]);
            }
            // keys[i] is the edge into nodes[i]; keep edges up to and
            // including the one entering the rejoin point.
            out.second.assign(path.keys.begin(),
                              path.keys.begin() +
                                  static_cast<std::ptrdiff_t>(out.first.size() + 1));
            return out;
        };
        auto [left_nodes, left_keys] = cut(left_path);
        auto [right_nodes, right_keys] = cut(right_path);

        ForkResolution res;
        res.left_nodes = std::move(left_nodes);
        res.right_nodes = std::move(right_nodes);
        res.rejoin = rejoin;
        res.used_keys = left_keys;
        res.used_keys.insert(res.used_keys.end(), right_keys.begin(), right_keys.end());

        mark_pair(*left_start, *right_start);
        mark_pair(left_keys.back(), right_keys.back());
        return res;
    }

    // nullopt means the failure must be handled by the nearest concrete
    // ancestor (disjoint list, unresolvable fork, cycle).
    std::optional<std::vector<MergedNode>> build_children_of(NodeId parent) {
        if (cs().with_parent(parent).empty()) {
            // A swept or never-present child list: no children.
            return std::vector<MergedNode>{};
        }
        std::vector<MergedNode> out;
        std::set<PcsKey> used;
        std::set<NodeId> seen;
        NodeId pos = k_list_start;
        bool done = false;
        while (!done) {
            std::vector<PcsKey> next = successors_of(cs(), parent, pos);
            if (next.empty()) return std::nullopt;  // broken chain
            if (next.size() == 1) {
                used.insert(next[0]);
                NodeId succ = next[0].succ;
                if (succ == k_list_end) {
                    done = true;
                    break;
                }
                if (!seen.insert(succ).second) return std::nullopt;  // cycle
                if (!append_entry(out, succ)) return std::nullopt;
                pos = succ;
                continue;
            }
            auto fork = resolve_fork(parent, next);
            if (!fork) return std::nullopt;
            for (const PcsKey& key : fork->used_keys) used.insert(key);

            MergedNode conflict;
            conflict.type = MergedNode::Type::structural_conflict;
            for (NodeId n : fork->left_nodes) {
                seen.insert(n);
                conflict.left_nodes.push_back(build_class_node(n));
            }
            for (NodeId n : fork->right_nodes) {
                seen.insert(n);
                conflict.right_nodes.push_back(build_class_node(n));
            }
            out.push_back(std::move(conflict));

            if (fork->rejoin == k_list_end) {
                done = true;
                break;
            }
            if (!seen.insert(fork->rejoin).second) return std::nullopt;
            if (!append_entry(out, fork->rejoin)) return std::nullopt;
            pos = fork->rejoin;
        }
        for (const PcsKey& key : cs().with_parent(parent)) {
            if (used.count(key) == 0) return std::nullopt;  // disjoint leftovers
        }
        return out;
    }

    // Appends the entry for `id` to `out`: role lists are flattened into
    // the parent's child list, concrete classes become nodes. Returns
    // false when a role list below failed and the concrete ancestor has
    // to fall back.
    bool append_entry(std::vector<MergedNode>& out, NodeId id) {
        if (session_.virtuals.is_role_list(id)) {
            auto spliced = build_children_of(id);
            if (!spliced) return false;
            for (MergedNode& n : *spliced) out.push_back(std::move(n));
            return true;
        }
        out.push_back(build_class_node(id));
        return true;
    }

    MergedNode build_class_node(NodeId cls) {
        if (forced_fallback_.count(cls) != 0) return fallback_node(cls);

        const std::vector<ContentTuple>& tuples = cs().contents_of(cls);
        Content content;
        if (tuples.size() == 1) {
            content = tuples[0].content;
        } else if (tuples.size() > 1) {
            std::optional<Content> resolved = resolve_content_conflict(tuples);
            if (!resolved) return fallback_node(cls);
            mark_content(cls);
            content = std::move(*resolved);
        }

        auto children = build_children_of(cls);
        if (!children) return fallback_node(cls);

        MergedNode node;
        node.type = MergedNode::Type::concrete;
        node.rep = cls;
        node.content = std::move(content);
        node.children = std::move(*children);
        if (const auto* inst = instances_.find(cls)) {
            node.instances = *inst;
            node.kind = session_.index.at(inst->begin()->second).kind;
        }
        return node;
    }

    // Generic content conflict handlers: equal values collapse, a value
    // set containing the other wins. nullopt falls back to a textual
    // conflict at the node.
    std::optional<Content> resolve_content_conflict(const std::vector<ContentTuple>& tuples) {
        if (tuples.size() != 2) return std::nullopt;
        const Content& a = tuples[0].content;
        const Content& b = tuples[1].content;
        if (a == b) return a;
        if (std::includes(a.begin(), a.end(), b.begin(), b.end())) return a;
        if (std::includes(b.begin(), b.end(), a.begin(), a.end())) return b;
        return std::nullopt;
    }

    MergedNode fallback_node(NodeId cls) {
        fallback_classes_.insert(cls);
        mark_content(cls);

        auto revision_text = [&](Revision rev) -> std::string {
            if (cls == k_virtual_root) return session_.source(rev);
            const auto* inst = instances_.find(cls);
            if (!inst) return "";
            auto it = inst->find(rev);
            if (it == inst->end()) return "";
            const Node* node = session_.index.find(it->second);
            if (!node) return "";
            if (node->span) return print_subtree(*node, session_.source(rev));
            return render_source_node(*node, print_);
        };

        LineMergeResult merged = diff3_merge_text(
            revision_text(Revision::base), revision_text(Revision::left),
            revision_text(Revision::right));

        MergedNode node;
        node.type = MergedNode::Type::textual_conflict;
        node.text = merged.render(print_.left_label, print_.right_label,
                                  std::max<std::size_t>(print_.marker_len, 7));
        return node;
    }
};

void apply_structural_handlers(MergedNode& node) {
    for (MergedNode& child : node.children) apply_structural_handlers(child);

    std::vector<MergedNode> new_children;
    for (MergedNode& child : node.children) {
        if (child.type != MergedNode::Type::structural_conflict) {
            new_children.push_back(std::move(child));
            continue;
        }
        std::optional<std::vector<MergedNode>> resolution = handle_empty_side(child);
        if (!resolution) resolution = handle_ordering_conflict(child);
        if (resolution) {
            for (MergedNode& n : *resolution) new_children.push_back(std::move(n));
        } else {
            new_children.push_back(std::move(child));
        }
    }
    node.children = std::move(new_children);
}

Node clone_node(const Node& src) {
    Node out;
    out.id = src.id;
    out.kind = src.kind;
    out.content = src.content;
    out.span = src.span;
    out.revision = src.revision;
    for (const Node& child : src.children) out.children.push_back(clone_node(child));
    return out;
}

struct DuplicatePair {
    MergedNode* parent = nullptr;
    std::size_t first = 0;
    std::size_t second = 0;
};

std::optional<DuplicatePair> find_duplicate_members(MergedNode& root) {
    std::optional<DuplicatePair> found;
    std::function<void(MergedNode&)> walk = [&](MergedNode& node) {
        if (found || node.type != MergedNode::Type::concrete) return;
        for (std::size_t i = 0; i < node.children.size() && !found; ++i) {
            const MergedNode& a = node.children[i];
            if (a.type != MergedNode::Type::concrete || !is_declaration_kind(a.kind) ||
                a.content.empty()) {
                continue;
            }
            for (std::size_t j = i + 1; j < node.children.size(); ++j) {
                const MergedNode& b = node.children[j];
                if (b.type != MergedNode::Type::concrete || b.kind != a.kind ||
                    b.content != a.content || b.rep == a.rep) {
                    continue;
                }
                found = DuplicatePair{&node, i, j};
                break;
            }
        }
        for (MergedNode& child : node.children) walk(child);
    };
    walk(root);
    return found;
}

}  // namespace

std::size_t count_structural_conflicts(const MergedNode& node) {
    std::size_t n = node.type == MergedNode::Type::structural_conflict ? 1 : 0;
    for (const MergedNode& child : node.children) n += count_structural_conflicts(child);
    for (const MergedNode& side : node.left_nodes) n += count_structural_conflicts(side);
    for (const MergedNode& side : node.right_nodes) n += count_structural_conflicts(side);
    return n;
}

namespace {

// Re-merges a duplicated named member pair two-way (an empty node of the
// same kind acts as the base revision) and splices the result over the
// left original; the right original is deleted.
bool eliminate_one_duplicate(MergedNode& root, MergeSession& session,
                             const PipelineOptions& opts, std::size_t& extra_unaccounted) {
    std::optional<DuplicatePair> dup = find_duplicate_members(root);
    if (!dup) return false;

    MergedNode& a = dup->parent->children[dup->first];
    MergedNode& b = dup->parent->children[dup->second];

    const MergedNode* left_member = nullptr;
    const MergedNode* right_member = nullptr;
    for (const MergedNode* m : {&a, &b}) {
        if (!left_member && m->instances.count(Revision::left)) left_member = m;
    }
    for (const MergedNode* m : {&b, &a}) {
        if (m != left_member && m->instances.count(Revision::right)) right_member = m;
    }
    if (!left_member || !right_member) return false;

    const Node* left_src = session.index.find(left_member->instances.at(Revision::left));
    const Node* right_src = session.index.find(right_member->instances.at(Revision::right));
    if (!left_src || !right_src) return false;

    Node empty_base;
    empty_base.id = session.ids->next();
    empty_base.kind = left_src->kind;
    empty_base.revision = Revision::base;

    MergeSession sub(*session.ids, Tree(std::move(empty_base), "", Revision::base),
                     Tree(clone_node(*left_src), session.source(Revision::left), Revision::left),
                     Tree(clone_node(*right_src), session.source(Revision::right),
                          Revision::right));

    PipelineOptions sub_opts = opts;
    sub_opts.eliminate_duplicates = false;
    PipelineResult sub_result = run_pipeline(sub, sub_opts);
    extra_unaccounted += sub_result.unaccounted_hard;

    dup->parent->children[dup->first] = std::move(sub_result.tree.root);
    dup->parent->children.erase(dup->parent->children.begin() +
                                static_cast<std::ptrdiff_t>(dup->second));
    return true;
}

}  // namespace

PipelineResult run_pipeline(MergeSession& session, const PipelineOptions& opts) {
    PipelineResult result;
    result.matchings = compute_matchings(session.base, session.left, session.right);
    result.reps = build_class_reps(session.base, session.left, session.right, result.matchings);

    std::set<NodeId> forced_fallback;
    while (true) {
        result.merged = merge_change_sets(session.base, session.left, session.right, result.reps,
                                          session.virtuals);
        std::set<NodeId> moves = detect_move_conflicts(result.merged);
        if (moves.empty()) break;
        if (result.restarts >= opts.max_restarts) {
            // Out of restarts: degrade to the local fallback at the
            // conflicting parents.
            for (const HardPcsPair& pair : result.merged.hard_pcs) {
                if (pair.first.parent == pair.second.parent) continue;
                forced_fallback.insert(normalize_parent(pair.first.parent, session.virtuals));
                forced_fallback.insert(normalize_parent(pair.second.parent, session.virtuals));
            }
            break;
        }
        result.reps = self_map_subtrees(result.reps, moves, session.base, session.left,
                                        session.right);
        ++result.restarts;
    }

    TreeBuilder builder(session, result.reps, result.merged, opts.print, forced_fallback);
    result.tree.root = builder.build_root();
    apply_structural_handlers(result.tree.root);

    std::size_t extra_unaccounted = 0;
    if (opts.eliminate_duplicates) {
        for (int guard = 0; guard < 32; ++guard) {
            if (!eliminate_one_duplicate(result.tree.root, session, opts, extra_unaccounted)) {
                break;
            }
        }
    }

    result.unaccounted_hard = builder.unaccounted() + extra_unaccounted;
    return result;
}

}  // namespace astmerge
