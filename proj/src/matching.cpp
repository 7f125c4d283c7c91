#include "astmerge/matching.hpp"

#include <algorithm>
#include <functional>

namespace astmerge {

void Matching::add(NodeId a, NodeId b) {
    pairs_[a] = b;
    pairs_[b] = a;
}

NodeId Matching::partner(NodeId a) const {
    auto it = pairs_.find(a);
    return it == pairs_.end() ? k_none : it->second;
}

std::string Matching::dump() const {
    std::string out;
    for (const auto& [a, b] : pairs_) {
        if (a < b) {
            out += std::to_string(a.value) + " <-> " + std::to_string(b.value) + "\n";
        }
    }
    return out;
}

namespace {

struct NodeRec {
    const Node* node = nullptr;
    std::size_t hash = 0;       // structural hash over (kind, content, children)
    std::size_t size = 0;       // subtree size
    std::size_t pre = 0;        // pre-order position within its tree
    std::size_t subtree_end = 0;  // pre of first node after the subtree
};

class Side {
public:
    explicit Side(const Tree& tree) { collect(tree.root); }

    const std::vector<NodeRec>& recs() const { return recs_; }
    const NodeRec& rec(NodeId id) const { return recs_[index_.at(id)]; }
    bool contains(NodeId id) const { return index_.count(id) != 0; }

    // ids of every node in pre-order
    std::vector<NodeId> preorder() const {
        std::vector<NodeId> out;
        out.reserve(recs_.size());
        for (const NodeRec& r : recs_) out.push_back(r.node->id);
        return out;
    }

    bool in_subtree(NodeId descendant, const NodeRec& root) const {
        const NodeRec& d = rec(descendant);
        return d.pre > root.pre && d.pre < root.subtree_end;
    }

private:
    std::vector<NodeRec> recs_;
    std::map<NodeId, std::size_t> index_;

    // Mixing combiner; a plain xor fold cancels systematically on
    // repeated equal subtrees.
    static std::size_t combine(std::size_t h, std::size_t v) {
        return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 12) + (h >> 4));
    }

    std::size_t collect(const Node& n) {
        std::size_t my_index = recs_.size();
        recs_.push_back({&n, 0, 1, my_index, 0});
        index_[n.id] = my_index;

        std::size_t h = std::hash<std::string>{}(n.kind);
        for (const std::string& val : n.content) {
            h = combine(h, std::hash<std::string>{}(val));
        }
        h = combine(h, n.children.size());
        std::size_t sz = 1;
        for (const Node& child : n.children) {
            std::size_t ci = collect(child);
            h = combine(h, recs_[ci].hash);
            sz += recs_[ci].size;
        }
        recs_[my_index].hash = h;
        recs_[my_index].size = sz;
        recs_[my_index].subtree_end = my_index + sz;
        return my_index;
    }
};

class Matcher {
public:
    Matcher(const Tree& a, const Tree& b) : a_(a), b_(b) {}

    Matching run() {
        match_unique_hashes();
        disambiguate_under_matched_parents();
        match_similar_containers();
        match_roots();
        return std::move(result_);
    }

private:
    Side a_;
    Side b_;
    Matching result_;

    bool matched(NodeId id) const { return result_.matched(id); }

    // Locks an isomorphic subtree pair, matching descendants positionally.
    void lock_subtrees(const Node& x, const Node& y) {
        if (matched(x.id) || matched(y.id)) return;
        if (x.kind != y.kind || x.children.size() != y.children.size()) return;  // hash collision
        result_.add(x.id, y.id);
        for (std::size_t i = 0; i < x.children.size(); ++i) {
            lock_subtrees(x.children[i], y.children[i]);
        }
    }

    void match_unique_hashes() {
        std::map<std::size_t, std::vector<NodeId>> by_hash_a;
        std::map<std::size_t, std::vector<NodeId>> by_hash_b;
        for (const NodeRec& r : a_.recs()) by_hash_a[r.hash].push_back(r.node->id);
        for (const NodeRec& r : b_.recs()) by_hash_b[r.hash].push_back(r.node->id);

        // Largest subtrees first, pre-order for ties.
        std::vector<NodeId> order = a_.preorder();
        std::stable_sort(order.begin(), order.end(), [&](NodeId lhs, NodeId rhs) {
            return a_.rec(lhs).size > a_.rec(rhs).size;
        });

        for (NodeId id : order) {
            if (matched(id)) continue;
            const NodeRec& ra = a_.rec(id);
            auto itb = by_hash_b.find(ra.hash);
            if (itb == by_hash_b.end()) continue;
            const std::vector<NodeId>& cand_a = by_hash_a[ra.hash];
            std::vector<NodeId> free_a, free_b;
            for (NodeId c : cand_a)
                if (!matched(c)) free_a.push_back(c);
            for (NodeId c : itb->second)
                if (!matched(c)) free_b.push_back(c);
            if (free_a.size() == 1 && free_b.size() == 1) {
                lock_subtrees(*a_.rec(free_a[0]).node, *b_.rec(free_b[0]).node);
            }
        }
    }

    // For children of already-matched parents, equal-hash groups are
    // paired positionally. Repeats top-down so matches propagate.
    void disambiguate_under_matched_parents() {
        for (const NodeRec& ra : a_.recs()) {
            NodeId partner = result_.partner(ra.node->id);
            if (partner == k_none || !b_.contains(partner)) continue;
            const Node* pb = b_.rec(partner).node;

            std::map<std::size_t, std::vector<const Node*>> group_a;
            std::map<std::size_t, std::vector<const Node*>> group_b;
            for (const Node& child : ra.node->children) {
                if (!matched(child.id)) group_a[a_.rec(child.id).hash].push_back(&child);
            }
            for (const Node& child : pb->children) {
                if (!matched(child.id)) group_b[b_.rec(child.id).hash].push_back(&child);
            }
            for (auto& [hash, as] : group_a) {
                auto itb = group_b.find(hash);
                if (itb == group_b.end()) continue;
                std::size_t n = std::min(as.size(), itb->second.size());
                for (std::size_t i = 0; i < n; ++i) {
                    lock_subtrees(*as[i], *itb->second[i]);
                }
            }
        }
    }

    double dice(const NodeRec& ra, const NodeRec& rb) const {
        std::size_t desc_a = ra.size - 1;
        std::size_t desc_b = rb.size - 1;
        if (desc_a + desc_b == 0) return 0.0;
        std::size_t common = 0;
        for (std::size_t i = ra.pre + 1; i < ra.subtree_end; ++i) {
            NodeId partner = result_.partner(a_.recs()[i].node->id);
            if (partner != k_none && b_.contains(partner) && b_.in_subtree(partner, rb)) {
                ++common;
            }
        }
        return 2.0 * static_cast<double>(common) /
               static_cast<double>(desc_a + desc_b);
    }

    void match_similar_containers() {
        // Bottom-up over a: reverse pre-order visits children before parents.
        const auto& recs = a_.recs();
        for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
            const NodeRec& ra = *it;
            if (ra.node->is_leaf() || matched(ra.node->id)) continue;

            const NodeRec* best = nullptr;
            double best_dice = 0.0;
            for (const NodeRec& rb : b_.recs()) {
                if (rb.node->is_leaf() || matched(rb.node->id)) continue;
                if (rb.node->kind != ra.node->kind) continue;
                double d = dice(ra, rb);
                if (d >= 0.5 && (best == nullptr || d > best_dice)) {
                    best = &rb;
                    best_dice = d;
                }
            }
            if (best) result_.add(ra.node->id, best->node->id);
        }
    }

    void match_roots() {
        const Node* root_a = a_.recs().front().node;
        const Node* root_b = b_.recs().front().node;
        if (!matched(root_a->id) && !matched(root_b->id) && root_a->kind == root_b->kind) {
            result_.add(root_a->id, root_b->id);
        }
    }
};

}  // namespace

Matching match_trees(const Tree& a, const Tree& b) { return Matcher(a, b).run(); }

MatchingTriple compute_matchings(const Tree& base, const Tree& left, const Tree& right) {
    MatchingTriple triple;
    triple.base_left = match_trees(base, left);
    triple.base_right = match_trees(base, right);
    triple.left_right = match_trees(left, right);
    return triple;
}

}  // namespace astmerge
