#ifndef ASTMERGE_SESSION_HPP
#define ASTMERGE_SESSION_HPP

#include "astmerge/changeset.hpp"
#include "astmerge/tree.hpp"

namespace astmerge {

// One merge session: the three revision trees plus the shared id
// allocator, node index and role-list registry. Sub-merges (duplicate
// member elimination) build their own session over the same allocator.
struct MergeSession {
    NodeIdGen* ids;
    Tree base;
    Tree left;
    Tree right;
    VirtualNodeTable virtuals;
    NodeIndex index;

    MergeSession(NodeIdGen& gen, Tree b, Tree l, Tree r)
        : ids(&gen),
          base(std::move(b)),
          left(std::move(l)),
          right(std::move(r)),
          virtuals(gen) {
        index.add_tree(base);
        index.add_tree(left);
        index.add_tree(right);
    }

    const Tree& tree(Revision r) const {
        switch (r) {
            case Revision::left: return left;
            case Revision::right: return right;
            default: return base;
        }
    }
    const std::string& source(Revision r) const { return tree(r).source; }
};

}  // namespace astmerge

#endif
