#ifndef ASTMERGE_PRINTER_HPP
#define ASTMERGE_PRINTER_HPP

#include <stdexcept>
#include <string>

#include "astmerge/print_config.hpp"
#include "astmerge/rebuild.hpp"
#include "astmerge/session.hpp"

namespace astmerge {

struct MissingSpan : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact source slice of one node. Throws MissingSpan for synthetic nodes.
std::string print_subtree(const Node& node, const std::string& source);

// Default rendering of a plain source node (used when spans are absent).
std::string render_source_node(const Node& node, const PrintConfig& cfg, std::size_t depth = 0);

// Renders a merged tree: verbatim source reuse for subtrees that stem
// from a single revision, fixed per-kind templates otherwise, and
// marker-delimited hunks for conflict nodes.
std::string print(const MergedTree& tree, const MergeSession& session, const PrintConfig& cfg);

// True when the merged subtree is structurally identical to `revision`'s
// original subtree (same kinds, contents, order, instance for instance).
bool matches_revision(const MergedNode& node, Revision revision, const NodeIndex& index);

}  // namespace astmerge

#endif
