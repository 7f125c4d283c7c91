#ifndef ASTMERGE_TREEFILE_HPP
#define ASTMERGE_TREEFILE_HPP

#include <stdexcept>
#include <string>

#include "astmerge/tree.hpp"

namespace astmerge {

struct FormatError : std::runtime_error {
    FormatError(std::string msg, std::size_t line)
        : std::runtime_error(std::move(msg)), line(line) {}
    std::size_t line;
};

// Reads the textual tree-interchange format:
//   (<kind> "<content>" <start> <end> <child>*)
// Content "" is the empty set; multiple values are joined by \x1F;
// offsets -1 -1 mean no span; \" and \\ escape inside content.
Tree parse_tree_file(std::string source, Revision revision, NodeIdGen& ids);

// Serializes a tree back to the interchange format (one line, nested).
std::string write_tree_file(const Node& root);

}  // namespace astmerge

#endif
