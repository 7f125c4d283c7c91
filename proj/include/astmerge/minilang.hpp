#ifndef ASTMERGE_MINILANG_HPP
#define ASTMERGE_MINILANG_HPP

#include <stdexcept>
#include <string>

#include "astmerge/tree.hpp"

namespace astmerge {

struct ParseError : std::runtime_error {
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : std::runtime_error(std::move(msg)), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

// Parses MiniLang source into a tree. Every node carries a span covering
// its exact source extent; comments become leaf nodes in the child list
// they appear in.
Tree parse_minilang(std::string source, Revision revision, NodeIdGen& ids);

// Unit of indentation, e.g. "    " or "\t".
using IndentationStyle = std::string;

// Most frequent leading-whitespace increment between consecutive nested
// lines; four spaces when the source gives no signal.
IndentationStyle detect_indentation(std::string_view source);

}  // namespace astmerge

#endif
