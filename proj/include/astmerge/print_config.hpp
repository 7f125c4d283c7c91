#ifndef ASTMERGE_PRINT_CONFIG_HPP
#define ASTMERGE_PRINT_CONFIG_HPP

#include <string>

namespace astmerge {

struct PrintConfig {
    std::string left_label = "LEFT";
    std::string right_label = "RIGHT";
    std::size_t marker_len = 7;  // clamped to at least 7
    std::string indent = "    ";
};

}  // namespace astmerge

#endif
