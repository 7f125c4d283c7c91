#ifndef ASTMERGE_CLI_HPP
#define ASTMERGE_CLI_HPP

#include <iosfwd>
#include <string>

namespace astmerge::cli {

enum class FrontEnd { minilang, treefile };
enum class Mode { structured, textual };

struct MergeSessionConfig {
    FrontEnd front_end = FrontEnd::minilang;
    Mode mode = Mode::structured;
    std::string left_label = "LEFT";
    std::string right_label = "RIGHT";
    std::string out_path;  // empty writes to stdout
    bool trace_changeset = false;
    bool dump_matchings = false;   // "<idA> <-> <idB>" lines on stderr
    bool dump_class_reps = false;  // "<id> -> <rep-id>" lines on stderr
};

// Exit codes follow merge-driver conventions: 0 conflict-free, 1 the
// merge contains conflicts, 2 and up errors.
int cmd_merge(const std::string& base_path, const std::string& left_path,
              const std::string& right_path, const MergeSessionConfig& cfg);

int cmd_metrics(const std::string& merged_path, const std::string& expected_path,
                const std::string& tool, std::ostream& out);

struct ReplayOptions {
    Mode mode = Mode::structured;
    int jobs = 1;
    double timeout_seconds = 0;  // 0 disables the timeout category
    std::string out_path;        // empty writes to stdout
};

// Runs every scenario directory ({base,left,right,expected}.<ext>) under
// corpus_dir, emits one metrics row per scenario plus total and median
// summary rows. Per-scenario failures become rows, never abort the run.
int cmd_replay(const std::string& corpus_dir, const ReplayOptions& options);

}  // namespace astmerge::cli

#endif
