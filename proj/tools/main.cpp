#include <string>

#include <CLI11.hpp>

#include "astmerge/cli.hpp"

using astmerge::cli::FrontEnd;
using astmerge::cli::MergeSessionConfig;
using astmerge::cli::Mode;
using astmerge::cli::ReplayOptions;

int main(int argc, char** argv) {
    CLI::App app{"Structured three-way merge for trees, git-merge-driver compatible"};
    app.require_subcommand(1);

    const std::map<std::string, Mode> mode_names{{"structured", Mode::structured},
                                                 {"textual", Mode::textual}};
    const std::map<std::string, FrontEnd> front_end_names{{"minilang", FrontEnd::minilang},
                                                          {"treefile", FrontEnd::treefile}};

    // merge <base> <left> <right>
    MergeSessionConfig merge_cfg;
    std::string base_path, left_path, right_path;
    CLI::App* merge = app.add_subcommand("merge", "Merge base, left and right revisions");
    merge->add_option("base", base_path, "base revision file")->required();
    merge->add_option("left", left_path, "left revision file")->required();
    merge->add_option("right", right_path, "right revision file")->required();
    merge->add_option("--out", merge_cfg.out_path, "output file (default: stdout)");
    merge->add_option("--mode", merge_cfg.mode, "structured|textual")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    merge->add_option("--front-end", merge_cfg.front_end, "minilang|treefile")
        ->transform(CLI::CheckedTransformer(front_end_names, CLI::ignore_case));
    merge->add_option("--label-left", merge_cfg.left_label, "left conflict marker label");
    merge->add_option("--label-right", merge_cfg.right_label, "right conflict marker label");
    merge->add_flag("--trace-changeset", merge_cfg.trace_changeset,
                    "dump the change-set cleanup trace to stderr");
    merge->add_flag("--dump-matchings", merge_cfg.dump_matchings,
                    "dump the pairwise matchings to stderr");
    merge->add_flag("--dump-class-reps", merge_cfg.dump_class_reps,
                    "dump the class-representatives mapping to stderr");

    // metrics <merged> <expected>
    std::string merged_path, expected_path, tool = "structured";
    CLI::App* metrics = app.add_subcommand("metrics", "Compare a merged file with the expected one");
    metrics->add_option("merged", merged_path, "merged file")->required();
    metrics->add_option("expected", expected_path, "expected file")->required();
    metrics->add_option("--tool", tool, "tool label for the report row");

    // replay <corpus>
    std::string corpus_dir;
    ReplayOptions replay_opts;
    CLI::App* replay = app.add_subcommand("replay", "Replay a corpus of merge scenarios");
    replay->add_option("corpus", corpus_dir, "corpus directory")->required();
    replay->add_option("--out", replay_opts.out_path, "report file (default: stdout)");
    replay->add_option("--mode", replay_opts.mode, "structured|textual")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    replay->add_option("--jobs", replay_opts.jobs, "parallel scenario jobs");
    replay->add_option("--timeout", replay_opts.timeout_seconds,
                       "per-scenario timeout in seconds (0 = none)");

    CLI11_PARSE(app, argc, argv);

    if (merge->parsed()) {
        return astmerge::cli::cmd_merge(base_path, left_path, right_path, merge_cfg);
    }
    if (metrics->parsed()) {
        return astmerge::cli::cmd_metrics(merged_path, expected_path, tool, std::cout);
    }
    if (replay->parsed()) {
        return astmerge::cli::cmd_replay(corpus_dir, replay_opts);
    }
    return 2;
}
