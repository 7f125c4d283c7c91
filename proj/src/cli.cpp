#include "astmerge/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "astmerge/metrics.hpp"
#include "astmerge/minilang.hpp"
#include "astmerge/printer.hpp"
#include "astmerge/rebuild.hpp"
#include "astmerge/textmerge.hpp"
#include "astmerge/treefile.hpp"

namespace astmerge::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

Tree parse_front_end(FrontEnd front_end, std::string source, Revision revision, NodeIdGen& ids) {
    if (front_end == FrontEnd::treefile) return parse_tree_file(std::move(source), revision, ids);
    return parse_minilang(std::move(source), revision, ids);
}

struct MergeOutcome {
    std::string text;
    std::size_t hunks = 0;
};

struct DebugDumps {
    std::vector<TraceRow>* trace = nullptr;
    std::string* matchings = nullptr;
    std::string* class_reps = nullptr;
};

MergeOutcome run_merge(FrontEnd front_end, Mode mode, std::string base_src, std::string left_src,
                       std::string right_src, const std::string& left_label,
                       const std::string& right_label, const DebugDumps& dumps = {}) {
    MergeOutcome outcome;
    if (mode == Mode::textual) {
        LineMergeResult merged = diff3_merge_text(base_src, left_src, right_src);
        outcome.text = merged.render(left_label, right_label);
        outcome.hunks = scan_conflicts(outcome.text).hunks;
        return outcome;
    }

    NodeIdGen ids;
    PrintConfig print_cfg;
    print_cfg.left_label = left_label;
    print_cfg.right_label = right_label;
    print_cfg.indent = detect_indentation(base_src);

    Tree base = parse_front_end(front_end, std::move(base_src), Revision::base, ids);
    Tree left = parse_front_end(front_end, std::move(left_src), Revision::left, ids);
    Tree right = parse_front_end(front_end, std::move(right_src), Revision::right, ids);
    MergeSession session(ids, std::move(base), std::move(left), std::move(right));

    PipelineOptions opts;
    opts.print = print_cfg;
    PipelineResult result = run_pipeline(session, opts);
    if (dumps.trace) *dumps.trace = result.merged.trace;
    if (dumps.matchings) {
        *dumps.matchings = result.matchings.base_left.dump() +
                           result.matchings.base_right.dump() +
                           result.matchings.left_right.dump();
    }
    if (dumps.class_reps) *dumps.class_reps = result.reps.dump();

    outcome.text = print(result.tree, session, print_cfg);
    outcome.hunks = scan_conflicts(outcome.text).hunks;
    return outcome;
}

std::string format_trace_row(const TraceRow& row) {
    auto list = [](const std::vector<PcsKey>& keys) {
        std::string out;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (i > 0) out += ",";
            out += pcs_to_string(keys[i]);
        }
        return out.empty() ? "-" : out;
    };
    return pcs_to_string(row.input) + " | " + list(row.inconsistencies) + " | " +
           list(row.removals) + " | " + list(row.hard);
}

FrontEnd front_end_for_extension(const std::string& ext) {
    return ext == ".tree" ? FrontEnd::treefile : FrontEnd::minilang;
}

struct ReplayRow {
    std::string name;
    std::string tool;
    std::optional<MergeMetrics> metrics;
    std::string status;
};

std::string format_row(const ReplayRow& row) {
    std::string out = row.name + "," + row.tool + ",";
    if (row.metrics) {
        out += std::to_string(row.metrics->conflict_hunks) + "," +
               std::to_string(row.metrics->conflicting_lines) + "," +
               std::to_string(row.metrics->line_diff) + "," +
               std::to_string(row.metrics->char_diff);
    } else {
        out += ",,,";
    }
    out += "," + row.status;
    return out;
}

std::size_t median_of(std::vector<std::size_t> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

}  // namespace

int cmd_merge(const std::string& base_path, const std::string& left_path,
              const std::string& right_path, const MergeSessionConfig& cfg) {
    try {
        std::string base_src = read_file(base_path);
        std::string left_src = read_file(left_path);
        std::string right_src = read_file(right_path);

        std::vector<TraceRow> trace;
        std::string matchings_dump, reps_dump;
        DebugDumps dumps;
        if (cfg.trace_changeset) dumps.trace = &trace;
        if (cfg.dump_matchings) dumps.matchings = &matchings_dump;
        if (cfg.dump_class_reps) dumps.class_reps = &reps_dump;

        MergeOutcome outcome =
            run_merge(cfg.front_end, cfg.mode, std::move(base_src), std::move(left_src),
                      std::move(right_src), cfg.left_label, cfg.right_label, dumps);
        if (cfg.dump_matchings) std::cerr << matchings_dump;
        if (cfg.dump_class_reps) std::cerr << reps_dump;
        if (cfg.trace_changeset) {
            for (const TraceRow& row : trace) std::cerr << format_trace_row(row) << "\n";
        }
        write_output(cfg.out_path, outcome.text);
        return outcome.hunks > 0 ? 1 : 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.line << ":" << e.column << ": " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "format error at line " << e.line << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_metrics(const std::string& merged_path, const std::string& expected_path,
                const std::string& tool, std::ostream& out) {
    try {
        std::string merged = read_file(merged_path);
        std::string expected = read_file(expected_path);
        MergeMetrics m = compute_metrics(merged, expected);
        out << "file,tool,hunks,conflict_lines,line_diff,char_diff\n";
        out << merged_path << "," << tool << "," << m.conflict_hunks << ","
            << m.conflicting_lines << "," << m.line_diff << "," << m.char_diff << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_replay(const std::string& corpus_dir, const ReplayOptions& options) {
    struct Scenario {
        std::string name;
        fs::path base, left, right, expected;
        FrontEnd front_end = FrontEnd::minilang;
    };

    std::vector<Scenario> scenarios;
    try {
        for (const fs::directory_entry& entry : fs::directory_iterator(corpus_dir)) {
            if (!entry.is_directory()) continue;
            Scenario sc;
            sc.name = entry.path().filename().string();
            for (const char* ext : {".mini", ".tree", ".txt"}) {
                fs::path base = entry.path() / (std::string("base") + ext);
                if (!fs::exists(base)) continue;
                sc.base = base;
                sc.left = entry.path() / (std::string("left") + ext);
                sc.right = entry.path() / (std::string("right") + ext);
                sc.expected = entry.path() / (std::string("expected") + ext);
                sc.front_end = front_end_for_extension(ext);
                break;
            }
            if (sc.base.empty()) continue;
            scenarios.push_back(std::move(sc));
        }
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::sort(scenarios.begin(), scenarios.end(),
              [](const Scenario& a, const Scenario& b) { return a.name < b.name; });

    const std::string tool = options.mode == Mode::textual ? "textual" : "structured";
    std::vector<ReplayRow> rows(scenarios.size());

    auto run_one = [&](std::size_t i) {
        const Scenario& sc = scenarios[i];
        ReplayRow& row = rows[i];
        row.name = sc.name;
        row.tool = tool;
        auto started = std::chrono::steady_clock::now();
        try {
            MergeOutcome outcome = run_merge(
                sc.front_end, options.mode, read_file(sc.base.string()),
                read_file(sc.left.string()), read_file(sc.right.string()), "LEFT", "RIGHT");
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count();
            if (options.timeout_seconds > 0 && elapsed > options.timeout_seconds) {
                row.status = "timeout";
                return;
            }
            std::string expected = read_file(sc.expected.string());
            if (outcome.text.empty() && !expected.empty()) {
                row.status = "empty";
                return;
            }
            row.metrics = compute_metrics(outcome.text, expected);
            row.status = "ok";
        } catch (const std::exception&) {
            row.status = "crash";
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < scenarios.size(); ++i) run_one(i);
    } else {
        std::vector<std::future<void>> futures;
        for (int j = 0; j < jobs; ++j) {
            futures.push_back(std::async(std::launch::async, [&, j] {
                for (std::size_t i = static_cast<std::size_t>(j); i < scenarios.size();
                     i += static_cast<std::size_t>(jobs)) {
                    run_one(i);
                }
            }));
        }
        for (std::future<void>& f : futures) f.get();
    }

    std::string report = "file,tool,hunks,conflict_lines,line_diff,char_diff,status\n";
    std::vector<std::size_t> hunks, conflict_lines, line_diffs, char_diffs;
    MergeMetrics totals;
    for (const ReplayRow& row : rows) {
        report += format_row(row) + "\n";
        if (!row.metrics) continue;
        totals.conflict_hunks += row.metrics->conflict_hunks;
        totals.conflicting_lines += row.metrics->conflicting_lines;
        totals.line_diff += row.metrics->line_diff;
        totals.char_diff += row.metrics->char_diff;
        hunks.push_back(row.metrics->conflict_hunks);
        conflict_lines.push_back(row.metrics->conflicting_lines);
        line_diffs.push_back(row.metrics->line_diff);
        char_diffs.push_back(row.metrics->char_diff);
    }
    report += "total," + tool + "," + std::to_string(totals.conflict_hunks) + "," +
              std::to_string(totals.conflicting_lines) + "," + std::to_string(totals.line_diff) +
              "," + std::to_string(totals.char_diff) + ",\n";
    report += "median," + tool + "," + std::to_string(median_of(hunks)) + "," +
              std::to_string(median_of(conflict_lines)) + "," +
              std::to_string(median_of(line_diffs)) + "," + std::to_string(median_of(char_diffs)) +
              ",\n";

    try {
        write_output(options.out_path, report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace astmerge::cli
