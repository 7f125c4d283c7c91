// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "astmerge/metrics.hpp"
#include "astmerge/printer.hpp"
#include "astmerge/rebuild.hpp"
#include "astmerge/textmerge.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace astmerge;
using namespace astmerge::tests;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct MergedExample {
    RunningExample ex;
    ClassRepMap reps;
    MergedChangeSet merged;

    MergedExample() {
        MatchingTriple m =
            compute_matchings(ex.session->base, ex.session->left, ex.session->right);
        reps = build_class_reps(ex.session->base, ex.session->left, ex.session->right, m);
        merged = merge_change_sets(ex.session->base, ex.session->left, ex.session->right, reps,
                                   ex.session->virtuals);
    }
};

struct ConvertedSets {
    RunningExample ex;
    ClassRepMap reps;
    ChangeSet base_cs, left_cs, right_cs;

    ConvertedSets() {
        MatchingTriple m =
            compute_matchings(ex.session->base, ex.session->left, ex.session->right);
        reps = build_class_reps(ex.session->base, ex.session->left, ex.session->right, m);
        base_cs = to_change_set(ex.session->base, reps, ex.session->virtuals);
        left_cs = to_change_set(ex.session->left, reps, ex.session->virtuals);
        right_cs = to_change_set(ex.session->right, reps, ex.session->virtuals);
    }
};

bool merged_same_shape(const MergedNode& m, const Node& n) {
    if (m.type != MergedNode::Type::concrete) return false;
    if (m.kind != n.kind || m.content != n.content) return false;
    if (m.children.size() != n.children.size()) return false;
    for (std::size_t i = 0; i < m.children.size(); ++i) {
        if (!merged_same_shape(m.children[i], n.children[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------- 1
void criterion_change_set_golden(Check& c) {
    ConvertedSets s;
    c.expect(keys_of(s.base_cs) == expected_base_row(s.ex), "base row mismatch");
    c.expect(keys_of(s.left_cs) == expected_left_row(s.ex), "left row mismatch");
    c.expect(keys_of(s.right_cs) == expected_right_row(s.ex), "right row mismatch");

    ChangeSet raw = union_change_sets(s.base_cs, s.left_cs, s.right_cs);
    c.expect(raw.pcs_count() == 17, "raw merge must hold 17 triples");
    c.expect(keys_of(raw) == expected_raw_merge_row(s.ex), "raw merge row mismatch");

    MergedExample m;
    c.expect(keys_of(m.merged.cs) == expected_merge_row(m.ex), "merge row mismatch");
    c.expect(m.merged.hard_pcs.size() == 2, "exactly two hard pairs expected");
    c.expect(m.merged.has_hard_pcs(m.ex.pcs("01", "03", "15"), m.ex.pcs("01", "03", "25")),
             "missing successor hard pair");
    c.expect(m.merged.has_hard_pcs(m.ex.pcs("01", "15", ">"), m.ex.pcs("01", "25", ">")),
             "missing predecessor hard pair");
}

// ---------------------------------------------------------------- 2
void criterion_class_rep_golden(Check& c) {
    RunningExample ex;
    MatchingTriple m = compute_matchings(ex.session->base, ex.session->left, ex.session->right);
    ClassRepMap reps = build_class_reps(ex.session->base, ex.session->left, ex.session->right, m);
    for (const auto& [node, rep] : expected_class_reps()) {
        c.expect(reps.rep(ex.id(node)) == ex.id(rep),
                 node + " should map to " + rep + ", got " +
                     ex.label_of(reps.rep(ex.id(node))));
    }
}

// ---------------------------------------------------------------- 3
void criterion_dry_run_golden(Check& c) {
    MergedExample m;
    const auto& trace = m.merged.trace;
    c.expect(trace.size() == 4, "expected exactly four effective invocations, got " +
                                    std::to_string(trace.size()));
    if (trace.size() != 4) return;

    auto expect_row = [&](int i, const PcsKey& input, std::vector<PcsKey> inconsistencies,
                          std::vector<PcsKey> removals, std::vector<PcsKey> hard) {
        const TraceRow& row = trace[static_cast<std::size_t>(i)];
        std::string tag = "row " + std::to_string(i + 1);
        c.expect(row.input == input, tag + " input mismatch");
        c.expect(row.inconsistencies == inconsistencies, tag + " inconsistencies mismatch");
        c.expect(row.removals == removals, tag + " removals mismatch");
        c.expect(row.hard == hard, tag + " hard registrations mismatch");
    };
    const RunningExample& ex = m.ex;
    expect_row(0, ex.pcs("01", "<", "02"),
               {ex.pcs("01", "<", "12"), ex.pcs("12", "<", "02"), ex.pcs("12", "02", ">")},
               {ex.pcs("01", "<", "02")}, {});
    expect_row(1, ex.pcs("12", "<", "02"), {ex.pcs("01", "02", "03")},
               {ex.pcs("01", "02", "03")}, {});
    expect_row(2, ex.pcs("01", "03", "15"),
               {ex.pcs("01", "03", ">"), ex.pcs("01", "03", "25")}, {ex.pcs("01", "03", ">")},
               {ex.pcs("01", "03", "25")});
    expect_row(3, ex.pcs("01", "15", ">"), {ex.pcs("01", "25", ">")}, {},
               {ex.pcs("01", "25", ">")});
}

// ---------------------------------------------------------------- 4
void criterion_content_golden(Check& c) {
    MergedExample m;
    std::map<std::string, Content> expected{{"01", {"sum"}}, {"02", {"a"}}, {"03", {"b"}},
                                            {"12", {"-"}},   {"15", {"1"}}, {"25", {"c"}}};
    std::size_t tuples = 0;
    for (const auto& [node, list] : m.merged.cs.contents()) {
        for (const ContentTuple& t : list) {
            ++tuples;
            std::string label = m.ex.label_of(node);
            auto it = expected.find(label);
            c.expect(it != expected.end(), "unexpected content tuple at " + label);
            if (it != expected.end()) {
                c.expect(t.content == it->second, "content mismatch at " + label);
            }
        }
    }
    c.expect(tuples == expected.size(), "expected six content tuples");
    c.expect(m.merged.hard_content.empty(), "no hard content expected");
}

// ---------------------------------------------------------------- 5
void criterion_end_to_end(Check& c) {
    MiniMerge m(k_mini_base, k_mini_left, k_mini_right);
    const std::string expected =
        "sum(-a, b,\n"
        "<<<<<<< LEFT\n"
        "1\n"
        "=======\n"
        "c\n"
        ">>>>>>> RIGHT\n"
        ")\n";
    c.expect(m.output == expected, "merged output mismatch:\n" + m.output);
    ConflictScan scan = scan_conflicts(m.output);
    c.expect(scan.hunks == 1, "one conflict hunk expected");
    c.expect(scan.conflicting_lines == 2, "two conflicting lines expected");
}

// ---------------------------------------------------------------- 6
void criterion_local_fallback(Check& c) {
    MiniMerge structured(k_fallback_base, k_fallback_left, k_fallback_right);
    const std::string expected_structured =
        "abs(\n"
        "<<<<<<< LEFT\n"
        "sum(a)\n"
        "=======\n"
        "sum(b)\n"
        ">>>>>>> RIGHT\n"
        ")\n";
    c.expect(structured.output == expected_structured,
             "structured fallback mismatch:\n" + structured.output);

    LineMergeResult textual =
        diff3_merge_text(k_fallback_base, k_fallback_left, k_fallback_right);
    const std::string expected_textual =
        "<<<<<<< LEFT\n"
        "abs(sum(a))\n"
        "=======\n"
        "abs(sum(b))\n"
        ">>>>>>> RIGHT\n";
    c.expect(textual.render("LEFT", "RIGHT") == expected_textual,
             "textual fallback mismatch:\n" + textual.render("LEFT", "RIGHT"));
}

// ---------------------------------------------------------------- 7
void criterion_formatting_preservation(Check& c) {
    Rng rng(20260808);
    for (int i = 0; i < 200 && c.ok; ++i) {
        MiniLangGen gen(rng);
        std::string src = gen.file();
        MiniMerge m(src, src, src);
        c.expect(m.output == src, "merge(f,f,f) not byte-identical at seed case " +
                                      std::to_string(i) + "\n--- source:\n" + src +
                                      "--- output:\n" + m.output);
    }

    Rng edit_rng(5150);
    for (int i = 0; i < 200 && c.ok; ++i) {
        MiniLangGen gen(edit_rng);
        std::string base_src = gen.file();
        NodeIdGen probe_ids;
        Tree base_probe = parse_minilang(base_src, Revision::base, probe_ids);
        EditResult edit = random_edit(base_probe, edit_rng);

        bool left_edits = edit_rng.chance(50);
        MiniMerge m(base_src, left_edits ? edit.source : base_src,
                    left_edits ? base_src : edit.source);

        for (std::size_t item = 0; item < base_probe.root.children.size(); ++item) {
            if (item == edit.edited_item) continue;
            const Node& decl = base_probe.root.children[item];
            std::string bytes = base_src.substr(decl.span->start, decl.span->length());
            c.expect(m.output.find(bytes) != std::string::npos,
                     "unedited declaration lost its bytes at case " + std::to_string(i) +
                         ":\n" + bytes + "\n--- output:\n" + m.output);
        }
    }
}

// ---------------------------------------------------------------- 8
void criterion_one_sided_absorption(Check& c) {
    Rng rng(314159);
    for (int i = 0; i < 200 && c.ok; ++i) {
        MiniLangGen gen(rng);
        std::string base_src = gen.file();
        NodeIdGen probe_ids;
        Tree base_probe = parse_minilang(base_src, Revision::base, probe_ids);
        EditResult edit = random_edit(base_probe, rng);
        bool left_edits = rng.chance(50);

        MiniMerge m(base_src, left_edits ? edit.source : base_src,
                    left_edits ? base_src : edit.source);
        c.expect(scan_conflicts(m.output).hunks == 0,
                 "one-sided edit produced conflicts at case " + std::to_string(i) +
                     "\n--- base:\n" + base_src + "--- edited:\n" + edit.source +
                     "--- output:\n" + m.output);
        if (!c.ok) break;

        NodeIdGen out_ids;
        Tree out_tree = parse_minilang(m.output, Revision::base, out_ids);
        Tree edited_tree = parse_minilang(edit.source, Revision::left, out_ids);
        c.expect(same_shape(out_tree.root, edited_tree.root),
                 "output not isomorphic to the edited side at case " + std::to_string(i) +
                     "\n--- edited:\n" + edit.source + "--- output:\n" + m.output);
    }
}

// ---------------------------------------------------------------- 9
void criterion_oracle_equivalence(Check& c) {
    // rebuild . to_change_set identity over every tree with up to six
    // nodes on a two-kind alphabet
    std::vector<TreeShape> shapes;
    for (int n = 1; n <= 6; ++n) enumerate_shapes(n, shapes);
    c.expect(shapes.size() == 3238, "enumeration should yield 3238 trees, got " +
                                        std::to_string(shapes.size()));
    for (const TreeShape& shape : shapes) {
        NodeIdGen ids;
        Tree base(materialize(shape, ids, Revision::base), "", Revision::base);
        Tree left(materialize(shape, ids, Revision::left), "", Revision::left);
        Tree right(materialize(shape, ids, Revision::right), "", Revision::right);
        MergeSession session(ids, std::move(base), std::move(left), std::move(right));
        PipelineResult r = run_pipeline(session);
        if (!merged_same_shape(r.tree.root, session.base.root)) {
            c.expect(false, "rebuild/convert identity failed on a " +
                                std::to_string(subtree_size(session.base.root)) + "-node tree");
            return;
        }
    }

    // is_consistent vs the brute-force pairwise scanner over every tree
    // triple with at most six nodes in total
    std::vector<std::vector<TreeShape>> by_size(7);
    for (int n = 1; n <= 4; ++n) enumerate_shapes(n, by_size[static_cast<std::size_t>(n)]);
    std::size_t checked = 0;
    for (int nb = 1; nb <= 4; ++nb) {
        for (int nl = 1; nb + nl <= 5; ++nl) {
            for (int nr = 1; nb + nl + nr <= 6; ++nr) {
                for (const TreeShape& sb : by_size[static_cast<std::size_t>(nb)]) {
                    for (const TreeShape& sl : by_size[static_cast<std::size_t>(nl)]) {
                        for (const TreeShape& sr : by_size[static_cast<std::size_t>(nr)]) {
                            NodeIdGen ids;
                            Tree base(materialize(sb, ids, Revision::base), "",
                                      Revision::base);
                            Tree left(materialize(sl, ids, Revision::left), "",
                                      Revision::left);
                            Tree right(materialize(sr, ids, Revision::right), "",
                                       Revision::right);
                            MergeSession session(ids, std::move(base), std::move(left),
                                                 std::move(right));
                            MatchingTriple m = compute_matchings(session.base, session.left,
                                                                 session.right);
                            ClassRepMap reps = build_class_reps(session.base, session.left,
                                                                session.right, m);
                            ChangeSet raw = union_change_sets(
                                to_change_set(session.base, reps, session.virtuals),
                                to_change_set(session.left, reps, session.virtuals),
                                to_change_set(session.right, reps, session.virtuals));
                            bool fast = is_consistent(raw).empty();
                            bool slow = oracle_consistent(raw);
                            if (fast != slow) {
                                c.expect(false, "consistency disagreement on a raw union");
                                return;
                            }
                            MergedChangeSet merged =
                                merge_change_sets(session.base, session.left, session.right,
                                                  reps, session.virtuals);
                            ChangeSet stripped = merged.cs;
                            for (const HardPcsPair& pair : merged.hard_pcs) {
                                stripped.remove_pcs(pair.first);
                                stripped.remove_pcs(pair.second);
                            }
                            std::vector<Violation> v = is_consistent(stripped);
                            bool structural_ok = true;
                            for (const Violation& violation : v) {
                                if (violation.criterion != Violation::Criterion::content) {
                                    structural_ok = false;
                                }
                            }
                            if (!structural_ok) {
                                c.expect(false,
                                         "merge left structural inconsistencies outside "
                                         "the hard pairs");
                                return;
                            }
                            ++checked;
                        }
                    }
                }
            }
        }
    }
    c.expect(checked == 2136, "expected 2136 triples, checked " + std::to_string(checked));
}

// ---------------------------------------------------------------- 10
void criterion_metrics(Check& c) {
    Rng rng(424242);
    for (int i = 0; i < 100; ++i) {
        std::string a = random_text(rng, 25);
        std::string b = random_text(rng, 25);
        c.expect(line_diff_size(a, b) == oracle_diff_size(split_lines(a), split_lines(b)),
                 "line diff disagrees with the DP oracle");
        c.expect(char_diff_size(a, b) ==
                     oracle_diff_size(std::string_view(a), std::string_view(b)),
                 "char diff disagrees with the DP oracle");
        if (!c.ok) return;
    }

    // scanner round-trips with printer output on every conflicting fixture
    const char* fixtures[][3] = {
        {k_mini_base, k_mini_left, k_mini_right},
        {k_fallback_base, k_fallback_left, k_fallback_right},
        {"fn f(){anchor(); x();}", "fn f(){anchor();}", "fn f(){anchor(); x(); y();}"},
        {"foo(a)", "bar(a)", "qux(a)"},
        {"fn keep(){}", "fn keep(){}\nfn bb(){b();}", "fn keep(){}\nfn aa(){a();}"},
        {"f(k)", "f(l1,l2,k)", "f(r1,k)"},
    };
    for (const auto& f : fixtures) {
        MiniMerge m(f[0], f[1], f[2]);
        ConflictScan scan;
        try {
            scan = scan_conflicts(m.output);
        } catch (const MalformedHunk& e) {
            c.expect(false, std::string("printer output failed the scanner: ") + e.what() +
                                "\n" + m.output);
            return;
        }
        // independent recount of the marker lines
        std::size_t starts = 0, seps = 0, ends = 0;
        for (const std::string& line : split_lines(m.output)) {
            if (line.rfind("<<<<<<<", 0) == 0) ++starts;
            if (line.rfind("=======", 0) == 0) ++seps;
            if (line.rfind(">>>>>>>", 0) == 0) ++ends;
        }
        c.expect(scan.hunks == starts && starts == seps && seps == ends,
                 "marker counts disagree with the scanner");
    }

    // the corrected running-example listing: one hunk, two lines
    MiniMerge running(k_mini_base, k_mini_left, k_mini_right);
    ConflictScan scan = scan_conflicts(running.output);
    c.expect(scan.hunks == 1 && scan.conflicting_lines == 2,
             "running example hunk counts mismatch");

    c.expect(scan_conflicts("no conflicts here\n").hunks == 0, "clean file must scan to zero");

    ConflictScan two = scan_conflicts(
        "a\n<<<<<<< L\nx\n=======\nz\n>>>>>>> R\nmid\n<<<<<<< L\np\n=======\nq\nr\n>>>>>>> "
        "R\nb\n");
    c.expect(two.hunks == 2 && two.conflicting_lines == 5,
             "synthetic two-hunk fixture mismatch");
}

struct Criterion {
    int number;
    const char* name;
    double budget_seconds;
    std::function<void(Check&)> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "change-set golden (table rows, raw merge, merge + hard pairs)", 1.0,
         criterion_change_set_golden},
        {2, "class-representatives golden (13 nodes)", 1.0, criterion_class_rep_golden},
        {3, "dry-run trace golden (four rows in order)", 1.0, criterion_dry_run_golden},
        {4, "content merge golden", 1.0, criterion_content_golden},
        {5, "end-to-end running example (exit 1, corrected listing)", 1.0,
         criterion_end_to_end},
        {6, "local fallback golden (structured vs textual hunk boundaries)", 1.0,
         criterion_local_fallback},
        {7, "formatting preservation (200 files + single-sided edits)", 0.0,
         criterion_formatting_preservation},
        {8, "one-sided absorption (200 triples, zero conflicts)", 0.0,
         criterion_one_sided_absorption},
        {9, "oracle equivalence (exhaustive <= 6-node enumeration)", 60.0,
         criterion_oracle_equivalence},
        {10, "metrics vs DP oracle + scanner round-trip", 0.0, criterion_metrics},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0 && elapsed > criterion.budget_seconds) {
            check.expect(false, "exceeded time budget of " +
                                    std::to_string(criterion.budget_seconds) + " s");
        }
        if (check.ok) {
            std::printf("PASS  criterion %2d  %s  (%.3f s)\n", criterion.number, criterion.name,
                        elapsed);
        } else {
            ++failures;
            std::printf("FAIL  criterion %2d  %s  (%.3f s)\n      %s\n", criterion.number,
                        criterion.name, elapsed, check.detail.c_str());
        }
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
