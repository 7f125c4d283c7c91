#ifndef ASTMERGE_TESTS_FIXTURES_HPP
#define ASTMERGE_TESTS_FIXTURES_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "astmerge/changeset.hpp"
#include "astmerge/merge_core.hpp"
#include "astmerge/minilang.hpp"
#include "astmerge/printer.hpp"
#include "astmerge/rebuild.hpp"
#include "astmerge/session.hpp"
#include "astmerge/treefile.hpp"

namespace astmerge::tests {

// The running example: base add(a,b), left add(-a,b,1), right sum(-a,b,c),
// built through the interchange front end so the call node is the root.
// Node labels follow the usual two-digit scheme: first digit tree
// (0 base, 1 left, 2 right), second digit pre-order position.
struct RunningExample {
    NodeIdGen ids;
    std::optional<MergeSession> session;
    std::map<std::string, NodeId> id_of;

    RunningExample() {
        Tree base = parse_tree_file(R"((call "add" -1 -1 (ref "a" -1 -1) (ref "b" -1 -1)))",
                                    Revision::base, ids);
        Tree left = parse_tree_file(
            R"((call "add" -1 -1 (uop "-" -1 -1 (ref "a" -1 -1)) (ref "b" -1 -1) (int "1" -1 -1)))",
            Revision::left, ids);
        Tree right = parse_tree_file(
            R"((call "sum" -1 -1 (uop "-" -1 -1 (ref "a" -1 -1)) (ref "b" -1 -1) (ref "c" -1 -1)))",
            Revision::right, ids);

        label_tree(base.root, "0");
        label_tree(left.root, "1");
        label_tree(right.root, "2");
        id_of["^"] = k_virtual_root;
        id_of["<"] = k_list_start;
        id_of[">"] = k_list_end;

        session.emplace(ids, std::move(base), std::move(left), std::move(right));
    }

    NodeId id(const std::string& label) const { return id_of.at(label); }

    PcsKey pcs(const std::string& parent, const std::string& pred,
               const std::string& succ) const {
        return {id(parent), id(pred), id(succ)};
    }

    std::string label_of(NodeId node) const {
        for (const auto& [label, id] : id_of) {
            if (id == node) return label;
        }
        return "#" + std::to_string(node.value);
    }

    std::string label_of(const PcsKey& key) const {
        return "(" + label_of(key.parent) + "," + label_of(key.pred) + "," + label_of(key.succ) +
               ")";
    }

private:
    void label_tree(const Node& root, const std::string& prefix) {
        int counter = 1;
        for_each_node(root, [&](const Node& n) {
            id_of[prefix + std::to_string(counter)] = n.id;
            ++counter;
        });
    }
};

inline std::set<PcsKey> keys_of(const ChangeSet& cs) {
    std::set<PcsKey> out;
    for (const auto& [key, origins] : cs.pcs()) {
        (void)origins;
        out.insert(key);
    }
    return out;
}

// The paper's PCS tables for the running example, by label.
inline std::set<PcsKey> expected_base_row(const RunningExample& ex) {
    return {ex.pcs("^", "<", "01"), ex.pcs("^", "01", ">"), ex.pcs("01", "<", "02"),
            ex.pcs("01", "02", "03"), ex.pcs("01", "03", ">"), ex.pcs("02", "<", ">"),
            ex.pcs("03", "<", ">")};
}

inline std::set<PcsKey> expected_left_row(const RunningExample& ex) {
    return {ex.pcs("^", "<", "01"), ex.pcs("^", "01", ">"), ex.pcs("01", "<", "12"),
            ex.pcs("01", "12", "03"), ex.pcs("01", "03", "15"), ex.pcs("01", "15", ">"),
            ex.pcs("12", "<", "02"), ex.pcs("12", "02", ">"), ex.pcs("02", "<", ">"),
            ex.pcs("03", "<", ">"), ex.pcs("15", "<", ">")};
}

inline std::set<PcsKey> expected_right_row(const RunningExample& ex) {
    return {ex.pcs("^", "<", "01"), ex.pcs("^", "01", ">"), ex.pcs("01", "<", "12"),
            ex.pcs("01", "12", "03"), ex.pcs("01", "03", "25"), ex.pcs("01", "25", ">"),
            ex.pcs("12", "<", "02"), ex.pcs("12", "02", ">"), ex.pcs("02", "<", ">"),
            ex.pcs("03", "<", ">"), ex.pcs("25", "<", ">")};
}

inline std::set<PcsKey> expected_raw_merge_row(const RunningExample& ex) {
    std::set<PcsKey> out = expected_base_row(ex);
    for (const PcsKey& key : expected_left_row(ex)) out.insert(key);
    for (const PcsKey& key : expected_right_row(ex)) out.insert(key);
    return out;
}

inline std::set<PcsKey> expected_merge_row(const RunningExample& ex) {
    return {ex.pcs("^", "<", "01"),  ex.pcs("^", "01", ">"),  ex.pcs("01", "<", "12"),
            ex.pcs("01", "12", "03"), ex.pcs("01", "03", "15"), ex.pcs("01", "15", ">"),
            ex.pcs("01", "03", "25"), ex.pcs("01", "25", ">"),  ex.pcs("12", "<", "02"),
            ex.pcs("12", "02", ">"),  ex.pcs("02", "<", ">"),   ex.pcs("03", "<", ">"),
            ex.pcs("15", "<", ">"),   ex.pcs("25", "<", ">")};
}

// Class representatives table: node label -> representative label.
inline std::map<std::string, std::string> expected_class_reps() {
    return {{"01", "01"}, {"02", "02"}, {"03", "03"}, {"11", "01"}, {"12", "12"},
            {"13", "02"}, {"14", "03"}, {"15", "15"}, {"21", "01"}, {"22", "12"},
            {"23", "02"}, {"24", "03"}, {"25", "25"}};
}

// MiniLang sources shared by end-to-end tests.
inline constexpr const char* k_mini_base = "add(a,b)";
inline constexpr const char* k_mini_left = "add(-a,b,1)";
inline constexpr const char* k_mini_right = "sum(-a,b,c)";

inline constexpr const char* k_fallback_base = "abs(sum(a,b))";
inline constexpr const char* k_fallback_left = "abs(sum(a))";
inline constexpr const char* k_fallback_right = "abs(sum(b))";

// Runs the whole structured pipeline over MiniLang sources.
struct MiniMerge {
    NodeIdGen ids;
    std::optional<MergeSession> session;
    PipelineResult result;
    std::string output;

    MiniMerge(const std::string& base_src, const std::string& left_src,
              const std::string& right_src, PrintConfig cfg = {}) {
        Tree base = parse_minilang(base_src, Revision::base, ids);
        Tree left = parse_minilang(left_src, Revision::left, ids);
        Tree right = parse_minilang(right_src, Revision::right, ids);
        session.emplace(ids, std::move(base), std::move(left), std::move(right));
        PipelineOptions opts;
        opts.print = cfg;
        result = run_pipeline(*session, opts);
        output = print(result.tree, *session, cfg);
    }
};

}  // namespace astmerge::tests

#endif
