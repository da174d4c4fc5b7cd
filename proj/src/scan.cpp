#include "treekit/scan.hpp"

#include <map>

#include "treekit/enumerate.hpp"
#include "treekit/patterns.hpp"
#include "treekit/qftp.hpp"
#include "treekit/ramsey.hpp"

namespace treekit {

namespace {

// Meet-closed ascending tuples of t, as node id vectors.
std::vector<std::vector<NodeId>> closed_tuples(const MeetTree& t, int max_len) {
    const int n = t.size();
    std::vector<std::vector<NodeId>> meets(n, std::vector<NodeId>(n));
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = 0; b < n; ++b) meets[a][b] = t.meet_node(a, b);
    std::vector<std::vector<NodeId>> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (max_len > 0 && __builtin_popcount(mask) > max_len) continue;
        std::vector<NodeId> tup;
        for (NodeId v = 0; v < n; ++v)
            if (mask & (1u << v)) tup.push_back(v);
        bool closed = true;
        for (std::size_t i = 0; i < tup.size() && closed; ++i)
            for (std::size_t j = i + 1; j < tup.size() && closed; ++j)
                closed = (mask >> meets[tup[i]][tup[j]]) & 1u;
        if (closed) out.push_back(std::move(tup));
    }
    return out;
}

std::string tuple_str(const MeetTree& t, const std::vector<NodeId>& tup) {
    std::string s = "(";
    for (std::size_t i = 0; i < tup.size(); ++i)
        s += (i ? "," : "") + path_to_string(t.path(tup[i]));
    return s + ")";
}

ScanReport same_type_scan_one(const MeetTree& t) {
    ScanReport rep;
    rep.trees = 1;
    // group by mark pattern and unmarked entries; inside a group the lemma
    // says equal L0P forces equal LS
    std::map<std::pair<std::vector<bool>, std::vector<NodeId>>, std::vector<std::vector<NodeId>>>
        groups;
    for (auto& tup : closed_tuples(t, 0)) {
        ++rep.tuples;
        std::vector<bool> pattern;
        std::vector<NodeId> unmarked;
        for (NodeId v : tup) {
            pattern.push_back(t.marked(v));
            if (!t.marked(v)) unmarked.push_back(v);
        }
        groups[{std::move(pattern), std::move(unmarked)}].push_back(std::move(tup));
    }
    for (auto& [key, members] : groups) {
        // representatives with pairwise distinct L0P codes
        std::vector<std::size_t> reps;
        for (std::size_t m = 0; m < members.size(); ++m) {
            bool matched = false;
            for (std::size_t r : reps) {
                ++rep.comparisons;
                auto res = same_type_implication(t, members[r], members[m]);
                if (res.verdict == SameTypeVerdict::VIOLATION)
                    rep.violations.push_back("tree " + t.serialize() + " tuples " +
                                             tuple_str(t, members[r]) + " vs " +
                                             tuple_str(t, members[m]));
                if (res.verdict != SameTypeVerdict::VACUOUS) {
                    matched = true;
                    break;
                }
            }
            if (!matched) reps.push_back(m);
        }
    }
    return rep;
}

ScanReport collapse_scan_one(const MeetTree& t, int max_arity) {
    ScanReport rep;
    rep.trees = 1;
    std::map<std::string, QfTypeCode> types;
    for (const auto& tup : closed_tuples(t, max_arity)) {
        ++rep.tuples;
        auto q = qftp(t, tup, LanguageTag::L0P);
        types.emplace(q.to_string(), std::move(q));
    }
    for (const auto& [qs, q] : types) {
        std::map<std::string, int> palette;
        auto ls_color = [&](const std::vector<NodeId>& tup) {
            auto key = qftp(t, tup, LanguageTag::LS).to_string();
            return palette.emplace(key, (int)palette.size()).first->second;
        };
        auto res = collapse_leaf_coloring(t, q, ls_color);
        if (!res.well_defined) {
            rep.violations.push_back("collapse ill-defined on " + t.serialize() + " type " + qs +
                                     " at " + tuple_str(t, res.tuple_a) + " vs " +
                                     tuple_str(t, res.tuple_b));
            continue;
        }
        // lift: reading the minus coloring back must reproduce chi
        std::vector<std::size_t> minus_pos;
        for (std::size_t j = 0; j < q.marks.size(); ++j)
            if (!q.leaf[(std::size_t)q.marks[j]]) minus_pos.push_back(j);
        for (const auto& tup : find_realizations(q, t, PatternConstraint::empty())) {
            ++rep.comparisons;
            std::vector<NodeId> minus;
            for (std::size_t j : minus_pos) minus.push_back(tup[j]);
            auto it = res.minus_coloring.find(minus);
            if (it == res.minus_coloring.end() || it->second != ls_color(tup))
                rep.violations.push_back("lift mismatch on " + t.serialize() + " type " + qs +
                                         " at " + tuple_str(t, tup));
        }
    }
    return rep;
}

template <typename Fn>
ScanReport run_scan(int max_nodes, bool parallel, Fn&& one) {
    auto trees = enumerate_classes_up_to(max_nodes);
    std::vector<ScanReport> per(trees.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long i = 0; i < (long)trees.size(); ++i) per[(std::size_t)i] = one(trees[(std::size_t)i]);
    (void)parallel;
    ScanReport total;
    for (const auto& r : per) {
        total.trees += r.trees;
        total.tuples += r.tuples;
        total.comparisons += r.comparisons;
        total.violations.insert(total.violations.end(), r.violations.begin(), r.violations.end());
    }
    return total;
}

}  // namespace

ScanReport same_type_scan(int max_nodes, bool parallel) {
    return run_scan(max_nodes, parallel, [](const MeetTree& t) { return same_type_scan_one(t); });
}

ScanReport collapse_roundtrip_scan(int max_nodes, int max_arity, bool parallel) {
    return run_scan(max_nodes, parallel,
                    [max_arity](const MeetTree& t) { return collapse_scan_one(t, max_arity); });
}

}  // namespace treekit
