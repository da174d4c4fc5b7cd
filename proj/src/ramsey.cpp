#include "treekit/ramsey.hpp"

#include <algorithm>
#include <map>

#include "treekit/enumerate.hpp"
#include "treekit/fraisse.hpp"
#include "treekit/patterns.hpp"

namespace treekit {

RamseyInstance make_instance(MeetTree A, MeetTree B, int r) {
    if (r < 1) throw TreeError("color count must be positive");
    auto f = find_embedding(A, B);
    if (!f) throw TreeError("instance needs an embedding of A into B");
    return RamseyInstance{std::move(A), std::move(B), *f, r};
}

namespace {

// Index of each A-copy (image vector) inside the canonical Emb(A,C) list.
std::map<std::vector<NodeId>, int> index_of(const std::vector<Embedding>& embs) {
    std::map<std::vector<NodeId>, int> m;
    for (std::size_t i = 0; i < embs.size(); ++i)
        m.emplace(embs[i].img, static_cast<int>(i));
    return m;
}

// For every embedding of B into C, the Emb(A,C)-indices of the A-copies it
// induces.
std::vector<std::vector<int>> copy_sets(const RamseyInstance& inst, const MeetTree& C,
                                        const std::vector<Embedding>& embs_ac,
                                        std::vector<Embedding>* embs_bc_out = nullptr) {
    auto idx = index_of(embs_ac);
    auto embs_ab = enumerate_embeddings(inst.A, inst.B);
    auto embs_bc = enumerate_embeddings(inst.B, C);
    std::vector<std::vector<int>> out;
    for (const auto& alpha : embs_bc) {
        std::vector<int> s;
        for (const auto& beta : embs_ab) {
            auto it = idx.find(compose(alpha, beta).img);
            if (it == idx.end()) throw TreeError("composed copy missing from Emb(A,C)");
            s.push_back(it->second);
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        out.push_back(std::move(s));
    }
    if (embs_bc_out) *embs_bc_out = std::move(embs_bc);
    return out;
}

}  // namespace

std::optional<Embedding> mono_copy(const RamseyInstance& inst, const MeetTree& C,
                                   const Coloring& chi) {
    auto embs_ac = enumerate_embeddings(inst.A, C);
    if (chi.size() != embs_ac.size()) throw TreeError("coloring not total on Emb(A,C)");
    std::vector<Embedding> embs_bc;
    auto copies = copy_sets(inst, C, embs_ac, &embs_bc);
    for (std::size_t i = 0; i < copies.size(); ++i) {
        bool mono = true;
        for (int k : copies[i])
            if (chi[static_cast<std::size_t>(k)] != chi[static_cast<std::size_t>(copies[i][0])]) {
                mono = false;
                break;
            }
        if (mono) return embs_bc[i];
    }
    return std::nullopt;
}

WitnessResult is_ramsey_witness(const RamseyInstance& inst, const MeetTree& C,
                                std::uint64_t budget, bool reversed) {
    auto embs_ac = enumerate_embeddings(inst.A, C);
    if (embs_ac.empty()) throw TreeError("Emb(A,C) must be nonempty");
    if (reversed) std::reverse(embs_ac.begin(), embs_ac.end());
    auto copies = copy_sets(inst, C, embs_ac);
    if (reversed) std::reverse(copies.begin(), copies.end());

    WitnessResult res;
    const std::size_t n = embs_ac.size();
    if (copies.empty()) {
        // no copy of B at all: every coloring is bad
        res.verdict = RamseyVerdict::REFUTED;
        res.bad_coloring.assign(n, 0);
        return res;
    }

    // copies_at[i]: copies whose largest element is i; those become fully
    // colored exactly when position i is assigned.
    std::vector<std::vector<int>> copies_at(n);
    for (std::size_t c = 0; c < copies.size(); ++c)
        copies_at[static_cast<std::size_t>(copies[c].back())].push_back(
            static_cast<int>(c));

    Coloring chi(n, -1);
    std::uint64_t explored = 0;
    bool out_of_budget = false;

    std::function<bool(std::size_t, int)> dfs = [&](std::size_t i, int used) -> bool {
        if (i == n) return true;  // bad coloring complete
        int top = std::min(inst.r - 1, used);  // normalize: at most one new color
        for (int c = 0; c <= top; ++c) {
            if (budget && ++explored > budget) {
                out_of_budget = true;
                return false;
            }
            chi[i] = c;
            bool ok = true;
            for (int k : copies_at[i]) {
                bool mono = true;
                for (int idx : copies[static_cast<std::size_t>(k)])
                    if (chi[static_cast<std::size_t>(idx)] != c) {
                        mono = false;
                        break;
                    }
                if (mono) {
                    ok = false;
                    break;
                }
            }
            if (ok && dfs(i + 1, std::max(used, c + 1))) return true;
            if (out_of_budget) break;
        }
        chi[i] = -1;
        return false;
    };

    bool found = dfs(0, 0);
    res.nodes_explored = explored;
    if (found) {
        res.verdict = RamseyVerdict::REFUTED;
        if (reversed) std::reverse(chi.begin(), chi.end());
        res.bad_coloring = chi;
    } else if (out_of_budget) {
        res.verdict = RamseyVerdict::INDETERMINATE;
    } else {
        res.verdict = RamseyVerdict::WITNESS;
    }
    return res;
}

RamseySearchResult ramsey_search(const RamseyInstance& inst, int size_budget,
                                 std::uint64_t node_budget) {
    if (size_budget < inst.B.size()) throw TreeError("size budget below |B|");
    RamseySearchResult res;

    std::vector<MeetTree> candidates;
    for (int d = 1; d <= 4; ++d)
        for (int b = 1; b <= size_budget; ++b) {
            MeetTree t = balanced_tree(b, d);
            if (t.size() <= size_budget) candidates.push_back(std::move(t));
        }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const MeetTree& a, const MeetTree& b) { return a.size() < b.size(); });
    for (int k = 2; k <= 3; ++k) {
        MeetTree t = generic_stage(k).tree;
        if (t.size() <= size_budget) candidates.push_back(std::move(t));
    }

    for (auto& C : candidates) {
        if (enumerate_embeddings(inst.A, C, 1).empty()) continue;
        if (enumerate_embeddings(inst.B, C, 1).empty()) continue;
        auto w = is_ramsey_witness(inst, C, node_budget);
        if (w.verdict == RamseyVerdict::WITNESS) {
            // independent re-verification, fresh enumeration order
            auto w2 = is_ramsey_witness(inst, C, node_budget, /*reversed=*/true);
            if (w2.verdict != RamseyVerdict::WITNESS)
                throw TreeError("witness failed re-verification");
            res.found = true;
            res.C = std::move(C);
            res.verdict = w;
            return res;
        }
        if (w.verdict == RamseyVerdict::REFUTED) {
            res.refuted.emplace_back(std::move(C), std::move(w.bad_coloring));
        } else {
            res.indeterminate = true;
        }
    }
    return res;
}

CollapseResult collapse_leaf_coloring(
    const MeetTree& ambient, const QfTypeCode& q,
    const std::function<int(const std::vector<NodeId>&)>& chi) {
    if (q.tag != LanguageTag::L0P) throw TreeError("collapse expects an L0P type");
    auto realizations = find_realizations(q, ambient, PatternConstraint::empty());

    std::vector<std::size_t> minus_pos;
    for (std::size_t j = 0; j < q.marks.size(); ++j)
        if (!q.leaf[static_cast<std::size_t>(q.marks[j])]) minus_pos.push_back(j);

    CollapseResult res;
    res.well_defined = true;
    std::map<std::vector<NodeId>, std::pair<int, std::vector<NodeId>>> seen;
    for (const auto& tup : realizations) {
        std::vector<NodeId> minus;
        for (std::size_t j : minus_pos) minus.push_back(tup[j]);
        int color = chi(tup);
        auto it = seen.find(minus);
        if (it == seen.end()) {
            seen.emplace(minus, std::make_pair(color, tup));
            res.minus_coloring.emplace(std::move(minus), color);
        } else if (it->second.first != color) {
            res.well_defined = false;
            res.tuple_a = it->second.second;
            res.tuple_b = tup;
            res.minus_coloring.clear();
            return res;
        }
    }
    return res;
}

}  // namespace treekit
