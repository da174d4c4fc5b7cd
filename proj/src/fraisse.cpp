#include "treekit/fraisse.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>

#include "treekit/enumerate.hpp"

namespace treekit {

namespace {

MeetTree tree_from(const std::map<Path, bool, LexLess>& nodes) {
    std::vector<std::pair<Path, bool>> v(nodes.begin(), nodes.end());
    return MeetTree::build(std::move(v));
}

Embedding embedding_from(const MeetTree& dom, const MeetTree& C,
                         const std::vector<Path>& img_paths) {
    Embedding e;
    e.img.reserve(img_paths.size());
    for (const auto& p : img_paths) e.img.push_back(C.require(p));
    if (!is_embedding(dom, C, e)) throw TreeError("amalgamation produced a non-embedding");
    return e;
}

}  // namespace

AmalgamResult joint_embed(const MeetTree& B1, const MeetTree& B2) {
    if (B1.empty() || B2.empty()) {
        const MeetTree& other = B1.empty() ? B2 : B1;
        AmalgamResult r{other, {}, {}};
        Embedding id;
        for (NodeId v = 0; v < other.size(); ++v) id.img.push_back(v);
        (B1.empty() ? r.g2 : r.g1) = id;
        return r;
    }
    std::map<Path, bool, LexLess> nodes;
    nodes.emplace(Path{}, false);
    std::vector<Path> i1, i2;
    for (NodeId v = 0; v < B1.size(); ++v) {
        Path p{0};
        p.insert(p.end(), B1.path(v).begin(), B1.path(v).end());
        nodes.emplace(p, B1.marked(v));
        i1.push_back(std::move(p));
    }
    for (NodeId v = 0; v < B2.size(); ++v) {
        Path p{1};
        p.insert(p.end(), B2.path(v).begin(), B2.path(v).end());
        nodes.emplace(p, B2.marked(v));
        i2.push_back(std::move(p));
    }
    AmalgamResult r;
    r.C = tree_from(nodes);
    r.g1 = embedding_from(B1, r.C, i1);
    r.g2 = embedding_from(B2, r.C, i2);
    return r;
}

AmalgamResult amalgamate(const MeetTree& A, const MeetTree& B1, const MeetTree& B2,
                         const Embedding& f1, const Embedding& f2) {
    if (!is_embedding(A, B1, f1) || !is_embedding(A, B2, f2))
        throw TreeError("amalgamate: invalid base embeddings");
    if (A.empty()) return joint_embed(B1, B2);

    std::map<Path, bool, LexLess> C;
    std::vector<Path> g1p(static_cast<std::size_t>(B1.size()));
    std::vector<Path> g2p(static_cast<std::size_t>(B2.size()));
    std::vector<bool> placed(static_cast<std::size_t>(B2.size()), false);
    for (NodeId v = 0; v < B1.size(); ++v) {
        C.emplace(B1.path(v), B1.marked(v));
        g1p[static_cast<std::size_t>(v)] = B1.path(v);
    }
    for (NodeId a = 0; a < A.size(); ++a) {
        g2p[static_cast<std::size_t>(f2(a))] = B1.path(f1(a));
        placed[static_cast<std::size_t>(f2(a))] = true;
    }

    // Path rewrites are word-tree isomorphisms applied to every C path and
    // every image path already placed.
    auto rewrite = [&](const std::function<Path(const Path&)>& f) {
        std::map<Path, bool, LexLess> C2;
        for (const auto& [p, mk] : C) C2.emplace(f(p), mk);
        C = std::move(C2);
        for (auto& p : g1p) p = f(p);
        for (NodeId v = 0; v < B2.size(); ++v)
            if (placed[static_cast<std::size_t>(v)])
                g2p[static_cast<std::size_t>(v)] = f(g2p[static_cast<std::size_t>(v)]);
    };

    // Unplaced B2 nodes in (depth, lex) order: every prefix of the current
    // node inside B2 is already placed when its turn comes.
    std::vector<NodeId> order;
    for (NodeId v = 0; v < B2.size(); ++v)
        if (!placed[static_cast<std::size_t>(v)]) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return B2.path(a).size() < B2.path(b).size();
    });

    for (NodeId b : order) {
        const Path& bp = B2.path(b);
        // deepest placed proper prefix and the placed nodes strictly above b
        int p = -1;
        std::vector<NodeId> above;
        for (NodeId u = 0; u < B2.size(); ++u) {
            if (!placed[static_cast<std::size_t>(u)]) continue;
            if (is_proper_prefix(B2.path(u), bp)) {
                if (p < 0 || B2.path(p).size() < B2.path(u).size()) p = u;
            } else if (is_proper_prefix(bp, B2.path(u))) {
                above.push_back(u);
            }
        }

        if (above.empty()) {
            // fresh child of the image of p
            if (p < 0) throw TreeError("amalgamate: lost the placed prefix");
            const Path pimg = g2p[static_cast<std::size_t>(p)];
            std::size_t dpos = pimg.size();
            std::uint32_t db = bp[B2.path(p).size()];

            auto bounds = [&]() -> std::pair<std::optional<std::uint32_t>, std::optional<std::uint32_t>> {
                std::optional<std::uint32_t> lo, hi;
                for (NodeId u = 0; u < B2.size(); ++u) {
                    if (!placed[static_cast<std::size_t>(u)]) continue;
                    if (!is_proper_prefix(B2.path(p), B2.path(u))) continue;
                    std::uint32_t du = B2.path(u)[B2.path(p).size()];
                    std::uint32_t dc = g2p[static_cast<std::size_t>(u)][dpos];
                    if (du < db) {
                        if (!lo || *lo < dc) lo = dc;
                    } else if (du > db) {
                        if (!hi || *hi > dc) hi = dc;
                    } else {
                        throw TreeError("amalgamate: prefix tracking broke");
                    }
                }
                return {lo, hi};
            };
            auto pick = [&]() -> std::optional<std::uint32_t> {
                auto [lo, hi] = bounds();
                std::uint32_t d = lo ? *lo + 1 : 0;
                for (const auto& [cp, mk] : C)
                    if (is_proper_prefix(pimg, cp)) {
                        std::uint32_t u = cp[dpos];
                        if ((!hi || u < *hi) && u + 1 > d) d = u + 1;
                    }
                if (hi && d >= *hi) return std::nullopt;
                return d;
            };
            auto d = pick();
            if (!d) {
                // no room before the right neighbor: stretch directions,
                // keeping a free slot below the smallest one
                rewrite([&](const Path& q) {
                    if (!is_proper_prefix(pimg, q)) return q;
                    Path out = q;
                    out[dpos] = out[dpos] * 2 + 2;
                    return out;
                });
                d = pick();
                if (!d) throw TreeError("amalgamate: stretch failed to make room");
            }
            Path np = pimg;
            np.push_back(*d);
            C.emplace(np, B2.marked(b));
            g2p[static_cast<std::size_t>(b)] = std::move(np);
        } else {
            // chain insert: a fresh prefix of the image of the meet of
            // everything placed above b
            if (B2.marked(b)) throw TreeError("amalgamate: marked node below others");
            Path m2 = B2.path(above[0]);
            for (NodeId u : above) m2 = meet(m2, B2.path(u));
            auto m2id = B2.find(m2);
            if (!m2id || !placed[static_cast<std::size_t>(*m2id)])
                throw TreeError("amalgamate: meet of placed nodes not placed");
            const Path M = g2p[static_cast<std::size_t>(*m2id)];
            std::size_t lowlen =
                p >= 0 ? g2p[static_cast<std::size_t>(p)].size() : 0;
            if (p < 0 && C.count(Path{}) == 0) {
                // the root slot itself is free
                C.emplace(Path{}, false);
                g2p[static_cast<std::size_t>(b)] = Path{};
                placed[static_cast<std::size_t>(b)] = true;
                continue;
            }
            std::size_t lmin = p >= 0 ? lowlen + 1 : 1;
            std::optional<Path> w;
            for (std::size_t l = lmin; l < M.size(); ++l) {
                Path cand(M.begin(), M.begin() + static_cast<std::ptrdiff_t>(l));
                if (!C.count(cand)) {
                    w = std::move(cand);
                    break;
                }
            }
            if (!w && p < 0) {
                // push everything down one step and take the new root slot
                rewrite([&](const Path& q) {
                    Path out{0};
                    out.insert(out.end(), q.begin(), q.end());
                    return out;
                });
                w = Path{};
            }
            if (!w) {
                // stretch the chain right above the image of p
                Path x0(M.begin(), M.begin() + static_cast<std::ptrdiff_t>(lmin));
                rewrite([&](const Path& q) {
                    if (!is_prefix(x0, q)) return q;
                    Path out(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(lmin));
                    out.push_back(0);
                    out.insert(out.end(), q.begin() + static_cast<std::ptrdiff_t>(lmin),
                               q.end());
                    return out;
                });
                w = x0;
            }
            C.emplace(*w, false);
            g2p[static_cast<std::size_t>(b)] = std::move(*w);
        }
        placed[static_cast<std::size_t>(b)] = true;
    }

    AmalgamResult r;
    r.C = tree_from(C);
    if (r.C.size() != B1.size() + B2.size() - A.size())
        throw TreeError("amalgamate: node count off");
    r.g1 = embedding_from(B1, r.C, g1p);
    r.g2 = embedding_from(B2, r.C, g2p);
    for (NodeId a = 0; a < A.size(); ++a)
        if (r.g1(f1(a)) != r.g2(f2(a))) throw TreeError("amalgamate: square fails");
    return r;
}

std::vector<Demand> enumerate_demands(int k) {
    std::map<QfTypeCode, Demand> dedup;
    for (const auto& B : enumerate_classes_up_to(k + 1)) {
        const int m = B.size();
        for (NodeId x = 0; x < m; ++x) {
            // S ranges over meet-closed subsets of B minus x of size m-1
            // or m-2 whose closure with x is all of B
            std::vector<NodeId> rest;
            for (NodeId v = 0; v < m; ++v)
                if (v != x) rest.push_back(v);
            std::vector<std::vector<NodeId>> cands;
            if (m - 1 < k) cands.push_back(rest);
            if (m - 2 < k && m >= 2) {
                for (std::size_t drop = 0; drop < rest.size(); ++drop) {
                    std::vector<NodeId> s;
                    for (std::size_t i = 0; i < rest.size(); ++i)
                        if (i != drop) s.push_back(rest[i]);
                    cands.push_back(std::move(s));
                }
            }
            for (auto& s : cands) {
                if (!s.empty() && meet_closure(B, s).size() != s.size()) continue;
                std::vector<NodeId> gen = s;
                gen.push_back(x);
                if (meet_closure(B, gen).size() != static_cast<std::size_t>(m)) continue;
                std::vector<NodeId> tup = s;
                tup.push_back(x);
                QfTypeCode key = qftp(B, tup, LanguageTag::L0P);
                if (!dedup.count(key)) dedup.emplace(key, Demand{B, s, x, key});
            }
        }
    }
    std::vector<Demand> out;
    for (auto& [key, d] : dedup) out.push_back(std::move(d));
    std::stable_sort(out.begin(), out.end(), [](const Demand& a, const Demand& b) {
        if (a.B.size() != b.B.size()) return a.B.size() < b.B.size();
        return a.key < b.key;
    });
    return out;
}

namespace {

// S as a tree of its own, plus its embedding into B.
std::pair<MeetTree, Embedding> substructure(const MeetTree& B,
                                            const std::vector<NodeId>& s_nodes) {
    std::vector<std::pair<Path, bool>> nodes;
    for (NodeId v : s_nodes) nodes.emplace_back(B.path(v), B.marked(v));
    MeetTree S = MeetTree::build(std::move(nodes));
    Embedding f;
    for (NodeId v : s_nodes) f.img.push_back(v);  // s_nodes already lex-sorted
    if (!is_embedding(S, B, f)) throw TreeError("substructure embedding broke");
    return {std::move(S), std::move(f)};
}

}  // namespace

GenericStage generic_stage(int k, int max_nodes) {
    GenericStage g;
    g.stage = k;
    g.complete = true;
    for (const auto& d : enumerate_demands(k)) {
        DemandEntry entry{d.key, d.B.size(), ""};
        if (g.tree.size() > max_nodes) {
            entry.status = "skipped";
            g.complete = false;
            g.demand_log.push_back(std::move(entry));
            continue;
        }
        if (find_embedding(d.B, g.tree)) {
            entry.status = "present";
        } else if (d.s_nodes.empty() || g.tree.empty()) {
            g.tree = joint_embed(g.tree, d.B).C;
            entry.status = "joint";
        } else {
            auto [S, f2] = substructure(d.B, d.s_nodes);
            auto f1 = find_embedding(S, g.tree);
            if (!f1) throw TreeError("generic_stage: base not realized yet");
            g.tree = amalgamate(S, g.tree, d.B, *f1, f2).C;
            entry.status = "amalgamated";
        }
        g.demand_log.push_back(std::move(entry));
    }
    return g;
}

MeetTree saturate_over_copies(const MeetTree& t, int k, int max_nodes) {
    MeetTree cur = t;
    for (const auto& d : enumerate_demands(k)) {
        if (d.s_nodes.empty()) {
            if (!find_embedding(d.B, cur)) cur = joint_embed(cur, d.B).C;
            continue;
        }
        auto [S, f2] = substructure(d.B, d.s_nodes);
        // copies fixed at the round start for this demand
        auto copies = enumerate_embeddings(S, cur);
        for (auto& e : copies) {
            if (cur.size() > max_nodes) return cur;
            std::vector<std::pair<NodeId, NodeId>> pins;
            for (std::size_t i = 0; i < d.s_nodes.size(); ++i)
                pins.emplace_back(d.s_nodes[i], e.img[i]);
            if (find_embedding_extending(d.B, cur, pins)) continue;
            auto r = amalgamate(S, cur, d.B, e, f2);
            // remap the remaining copies into the new tree
            for (auto& e2 : copies)
                for (auto& v : e2.img) v = r.g1(v);
            cur = std::move(r.C);
        }
    }
    return cur;
}

std::vector<QfTypeCode> check_extension_property(const MeetTree& t, int k) {
    std::vector<QfTypeCode> missing;
    for (const auto& d : enumerate_demands(k))
        if (!find_embedding(d.B, t)) missing.push_back(d.key);
    return missing;
}

}  // namespace treekit
