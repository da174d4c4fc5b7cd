#include "treekit/witnesses.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "treekit/enumerate.hpp"

namespace treekit {

IndexedFamily oag_family(int n, int m, const Rat& g) {
    if (n < 2 || m < 2 || g <= 0) throw TreeError("oag_family needs n >= 2, m >= 2, g > 0");
    IndexedFamily f;
    f.index = balanced_tree(n, m);
    f.arity = 1;
    f.rational_target = true;
    for (NodeId v = 0; v < f.index.size(); ++v) {
        const Path& p = f.index.path(v);
        Rat a = 0;
        Rat scale = g;
        for (uint32_t dir : p) {
            a += dir * scale;
            scale /= n;
        }
        f.assign_rat[v] = {a};
    }
    // x1 - x0 < x3 - x1  <=>  -x0 + 2 x1 - x3 < 0
    f.preds.push_back({"q0", {Rat(-1), Rat(2), Rat(0), Rat(-1)}, "<", Rat(0)});
    // x2 - x0 > x3 - x2  <=>  x0 - 2 x2 + x3 < 0
    f.preds.push_back({"q1", {Rat(1), Rat(0), Rat(-2), Rat(1)}, "<", Rat(0)});
    f.preds.push_back({"lt", {Rat(1), Rat(-1)}, "<", Rat(0)});
    f.validate();
    return f;
}

std::optional<OagCertificate> oag_certificate(const IndexedFamily& fam) {
    const MeetTree& t = fam.index;
    auto leaves = t.marked_leaves();
    const std::size_t L = leaves.size();
    auto val = [&](NodeId v) { return fam.assign_rat.at(v).at(0); };
    for (std::size_t i0 = 0; i0 < L; ++i0)
        for (std::size_t i1 = i0 + 1; i1 < L; ++i1)
            for (std::size_t i2 = i1 + 1; i2 < L; ++i2)
                for (std::size_t i3 = i2 + 1; i3 < L; ++i3) {
                    NodeId e0 = leaves[i0], e1 = leaves[i1], e2 = leaves[i2], e3 = leaves[i3];
                    NodeId m01 = t.meet_node(e0, e1);
                    NodeId m12 = t.meet_node(e1, e2);
                    NodeId m23 = t.meet_node(e2, e3);
                    if (!t.lt(m12, m01) || !t.lt(m12, m23)) continue;
                    Rat a0 = val(e0), a1 = val(e1), a2 = val(e2), a3 = val(e3);
                    if (a1 - a0 < a3 - a1 && a2 - a0 > a3 - a2)
                        return OagCertificate{{t.path(e0), t.path(e1), t.path(e2), t.path(e3)},
                                              {a0, a1, a2, a3}};
                }
    return std::nullopt;
}

IndexedFamily multigraph_family(int b, int d) {
    if (b < 2 || d < 2) throw TreeError("multigraph_family needs b >= 2, d >= 2");
    IndexedFamily f;
    f.index = balanced_tree(b, d);
    f.arity = 1;
    auto leaves = f.index.marked_leaves();
    const int L = (int)leaves.size();
    f.target.universe = L + 1;  // trailing padding vertex for interior nodes
    std::map<NodeId, int> vert;
    for (int i = 0; i < L; ++i) vert[leaves[i]] = i;
    for (int k = 0; k < d; ++k) {
        RelStructure::Rel r;
        r.name = "R" + std::to_string(k);
        r.arity = 2;
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < L; ++j) {
                if (i == j) continue;
                NodeId m = f.index.meet_node(leaves[i], leaves[j]);
                if ((int)f.index.path(m).size() == k) r.tuples.insert({i, j});
            }
        f.target.rels.push_back(std::move(r));
    }
    for (NodeId v = 0; v < f.index.size(); ++v) {
        auto it = vert.find(v);
        f.assign_rel[v] = {it == vert.end() ? L : it->second};
    }
    f.validate();
    return f;
}

IndexedFamily two_ip_family(int b, int d) {
    if (b < 2 || d < 3) throw TreeError("two_ip_family needs b >= 2, d >= 3");
    IndexedFamily f;
    f.index = balanced_tree(b, d);
    f.arity = 3;
    auto leaves = f.index.marked_leaves();
    const int L = (int)leaves.size();
    f.target.universe = 3 * L + 3;  // a/b/c blocks plus three padding elements
    RelStructure::Rel phi;
    phi.name = "phi";
    phi.arity = 3;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            for (int k = 0; k < L; ++k) {
                if (i == j || j == k || i == k) continue;
                if (leaf_pattern_x(f.index, leaves[i], leaves[j], leaves[k]))
                    phi.tuples.insert({i, L + j, 2 * L + k});
            }
    f.target.rels.push_back(std::move(phi));
    std::map<NodeId, int> vert;
    for (int i = 0; i < L; ++i) vert[leaves[i]] = i;
    for (NodeId v = 0; v < f.index.size(); ++v) {
        auto it = vert.find(v);
        if (it == vert.end())
            f.assign_rel[v] = {3 * L, 3 * L + 1, 3 * L + 2};
        else
            f.assign_rel[v] = {it->second, L + it->second, 2 * L + it->second};
    }
    f.validate();
    return f;
}

std::optional<TwoIpCertificate> two_ip_certificate(const IndexedFamily& fam) {
    const MeetTree& t = fam.index;
    auto leaves = t.marked_leaves();
    const std::size_t L = leaves.size();
    for (std::size_t i0 = 0; i0 < L; ++i0)
        for (std::size_t i1 = i0 + 1; i1 < L; ++i1)
            for (std::size_t i2 = i1 + 1; i2 < L; ++i2)
                for (std::size_t i3 = i2 + 1; i3 < L; ++i3) {
                    NodeId e0 = leaves[i0], e1 = leaves[i1], e2 = leaves[i2], e3 = leaves[i3];
                    // eta1^eta3 strictly below eta0^eta1; eta0^eta2 strictly below eta2^eta3
                    if (!t.lt(t.meet_node(e1, e3), t.meet_node(e0, e1))) continue;
                    if (!t.lt(t.meet_node(e0, e2), t.meet_node(e2, e3))) continue;
                    if (leaf_pattern_x(t, e0, e1, e3)) continue;
                    if (!leaf_pattern_x(t, e0, e2, e3)) continue;
                    return TwoIpCertificate{{t.path(e0), t.path(e1), t.path(e2), t.path(e3)}};
                }
    return std::nullopt;
}

IntervalTreeFamily interval_sop2(const MeetTree& index) {
    if (index.empty()) throw TreeError("empty index");
    if (index.marked_leaves().empty()) throw TreeError("interval_sop2 needs marked leaves");
    IntervalTreeFamily f;
    f.index = index;
    f.iv.assign(index.size(), RatInterval(Rat(0), Rat(1)));
    f.point.assign(index.size(), std::nullopt);
    std::vector<std::vector<NodeId>> children(index.size());
    for (NodeId v = 1; v < index.size(); ++v) children[*index.parent(v)].push_back(v);
    // ids are lex-sorted, so children lists come out in lex order
    for (NodeId v = 0; v < index.size(); ++v) {
        const auto& ch = children[v];
        if (!ch.empty()) {
            Rat l = f.iv[v].lo;
            Rat w = (f.iv[v].hi - l) / (2 * (int)ch.size() - 1);
            for (std::size_t j = 0; j < ch.size(); ++j)
                f.iv[ch[j]] = RatInterval(l + 2 * (int)j * w, l + (2 * (int)j + 1) * w);
        }
        if (index.marked(v)) f.point[v] = (f.iv[v].lo + f.iv[v].hi) / 2;
    }
    return f;
}

InvariantReport check_interval_invariants(const IntervalTreeFamily& fam) {
    InvariantReport r;
    const MeetTree& t = fam.index;
    auto fail = [&](const std::string& d) {
        r.ok = false;
        if (r.detail.empty()) r.detail = d;
    };
    for (NodeId a = 0; a < t.size(); ++a)
        for (NodeId b = 0; b < t.size(); ++b) {
            if (a == b) continue;
            ++r.checks;
            if (t.le(a, b)) {
                if (!subset(fam.iv[b], fam.iv[a]))
                    fail("nesting fails at " + path_to_string(t.path(a)) + " <= " +
                         path_to_string(t.path(b)));
            } else if (a < b && t.incomp(a, b)) {
                if (!disjoint(fam.iv[a], fam.iv[b]))
                    fail("disjointness fails at " + path_to_string(t.path(a)) + " vs " +
                         path_to_string(t.path(b)));
            }
        }
    for (NodeId l = 0; l < t.size(); ++l) {
        if (!fam.point[l]) continue;
        for (NodeId a = 0; a < t.size(); ++a) {
            if (!t.le(a, l)) continue;
            ++r.checks;
            if (!fam.iv[a].contains(*fam.point[l]))
                fail("realization of " + path_to_string(t.path(l)) + " escapes " +
                     path_to_string(t.path(a)));
        }
    }
    return r;
}

IndexedFamily family_from_intervals(const IntervalTreeFamily& fam) {
    IndexedFamily f;
    f.index = fam.index;
    f.arity = 2;
    f.rational_target = true;
    for (NodeId v = 0; v < fam.index.size(); ++v) f.assign_rat[v] = {fam.iv[v].lo, fam.iv[v].hi};
    f.validate();
    return f;
}

Sop3Replay sop3_replay(const IntervalTreeFamily& fam, int n) {
    if (n < 1) throw TreeError("sop3_replay needs n >= 1");
    Sop3Replay rep;
    rep.n = n;
    const MeetTree& t = fam.index;
    auto leaves = t.marked_leaves();
    const int L = (int)leaves.size();
    std::map<NodeId, int> pos;
    for (int i = 0; i < L; ++i) pos[leaves[i]] = i;
    auto pt = [&](int p) { return *fam.point[leaves[p]]; };

    // Anchor pairs diverging exactly at v, as (position, position), lex order.
    auto anchor_pairs = [&](NodeId v) {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < L; ++i)
            for (int j = i + 1; j < L; ++j)
                if (t.meet_node(leaves[i], leaves[j]) == v) out.emplace_back(i, j);
        return out;
    };

    int best_g1 = -1, best_g2 = -1, best_g3 = -1;
    for (NodeId eta = 0; eta < t.size(); ++eta) {
        auto eps = anchor_pairs(eta);
        if (eps.empty()) continue;
        for (NodeId nu = 0; nu < t.size(); ++nu) {
            if (!t.incomp(eta, nu) || !t.lex_lt(eta, nu)) continue;
            auto nps = anchor_pairs(nu);
            if (nps.empty()) continue;
            for (auto [p1, p2] : eps) {
                int g1 = p2 - p1 - 1;
                best_g1 = std::max(best_g1, g1);
                if (g1 < n - 1) continue;
                for (auto [p3, p4] : nps) {
                    if (p3 <= p2) continue;
                    int g2 = p4 - p3 - 1, g3 = L - 1 - p4;
                    best_g2 = std::max(best_g2, g2);
                    best_g3 = std::max(best_g3, g3);
                    if (g2 < 2 * (n - 1) || g3 < n - 1) continue;
                    rep.sat = true;
                    rep.eta = t.path(eta);
                    rep.nu = t.path(nu);
                    for (int i = 0; i < n; ++i) {
                        int el = i == 0 ? p1 : p1 + i;
                        int er = i == 0 ? p2 : p3 + 2 * i - 1;
                        int nl = i == 0 ? p3 : p3 + 2 * i;
                        int nr = p4 + i;
                        rep.eta_l.push_back(t.path(leaves[el]));
                        rep.eta_r.push_back(t.path(leaves[er]));
                        rep.nu_l.push_back(t.path(leaves[nl]));
                        rep.nu_r.push_back(t.path(leaves[nr]));
                        rep.pairs.push_back({RatInterval(pt(nl), pt(nr)),
                                             RatInterval(pt(el), pt(er))});
                    }
                    goto found;
                }
            }
        }
    }
found:
    if (!rep.sat) {
        rep.missing.push_back("no anchor configuration (eta incomp nu) with lex gaps >= (" +
                              std::to_string(n - 1) + ", " + std::to_string(2 * (n - 1)) + ", " +
                              std::to_string(n - 1) + ")");
        rep.missing.push_back("best gaps found: " + std::to_string(best_g1) + ", " +
                              std::to_string(best_g2) + ", " + std::to_string(best_g3) +
                              "; add leaves via a larger balanced stage or generic stage");
        return rep;
    }
    rep.verified = true;
    for (int j = 0; j < n; ++j) {
        std::optional<RatInterval> cur = rep.pairs[0].a;
        for (int i = 1; cur && i <= j; ++i) cur = intersect(*cur, rep.pairs[i].a);
        for (int i = j + 1; cur && i < n; ++i) cur = intersect(*cur, rep.pairs[i].b);
        ClauseReport c;
        c.name = "consistency j=" + std::to_string(j);
        c.ok = cur.has_value();
        if (cur) c.witness = (cur->lo + cur->hi) / 2;
        rep.verified &= c.ok;
        rep.clauses.push_back(std::move(c));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            ClauseReport c;
            c.name = "inconsistency i=" + std::to_string(i) + " j=" + std::to_string(j);
            c.ok = disjoint(rep.pairs[j].a, rep.pairs[i].b);
            rep.verified &= c.ok;
            rep.clauses.push_back(std::move(c));
        }
    return rep;
}

BoundaryReport sop3_boundary(int n, int max_nodes) {
    std::vector<BoundaryEntry> cands;
    for (int b = 2;; ++b) {
        int base = 1 + b + b * b;
        if (base > max_nodes) break;
        int count = base;
        for (int d = 2; count <= max_nodes; ++d) {
            cands.push_back({b, d, count, false});
            long long next = (long long)count * b + 1;
            if (next > max_nodes) break;
            count = (int)next;
        }
    }
    std::sort(cands.begin(), cands.end(), [](const BoundaryEntry& x, const BoundaryEntry& y) {
        return std::tie(x.nodes, x.b, x.d) < std::tie(y.nodes, y.b, y.d);
    });
    BoundaryReport rep;
    for (auto e : cands) {
        auto fam = interval_sop2(balanced_tree(e.b, e.d));
        auto r = sop3_replay(fam, n);
        e.sat = r.sat && r.verified;
        rep.entries.push_back(e);
        if (e.sat) {
            rep.first_sat = e;
            break;
        }
    }
    return rep;
}

IntervalsToSop3 intervals_to_sop3(int n, std::vector<Rat> ks) {
    if (n < 2) throw TreeError("intervals_to_sop3 needs n >= 2");
    IntervalsToSop3 r;
    if (ks.empty())
        for (int i = 1; i <= n; ++i) ks.emplace_back(Rat(i) / (4 * n));
    if ((int)ks.size() != n) throw TreeError("need exactly n values of k");
    for (int i = 0; i < n; ++i) {
        if (ks[i] <= 0 || ks[i] >= Rat(1, 3)) throw TreeError("k out of (0, 1/3)");
        if (i > 0 && ks[i - 1] >= ks[i]) throw TreeError("k values must increase");
    }
    r.ks = ks;
    const Rat third(1, 3), two_thirds(2, 3);
    for (const Rat& k : ks)
        r.cks.push_back({RatInterval(third + k, two_thirds + k), RatInterval(k, third + k)});
    r.verified = true;
    for (int i = 0; i < n; ++i) {
        std::optional<RatInterval> cur = r.cks[0].a;
        for (int j = 1; cur && j <= i; ++j) cur = intersect(*cur, r.cks[j].a);
        for (int j = i + 1; cur && j < n; ++j) cur = intersect(*cur, r.cks[j].b);
        ClauseReport c;
        c.name = "consistency i=" + std::to_string(i);
        c.ok = cur.has_value();
        if (cur) c.witness = (cur->lo + cur->hi) / 2;
        r.verified &= c.ok;
        r.clauses.push_back(std::move(c));
    }
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) {
            ClauseReport c;
            c.name = "inconsistency j=" + std::to_string(j) + " i=" + std::to_string(i);
            c.ok = disjoint(r.cks[j].b, r.cks[i].a);
            r.verified &= c.ok;
            r.clauses.push_back(std::move(c));
        }
    return r;
}

Sop3ToIntervals sop3_to_intervals(const std::vector<RatInterval>& sample) {
    if (sample.empty()) throw TreeError("empty sample");
    std::vector<Rat> ends;
    for (const auto& iv : sample) {
        ends.push_back(iv.lo);
        ends.push_back(iv.hi);
    }
    std::sort(ends.begin(), ends.end());
    if (std::adjacent_find(ends.begin(), ends.end()) != ends.end())
        throw TreeError("endpoints must be pairwise distinct");
    // Candidate witnesses covering every cell of the endpoint partition.
    std::vector<Rat> cands = ends;
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) cands.push_back((ends[i] + ends[i + 1]) / 2);
    cands.push_back(ends.front() - 1);
    cands.push_back(ends.back() + 1);

    Sop3ToIntervals r;
    r.sample = sample;
    r.verified = true;
    const int m = (int)sample.size();
    for (int mask = 1; mask < (1 << m); ++mask) {
        SubsetVerdict v;
        std::optional<RatInterval> cur;
        for (int i = 0; i < m; ++i) {
            if (!(mask & (1 << i))) continue;
            v.members.push_back(i);
            cur = cur ? intersect(*cur, sample[i]) : std::optional<RatInterval>(sample[i]);
            if (!cur) break;
        }
        v.satisfiable = cur.has_value();
        if (cur) v.witness = (cur->lo + cur->hi) / 2;
        bool oracle = false;
        for (const Rat& x : cands) {
            bool all = true;
            for (int i : v.members)
                if (!sample[i].contains(x)) {
                    all = false;
                    break;
                }
            if (all) {
                oracle = true;
                break;
            }
        }
        r.verified &= (oracle == v.satisfiable);
        r.subsets.push_back(std::move(v));
    }
    return r;
}

// ---- certificate serialization ----

static nlohmann::json interval_json(const RatInterval& iv) {
    return nlohmann::json::array({rat_to_string(iv.lo), rat_to_string(iv.hi)});
}

static nlohmann::json clauses_json(const std::vector<ClauseReport>& cs) {
    auto arr = nlohmann::json::array();
    for (const auto& c : cs) {
        nlohmann::json j;
        j["name"] = c.name;
        j["ok"] = c.ok;
        if (c.witness) j["witness_point"] = rat_to_string(*c.witness);
        arr.push_back(j);
    }
    return arr;
}

std::string oag_certificate_json(const IndexedFamily& fam, const OagCertificate& c) {
    nlohmann::json j;
    j["op"] = "oag";
    j["tree"] = fam.index.serialize();
    auto ls = nlohmann::json::array(), vs = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
        ls.push_back(path_to_string(c.leaves[i]));
        vs.push_back(rat_to_string(c.values[i]));
    }
    j["counterexample"]["leaves"] = ls;
    j["counterexample"]["values"] = vs;
    return j.dump(2);
}

std::string multigraph_certificate_json(const IndexedFamily& fam, const Path& a1, const Path& a2,
                                        const Path& b1, const Path& b2) {
    nlohmann::json j;
    j["op"] = "multigraph";
    j["tree"] = fam.index.serialize();
    j["counterexample"]["pair_a"] = {path_to_string(a1), path_to_string(a2)};
    j["counterexample"]["pair_b"] = {path_to_string(b1), path_to_string(b2)};
    j["counterexample"]["meet_length_a"] = meet(a1, a2).size();
    j["counterexample"]["meet_length_b"] = meet(b1, b2).size();
    return j.dump(2);
}

std::string two_ip_certificate_json(const IndexedFamily& fam, const TwoIpCertificate& c) {
    nlohmann::json j;
    j["op"] = "2ip";
    j["tree"] = fam.index.serialize();
    auto ls = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) ls.push_back(path_to_string(c.leaves[i]));
    j["counterexample"]["leaves"] = ls;
    j["counterexample"]["phi_013"] = false;
    j["counterexample"]["phi_023"] = true;
    return j.dump(2);
}

std::string interval_family_json(const IntervalTreeFamily& fam) {
    nlohmann::json j;
    j["op"] = "sop2";
    auto nodes = nlohmann::json::array();
    for (NodeId v = 0; v < fam.index.size(); ++v) {
        nlohmann::json nd;
        nd["path"] = path_to_string(fam.index.path(v));
        nd["marked"] = fam.index.marked(v);
        nd["interval"] = interval_json(fam.iv[v]);
        if (fam.point[v]) nd["witness_point"] = rat_to_string(*fam.point[v]);
        nodes.push_back(nd);
    }
    j["nodes"] = nodes;
    return j.dump(2);
}

std::string sop3_replay_json(const Sop3Replay& r) {
    nlohmann::json j;
    j["op"] = "sop3-replay";
    j["n"] = r.n;
    j["sat"] = r.sat;
    if (!r.sat) {
        j["missing"] = r.missing;
        return j.dump(2);
    }
    j["eta"] = path_to_string(r.eta);
    j["nu"] = path_to_string(r.nu);
    auto paths = [&](const std::vector<Path>& v) {
        auto a = nlohmann::json::array();
        for (const auto& p : v) a.push_back(path_to_string(p));
        return a;
    };
    j["eta_l"] = paths(r.eta_l);
    j["eta_r"] = paths(r.eta_r);
    j["nu_l"] = paths(r.nu_l);
    j["nu_r"] = paths(r.nu_r);
    auto pairs = nlohmann::json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"a", interval_json(p.a)}, {"b", interval_json(p.b)}});
    j["pairs"] = pairs;
    j["clauses"] = clauses_json(r.clauses);
    j["verified"] = r.verified;
    return j.dump(2);
}

std::string intervals_to_sop3_json(const IntervalsToSop3& r) {
    nlohmann::json j;
    j["op"] = "intervals-to-sop3";
    auto ks = nlohmann::json::array();
    for (const auto& k : r.ks) ks.push_back(rat_to_string(k));
    j["k"] = ks;
    auto pairs = nlohmann::json::array();
    for (const auto& p : r.cks)
        pairs.push_back({{"a", interval_json(p.a)}, {"b", interval_json(p.b)}});
    j["pairs"] = pairs;
    j["clauses"] = clauses_json(r.clauses);
    j["verified"] = r.verified;
    return j.dump(2);
}

std::string sop3_to_intervals_json(const Sop3ToIntervals& r) {
    nlohmann::json j;
    j["op"] = "sop3-to-intervals";
    auto ivs = nlohmann::json::array();
    for (const auto& iv : r.sample) ivs.push_back(interval_json(iv));
    j["intervals"] = ivs;
    auto subs = nlohmann::json::array();
    for (const auto& s : r.subsets) {
        nlohmann::json sj;
        sj["members"] = s.members;
        sj["satisfiable"] = s.satisfiable;
        if (s.witness) sj["witness_point"] = rat_to_string(*s.witness);
        subs.push_back(sj);
    }
    j["subsets"] = subs;
    j["verified"] = r.verified;
    return j.dump(2);
}

}  // namespace treekit
