#include "treekit/patterns.hpp"

#include <algorithm>
#include <set>

#include "treekit/enumerate.hpp"

namespace treekit {

namespace {

void realize(const QfTypeCode& q, const MeetTree& B, const PatternConstraint& c,
             std::size_t limit, std::vector<NodeId>& tup, std::size_t pos,
             std::map<std::string, NodeId>& asg,
             std::vector<std::vector<NodeId>>& out) {
    if (limit && out.size() >= limit) return;
    if (pos == q.marks.size()) {
        if (qftp(B, tup, q.tag) == q && c.eval(B, asg)) out.push_back(tup);
        return;
    }
    std::string var = "x" + std::to_string(pos);
    bool has_flags = q.tag != LanguageTag::L0;
    bool want_mark = has_flags && q.leaf[static_cast<std::size_t>(q.marks[pos])];
    for (NodeId v = 0; v < B.size(); ++v) {
        if (has_flags && B.marked(v) != want_mark) continue;
        // repeated marks force repeated entries
        bool bad = false;
        for (std::size_t j = 0; j < pos; ++j) {
            if ((q.marks[j] == q.marks[pos]) != (tup[j] == v)) {
                bad = true;
                break;
            }
        }
        if (bad) continue;
        tup[pos] = v;
        asg[var] = v;
        if (c.eval_partial(B, asg)) realize(q, B, c, limit, tup, pos + 1, asg, out);
        asg.erase(var);
        if (limit && out.size() >= limit) return;
    }
}

// All strictly increasing n-tuples from pool, in lex order, fed to f;
// f returns true to stop.
bool inc_tuples(const std::vector<NodeId>& pool, std::size_t n, std::vector<NodeId>& cur,
                std::size_t from, const std::function<bool(const std::vector<NodeId>&)>& f) {
    if (cur.size() == n) return f(cur);
    for (std::size_t i = from; i + (n - cur.size()) <= pool.size(); ++i) {
        cur.push_back(pool[i]);
        if (inc_tuples(pool, n, cur, i + 1, f)) return true;
        cur.pop_back();
    }
    return false;
}

NodeId meet_all(const MeetTree& t, const std::vector<NodeId>& xs) {
    NodeId m = xs.front();
    for (NodeId v : xs) m = t.meet_node(m, v);
    return m;
}

void require_increasing_leaves(const MeetTree& t, const std::vector<NodeId>& xs,
                               const char* who) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!t.marked(xs[i])) throw TreeError(std::string(who) + ": entry not a marked leaf");
        if (i && !t.lex_lt(xs[i - 1], xs[i]))
            throw TreeError(std::string(who) + ": entries not lex-increasing");
    }
}

}  // namespace

std::vector<std::vector<NodeId>> find_realizations(const QfTypeCode& q, const MeetTree& B,
                                                   const PatternConstraint& c,
                                                   std::size_t limit) {
    for (const auto& v : c.variables()) {
        if (v.size() < 2 || v[0] != 'x')
            throw std::invalid_argument("constraint variable out of range: " + v);
        std::size_t idx = std::stoul(v.substr(1));
        if (idx >= q.marks.size())
            throw std::invalid_argument("constraint variable out of range: " + v);
    }
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> tup(q.marks.size(), -1);
    std::map<std::string, NodeId> asg;
    if (q.marks.empty()) {
        if (qftp(B, {}, q.tag) == q) out.push_back({});
        return out;
    }
    realize(q, B, c, limit, tup, 0, asg, out);
    return out;
}

SolveResult solve_switcheroo1(const MeetTree& T, const std::vector<NodeId>& etas,
                              NodeId eta_n) {
    std::vector<NodeId> all = etas;
    all.push_back(eta_n);
    require_increasing_leaves(T, all, "switcheroo1");
    if (etas.empty()) throw TreeError("switcheroo1: empty eta tuple");

    NodeId root = 0;  // lex-least node is the tree minimum
    if (!T.le(root, eta_n)) throw TreeError("switcheroo1: tree has no common root");
    std::vector<NodeId> target_tuple = etas;
    target_tuple.push_back(root);
    QfTypeCode target = qftp(T, target_tuple, LanguageTag::L0P);

    std::vector<NodeId> leaves = T.marked_leaves();
    SolveResult res;
    std::vector<NodeId> cur;
    inc_tuples(leaves, etas.size(), cur, 0, [&](const std::vector<NodeId>& nu) {
        NodeId m = meet_all(T, nu);
        if (!T.incomp(eta_n, m) || !T.lex_lt(eta_n, m)) return false;
        std::vector<NodeId> tup = nu;
        tup.push_back(root);
        if (!(qftp(T, tup, LanguageTag::L0P) == target)) return false;
        res.sat = true;
        res.nu = nu;
        return true;
    });
    return res;
}

bool check_switcheroo1(const MeetTree& T, const std::vector<NodeId>& etas, NodeId eta_n,
                       const std::vector<NodeId>& nu) {
    if (nu.size() != etas.size() || etas.empty()) return false;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        if (!T.marked(nu[i]) || !T.is_maximal(nu[i])) return false;
        if (i && !T.lex_lt(nu[i - 1], nu[i])) return false;
    }
    NodeId root = 0;
    NodeId m = meet_all(T, nu);
    if (!T.incomp(eta_n, m)) return false;
    if (!T.lex_lt(eta_n, m)) return false;
    std::vector<NodeId> a = etas, b = nu;
    a.push_back(root);
    b.push_back(root);
    return qftp(T, a, LanguageTag::L0P) == qftp(T, b, LanguageTag::L0P);
}

SolveResult solve_switcheroo2(const MeetTree& T, NodeId eta0,
                              const std::vector<NodeId>& fan) {
    std::vector<NodeId> all{eta0};
    all.insert(all.end(), fan.begin(), fan.end());
    require_increasing_leaves(T, all, "switcheroo2");
    if (fan.empty()) throw TreeError("switcheroo2: empty fan");
    if (fan.size() >= 2 && !is_fan(T, fan)) throw TreeError("switcheroo2: not a fan");
    NodeId zstar = meet_all(T, fan);
    if (!T.incomp(eta0, zstar)) throw TreeError("switcheroo2: eta0 comparable with fan meet");

    QfTypeCode target = qftp(T, fan, LanguageTag::L0P);
    std::vector<NodeId> leaves = T.marked_leaves();
    SolveResult res;
    std::vector<NodeId> cur;
    inc_tuples(leaves, fan.size(), cur, 0, [&](const std::vector<NodeId>& nu) {
        NodeId m = meet_all(T, nu);
        if (!T.lex_lt(m, eta0)) return false;
        // eta0 with nu-bar must be a fan: pairwise incomparable, one meet
        std::vector<NodeId> comb{eta0};
        comb.insert(comb.end(), nu.begin(), nu.end());
        NodeId mc = T.meet_node(eta0, nu.front());
        for (std::size_t i = 0; i < comb.size(); ++i)
            for (std::size_t j = i + 1; j < comb.size(); ++j) {
                if (!T.incomp(comb[i], comb[j])) return false;
                if (T.meet_node(comb[i], comb[j]) != mc) return false;
            }
        if (!(qftp(T, nu, LanguageTag::L0P) == target)) return false;
        res.sat = true;
        res.nu = nu;
        return true;
    });
    return res;
}

bool check_switcheroo2(const MeetTree& T, NodeId eta0, const std::vector<NodeId>& fan,
                       const std::vector<NodeId>& nu) {
    if (nu.size() != fan.size() || nu.empty()) return false;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        if (!T.marked(nu[i]) || !T.is_maximal(nu[i])) return false;
        if (i && !T.lex_lt(nu[i - 1], nu[i])) return false;
    }
    if (!(qftp(T, nu, LanguageTag::L0P) == qftp(T, fan, LanguageTag::L0P))) return false;
    NodeId m = meet_all(T, nu);
    if (!T.lex_lt(m, eta0)) return false;
    // eta0 with nu-bar must form a fan
    std::vector<NodeId> f{eta0};
    f.insert(f.end(), nu.begin(), nu.end());
    NodeId mc = T.meet_node(eta0, nu.front());
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            if (!T.incomp(f[i], f[j])) return false;
            if (T.meet_node(f[i], f[j]) != mc) return false;
        }
    return true;
}

AgeReport age_check(const MeetTree& I, int k) {
    if (k < 1) throw TreeError("age_check: k must be >= 1");
    std::set<QfTypeCode> realized;
    // enumerate meet-closed subsets of size <= k
    std::vector<NodeId> cur;
    std::function<void(NodeId)> rec = [&](NodeId from) {
        if (!cur.empty()) {
            auto cl = meet_closure(I, cur);
            if (cl.size() == cur.size()) realized.insert(qftp(I, cl, LanguageTag::L0P));
        }
        if (static_cast<int>(cur.size()) == k) return;
        for (NodeId v = from; v < I.size(); ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);

    AgeReport rep;
    rep.realized.assign(realized.begin(), realized.end());
    for (const auto& t : enumerate_classes_up_to(k)) {
        std::vector<NodeId> all;
        for (NodeId v = 0; v < t.size(); ++v) all.push_back(v);
        QfTypeCode code = qftp(t, all, LanguageTag::L0P);
        if (!realized.count(code)) rep.missing.push_back(code);
    }
    rep.complete = rep.missing.empty();
    return rep;
}

}  // namespace treekit
