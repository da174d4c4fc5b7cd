#include "treekit/verify.hpp"

#include <algorithm>
#include <optional>
#include <vector>

#include "json.hpp"
#include "treekit/node.hpp"
#include "treekit/rational.hpp"

namespace treekit {

namespace {

using nlohmann::json;

struct CertError {
    std::string what;
};

Path jpath(const json& j) { return path_from_string(j.get<std::string>()); }

Rat jrat(const json& j) { return rat_from_string(j.get<std::string>()); }

RatInterval jiv(const json& j) {
    Rat lo = jrat(j.at(0)), hi = jrat(j.at(1));
    if (lo > hi) throw CertError{"interval endpoints out of order"};
    return RatInterval(lo, hi);
}

bool iv_disjoint(const RatInterval& a, const RatInterval& b) {
    return a.hi < b.lo || b.hi < a.lo;
}

int parse_index(const std::string& name, const std::string& key) {
    auto p = name.find(key);
    if (p == std::string::npos) throw CertError{"clause name lacks " + key + ": " + name};
    return std::stoi(name.substr(p + key.size()));
}

VerifyResult check_oag(const json& j) {
    const auto& ce = j.at("counterexample");
    std::vector<Path> ps;
    for (const auto& l : ce.at("leaves")) ps.push_back(jpath(l));
    std::vector<Rat> vs;
    for (const auto& v : ce.at("values")) vs.push_back(jrat(v));
    if (ps.size() != 4 || vs.size() != 4) return {false, "need 4 leaves and 4 values"};
    for (int i = 0; i < 3; ++i)
        if (!lex_less(ps[i], ps[i + 1])) return {false, "leaves not lex-increasing"};
    Path m01 = meet(ps[0], ps[1]), m12 = meet(ps[1], ps[2]), m23 = meet(ps[2], ps[3]);
    if (!is_proper_prefix(m12, m01)) return {false, "meet pattern fails: eta0^eta1 not above eta1^eta2"};
    if (!is_proper_prefix(m12, m23)) return {false, "meet pattern fails: eta2^eta3 not above eta1^eta2"};
    if (!(vs[1] - vs[0] < vs[3] - vs[1])) return {false, "inequality a1-a0 < a3-a1 fails"};
    if (!(vs[2] - vs[0] > vs[3] - vs[2])) return {false, "inequality a2-a0 > a3-a2 fails"};
    return {true, ""};
}

VerifyResult check_multigraph(const json& j) {
    const auto& ce = j.at("counterexample");
    Path a1 = jpath(ce.at("pair_a").at(0)), a2 = jpath(ce.at("pair_a").at(1));
    Path b1 = jpath(ce.at("pair_b").at(0)), b2 = jpath(ce.at("pair_b").at(1));
    if (a1 == a2 || b1 == b2) return {false, "degenerate pair"};
    std::size_t la = meet(a1, a2).size(), lb = meet(b1, b2).size();
    if (la != ce.at("meet_length_a").get<std::size_t>()) return {false, "stated meet length a wrong"};
    if (lb != ce.at("meet_length_b").get<std::size_t>()) return {false, "stated meet length b wrong"};
    if (la == lb) return {false, "meet lengths agree, not a counterexample"};
    return {true, ""};
}

// X pattern on raw paths: eta < nu < xi lex with eta^nu strictly below nu^xi.
bool x_pattern(const Path& eta, const Path& nu, const Path& xi) {
    return lex_less(eta, nu) && lex_less(nu, xi) && is_proper_prefix(meet(eta, nu), meet(nu, xi));
}

VerifyResult check_two_ip(const json& j) {
    const auto& ce = j.at("counterexample");
    std::vector<Path> ps;
    for (const auto& l : ce.at("leaves")) ps.push_back(jpath(l));
    if (ps.size() != 4) return {false, "need 4 leaves"};
    for (int i = 0; i < 3; ++i)
        if (!lex_less(ps[i], ps[i + 1])) return {false, "leaves not lex-increasing"};
    if (x_pattern(ps[0], ps[1], ps[3]) != ce.at("phi_013").get<bool>())
        return {false, "phi(a0,b1,c3) truth value wrong"};
    if (x_pattern(ps[0], ps[2], ps[3]) != ce.at("phi_023").get<bool>())
        return {false, "phi(a0,b2,c3) truth value wrong"};
    if (ce.at("phi_013").get<bool>() || !ce.at("phi_023").get<bool>())
        return {false, "certificate must have phi_013 false and phi_023 true"};
    return {true, ""};
}

VerifyResult check_sop2(const json& j) {
    struct Node {
        Path p;
        RatInterval iv;
        std::optional<Rat> pt;
    };
    std::vector<Node> ns;
    for (const auto& nd : j.at("nodes")) {
        Node n{jpath(nd.at("path")), jiv(nd.at("interval")), std::nullopt};
        if (nd.contains("witness_point")) n.pt = jrat(nd.at("witness_point"));
        ns.push_back(std::move(n));
    }
    for (std::size_t a = 0; a < ns.size(); ++a)
        for (std::size_t b = 0; b < ns.size(); ++b) {
            if (a == b) continue;
            if (is_prefix(ns[a].p, ns[b].p)) {
                if (ns[b].iv.lo < ns[a].iv.lo || ns[a].iv.hi < ns[b].iv.hi)
                    return {false, "nesting fails at " + path_to_string(ns[a].p)};
            } else if (a < b && incomparable(ns[a].p, ns[b].p)) {
                if (!iv_disjoint(ns[a].iv, ns[b].iv))
                    return {false, "disjointness fails at " + path_to_string(ns[a].p)};
            }
            if (ns[b].pt && is_prefix(ns[a].p, ns[b].p) && !ns[a].iv.contains(*ns[b].pt))
                return {false, "realization escapes " + path_to_string(ns[a].p)};
        }
    for (const auto& n : ns)
        if (n.pt && !n.iv.contains(*n.pt)) return {false, "realization outside own interval"};
    return {true, ""};
}

// Shared by the replay and the direct interval construction: clause names
// carry the indices, witness points certify the nonempty intersections.
VerifyResult check_interval_clauses(const json& j, const std::string& cons_key,
                                    const std::string& dis_first, const std::string& dis_second,
                                    bool first_le_second) {
    std::vector<RatInterval> as, bs;
    for (const auto& p : j.at("pairs")) {
        as.push_back(jiv(p.at("a")));
        bs.push_back(jiv(p.at("b")));
    }
    const int n = (int)as.size();
    if (n == 0) return {false, "no pairs"};
    int cons_seen = 0, dis_seen = 0;
    for (const auto& c : j.at("clauses")) {
        std::string name = c.at("name").get<std::string>();
        if (!c.at("ok").get<bool>()) return {false, "clause reported failing: " + name};
        if (name.rfind("consistency", 0) == 0) {
            int i = parse_index(name, cons_key);
            if (i < 0 || i >= n) return {false, "clause index out of range: " + name};
            if (!c.contains("witness_point")) return {false, "missing witness: " + name};
            Rat w = jrat(c.at("witness_point"));
            for (int k = 0; k <= i; ++k)
                if (!as[k].contains(w)) return {false, "witness escapes a-interval in " + name};
            for (int k = i + 1; k < n; ++k)
                if (!bs[k].contains(w)) return {false, "witness escapes b-interval in " + name};
            ++cons_seen;
        } else if (name.rfind("inconsistency", 0) == 0) {
            int f = parse_index(name, dis_first);
            int s = parse_index(name, dis_second);
            if (f < 0 || s < 0 || f >= n || s >= n || (first_le_second && f > s))
                return {false, "clause indices out of range: " + name};
            // b of the lower index against a of the higher index
            int bi = std::min(f, s), aj = std::max(f, s);
            if (!first_le_second && f == s) return {false, "degenerate clause: " + name};
            if (!iv_disjoint(as[aj], bs[bi])) return {false, "intervals intersect in " + name};
            ++dis_seen;
        } else {
            return {false, "unknown clause: " + name};
        }
    }
    if (cons_seen != n) return {false, "wrong number of consistency clauses"};
    int want = first_le_second ? n * (n + 1) / 2 : n * (n - 1) / 2;
    if (dis_seen != want) return {false, "wrong number of inconsistency clauses"};
    return {true, ""};
}

VerifyResult check_sop3_replay(const json& j) {
    if (!j.at("sat").get<bool>()) return {false, "certificate is UNSAT, nothing to verify"};
    return check_interval_clauses(j, "j=", "i=", "j=", true);
}

VerifyResult check_intervals_to_sop3(const json& j) {
    return check_interval_clauses(j, "i=", "j=", "i=", false);
}

VerifyResult check_sop3_to_intervals(const json& j) {
    std::vector<RatInterval> ivs;
    for (const auto& iv : j.at("intervals")) ivs.push_back(jiv(iv));
    std::vector<Rat> ends;
    for (const auto& iv : ivs) {
        ends.push_back(iv.lo);
        ends.push_back(iv.hi);
    }
    std::sort(ends.begin(), ends.end());
    if (std::adjacent_find(ends.begin(), ends.end()) != ends.end())
        return {false, "endpoints not pairwise distinct"};
    std::size_t want = (std::size_t(1) << ivs.size()) - 1;
    if (j.at("subsets").size() != want) return {false, "subset enumeration incomplete"};
    for (const auto& s : j.at("subsets")) {
        std::vector<int> ms = s.at("members").get<std::vector<int>>();
        if (ms.empty()) return {false, "empty subset listed"};
        for (int i : ms)
            if (i < 0 || i >= (int)ivs.size()) return {false, "subset member out of range"};
        if (s.at("satisfiable").get<bool>()) {
            if (!s.contains("witness_point")) return {false, "satisfiable subset lacks witness"};
            Rat w = jrat(s.at("witness_point"));
            for (int i : ms)
                if (!ivs[i].contains(w)) return {false, "witness outside member interval"};
        } else {
            // Helly in one dimension: no common point iff some pair disjoint.
            bool pair_found = false;
            for (std::size_t x = 0; x < ms.size() && !pair_found; ++x)
                for (std::size_t y = x + 1; y < ms.size() && !pair_found; ++y)
                    pair_found = iv_disjoint(ivs[ms[x]], ivs[ms[y]]);
            if (!pair_found) return {false, "unsatisfiable subset has no disjoint pair"};
        }
    }
    return {true, ""};
}

}  // namespace

VerifyResult verify_certificate(const std::string& json_text) {
    try {
        json j = json::parse(json_text);
        std::string op = j.at("op").get<std::string>();
        if (op == "oag") return check_oag(j);
        if (op == "multigraph") return check_multigraph(j);
        if (op == "2ip") return check_two_ip(j);
        if (op == "sop2") return check_sop2(j);
        if (op == "sop3-replay") return check_sop3_replay(j);
        if (op == "intervals-to-sop3") return check_intervals_to_sop3(j);
        if (op == "sop3-to-intervals") return check_sop3_to_intervals(j);
        return {false, "unknown op: " + op};
    } catch (const json::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what()};
    } catch (const CertError& e) {
        return {false, e.what};
    } catch (const std::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what()};
    }
}

}  // namespace treekit
