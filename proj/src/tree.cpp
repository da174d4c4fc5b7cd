#include "treekit/tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace treekit {

MeetTree MeetTree::build(std::vector<std::pair<Path, bool>> nodes, bool autoclose) {
    std::map<Path, bool, LexLess> m;
    for (auto& [p, mk] : nodes) {
        auto [it, fresh] = m.emplace(p, mk);
        if (!fresh && it->second != mk)
            throw TreeError("conflicting marks on node " + path_to_string(p));
    }
    // Meet completion. One pass over pairs is enough (see meet_closure).
    std::vector<Path> missing;
    {
        std::vector<const Path*> ps;
        for (auto& [p, mk] : m) ps.push_back(&p);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                Path w = meet(*ps[i], *ps[j]);
                if (!m.count(w)) missing.push_back(std::move(w));
            }
    }
    if (!missing.empty()) {
        if (!autoclose)
            throw TreeError("missing meet node " + path_to_string(missing.front()));
        for (auto& w : missing) m.emplace(std::move(w), false);
    }

    MeetTree t;
    for (auto& [p, mk] : m) {
        t.paths_.push_back(p);
        t.marked_.push_back(mk);
    }
    for (int v = 0; v < t.size(); ++v)
        if (t.marked_[static_cast<std::size_t>(v)] && !t.is_maximal(v))
            throw TreeError("mark on non-maximal node " + path_to_string(t.path(v)));
    return t;
}

MeetTree MeetTree::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool autoclose = false;
    bool first = true;
    std::vector<std::pair<Path, bool>> nodes;
    while (std::getline(in, line)) {
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string s = line.substr(b, e - b + 1);
        if (s[0] == '#') {
            if (first && s == "#autoclose") autoclose = true;
            first = false;
            continue;
        }
        first = false;
        bool mk = false;
        if (s.size() > 2 && s.substr(s.size() - 2) == " P") {
            mk = true;
            s = s.substr(0, s.size() - 2);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
        }
        try {
            nodes.emplace_back(path_from_string(s), mk);
        } catch (const std::invalid_argument& ex) {
            throw TreeError(ex.what());
        }
    }
    return build(std::move(nodes), autoclose);
}

std::string MeetTree::serialize() const {
    std::string out;
    for (int v = 0; v < size(); ++v) {
        out += path_to_string(path(v));
        if (marked(v)) out += " P";
        out += '\n';
    }
    return out;
}

std::optional<NodeId> MeetTree::find(const Path& p) const {
    auto it = std::lower_bound(paths_.begin(), paths_.end(), p, LexLess{});
    if (it != paths_.end() && *it == p)
        return static_cast<NodeId>(it - paths_.begin());
    return std::nullopt;
}

NodeId MeetTree::require(const Path& p) const {
    auto v = find(p);
    if (!v) throw TreeError("no such node: " + path_to_string(p));
    return *v;
}

NodeId MeetTree::meet_node(NodeId a, NodeId b) const {
    Path w = meet(path(a), path(b));
    auto v = find(w);
    if (!v) throw TreeError("tree not meet-closed at " + path_to_string(w));
    return *v;
}

std::optional<NodeId> MeetTree::parent(NodeId v) const {
    const Path& p = path(v);
    std::optional<NodeId> best;
    for (NodeId u = 0; u < v; ++u)
        if (is_proper_prefix(path(u), p) && (!best || path(*best).size() < path(u).size()))
            best = u;
    return best;
}

bool MeetTree::is_maximal(NodeId v) const {
    for (NodeId u = v + 1; u < size(); ++u)
        if (is_proper_prefix(path(v), path(u))) return false;
    return true;
}

std::vector<NodeId> MeetTree::marked_leaves() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < size(); ++v)
        if (marked(v)) out.push_back(v);
    return out;
}

std::vector<NodeId> MeetTree::maximal_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < size(); ++v)
        if (is_maximal(v)) out.push_back(v);
    return out;
}

std::vector<NodeId> meet_closure(const MeetTree& t, const std::vector<NodeId>& tuple) {
    std::set<NodeId> s(tuple.begin(), tuple.end());
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j)
            s.insert(t.meet_node(tuple[i], tuple[j]));
    return std::vector<NodeId>(s.begin(), s.end());
}

bool is_fan(const MeetTree& t, const std::vector<NodeId>& tuple) {
    if (tuple.size() < 2) throw TreeError("fan check needs at least 2 nodes");
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
            if (tuple[i] == tuple[j]) throw TreeError("fan check: duplicate entry");
            if (!t.incomp(tuple[i], tuple[j]))
                throw TreeError("fan check: comparable entries");
        }
    NodeId w = t.meet_node(tuple[0], tuple[1]);
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j)
            if (t.meet_node(tuple[i], tuple[j]) != w) return false;
    return true;
}

std::vector<NodeId> cone_leaves(const MeetTree& t, NodeId v) {
    std::vector<NodeId> out;
    for (NodeId u = 0; u < t.size(); ++u)
        if (t.marked(u) && t.le(v, u)) out.push_back(u);
    return out;
}

bool leaf_pattern_x(const MeetTree& t, NodeId eta, NodeId nu, NodeId xi) {
    for (NodeId v : {eta, nu, xi})
        if (!t.marked(v)) throw TreeError("leaf pattern needs marked leaves");
    if (eta == nu || nu == xi || eta == xi) throw TreeError("leaf pattern needs distinct leaves");
    if (!(t.lex_lt(eta, nu) && t.lex_lt(nu, xi))) return false;
    return t.lt(t.meet_node(eta, nu), t.meet_node(nu, xi));
}

}  // namespace treekit
