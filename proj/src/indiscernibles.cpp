#include "treekit/indiscernibles.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace treekit {

bool LinearPredicate::holds(const std::vector<Rat>& xs) const {
    if (xs.size() != coeffs.size()) throw std::invalid_argument("predicate arity mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += coeffs[i] * xs[i];
    if (cmp == "<") return s < rhs;
    if (cmp == "<=") return s <= rhs;
    if (cmp == "=") return s == rhs;
    throw std::invalid_argument("bad comparator: " + cmp);
}

void IndexedFamily::validate() const {
    if (arity < 1) throw TreeError("family arity must be positive");
    for (NodeId i = 0; i < index.size(); ++i) {
        if (rational_target) {
            auto it = assign_rat.find(i);
            if (it == assign_rat.end() || (int)it->second.size() != arity)
                throw TreeError("missing or malformed assignment for node " +
                                path_to_string(index.path(i)));
        } else {
            auto it = assign_rel.find(i);
            if (it == assign_rel.end() || (int)it->second.size() != arity)
                throw TreeError("missing or malformed assignment for node " +
                                path_to_string(index.path(i)));
            for (int v : it->second)
                if (v < 0 || v >= target.universe) throw TreeError("assignment out of universe");
        }
    }
    if (rational_target) {
        for (const auto& p : preds)
            if (p.coeffs.empty()) throw TreeError("empty predicate " + p.name);
    } else {
        for (const auto& r : target.rels)
            for (const auto& t : r.tuples)
                if ((int)t.size() != r.arity) throw TreeError("relation tuple arity mismatch");
    }
}

// All patterns of k positions out of m, in odometer order, passed to fn.
static void for_patterns(std::size_t m, std::size_t k,
                         const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> pat(k, 0);
    while (true) {
        fn(pat);
        std::size_t i = k;
        while (i > 0 && pat[i - 1] + 1 == m) pat[--i] = 0;
        if (i == 0) return;
        ++pat[i - 1];
    }
}

std::string IndexedFamily::code(const std::vector<NodeId>& idx_tuple,
                                const std::vector<NodeId>& params) const {
    std::ostringstream out;
    if (rational_target) {
        std::vector<Rat> xs;
        for (NodeId n : idx_tuple) {
            const auto& t = assign_rat.at(n);
            xs.insert(xs.end(), t.begin(), t.end());
        }
        for (NodeId n : params) {
            const auto& t = assign_rat.at(n);
            xs.insert(xs.end(), t.begin(), t.end());
        }
        out << "ord:";
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j)
                out << (xs[i] < xs[j] ? '<' : xs[i] == xs[j] ? '=' : '>');
        for (const auto& p : preds) {
            out << ";" << p.name << ":";
            std::vector<Rat> args(p.coeffs.size());
            for_patterns(xs.size(), p.coeffs.size(), [&](const std::vector<std::size_t>& pat) {
                for (std::size_t i = 0; i < pat.size(); ++i) args[i] = xs[pat[i]];
                out << (p.holds(args) ? '1' : '0');
            });
        }
    } else {
        std::vector<int> xs;
        for (NodeId n : idx_tuple) {
            const auto& t = assign_rel.at(n);
            xs.insert(xs.end(), t.begin(), t.end());
        }
        for (NodeId n : params) {
            const auto& t = assign_rel.at(n);
            xs.insert(xs.end(), t.begin(), t.end());
        }
        out << "eq:";
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j) out << (xs[i] == xs[j] ? '1' : '0');
        for (std::size_t r = 0; r < target.rels.size(); ++r) {
            const auto& rel = target.rels[r];
            out << ";" << rel.name << ":";
            std::vector<int> args(rel.arity);
            for_patterns(xs.size(), rel.arity, [&](const std::vector<std::size_t>& pat) {
                for (std::size_t i = 0; i < pat.size(); ++i) args[i] = xs[pat[i]];
                out << (rel.tuples.count(args) ? '1' : '0');
            });
        }
    }
    return out.str();
}

IndiscResult check_indexed_indiscernible(const IndexedFamily& f, LanguageTag tag, int n_max) {
    f.validate();
    IndiscResult res;
    std::map<std::string, std::pair<std::vector<NodeId>, std::string>> seen;
    const NodeId n_nodes = f.index.size();
    for (int n = 1; n <= n_max; ++n) {
        std::vector<NodeId> tup(n, 0);
        while (true) {
            ++res.tuples_checked;
            std::string key = qftp(f.index, tup, tag).to_string();
            std::string c = f.code(tup);
            auto [it, fresh] = seen.emplace(key, std::make_pair(tup, c));
            if (!fresh && it->second.second != c) {
                res.ok = false;
                res.tuple_a = it->second.first;
                res.tuple_b = tup;
                res.code_a = it->second.second;
                res.code_b = c;
                return res;
            }
            int i = n;
            while (i > 0 && tup[i - 1] + 1 == n_nodes) tup[--i] = 0;
            if (i == 0) break;
            ++tup[i - 1];
        }
    }
    return res;
}

// Order-indiscernibility of increasing tuples over a fixed leaf pool: all
// tuples of the same length must share a code over the given parameters.
static IndiscResult order_indisc(const IndexedFamily& f, const std::vector<NodeId>& pool,
                                 const std::vector<NodeId>& params, int n_max) {
    IndiscResult res;
    for (int n = 1; n <= n_max && n <= (int)pool.size(); ++n) {
        std::vector<std::size_t> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::vector<NodeId> first_tup;
        std::string first_code;
        while (true) {
            std::vector<NodeId> tup(n);
            for (int i = 0; i < n; ++i) tup[i] = pool[idx[i]];
            std::string c = f.code(tup, params);
            ++res.tuples_checked;
            if (first_tup.empty()) {
                first_tup = tup;
                first_code = c;
            } else if (c != first_code) {
                res.ok = false;
                res.tuple_a = first_tup;
                res.tuple_b = tup;
                res.code_a = first_code;
                res.code_b = c;
                return res;
            }
            int i = n - 1;
            while (i >= 0 && idx[i] == pool.size() - (n - i)) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return res;
}

IndiscResult check_treetop_collapse(const IndexedFamily& f, int n_max) {
    f.validate();
    auto leaves = f.index.marked_leaves();
    if (leaves.empty()) throw TreeError("treetop collapse needs marked leaves");
    return order_indisc(f, leaves, {NodeId(0)}, n_max);
}

IndiscResult check_cone_indiscernible(const IndexedFamily& f, NodeId xi, int n_max) {
    f.validate();
    std::vector<NodeId> pool;
    for (NodeId l : f.index.marked_leaves())
        if (f.index.le(xi, l)) pool.push_back(l);
    if (pool.empty()) throw TreeError("cone has no marked leaves");
    return order_indisc(f, pool, {xi}, n_max);
}

SideSetResult check_side_sets(const IndexedFamily& f, NodeId nu, int n_max) {
    f.validate();
    SideSetResult r;
    for (NodeId l : f.index.marked_leaves()) {
        NodeId m = f.index.meet_node(l, nu);
        if (m == nu || m == l) continue;  // comparable with nu
        (f.index.lex_lt(l, nu) ? r.left_leaves : r.right_leaves).push_back(l);
    }
    std::vector<NodeId> strong_params;
    for (NodeId i = 0; i < f.index.size(); ++i)
        if (f.index.le(nu, i)) strong_params.push_back(i);
    r.left = order_indisc(f, r.left_leaves, {nu}, n_max);
    r.right = order_indisc(f, r.right_leaves, {nu}, n_max);
    r.left_strong = order_indisc(f, r.left_leaves, strong_params, n_max);
    r.right_strong = order_indisc(f, r.right_leaves, strong_params, n_max);
    return r;
}

ExtractResult extract_copy(const IndexedFamily& f, const MeetTree& j, LanguageTag tag,
                           int n_max, std::size_t budget) {
    f.validate();
    ExtractResult res;
    if (budget == 0) return res;
    const bool unlimited = budget == std::numeric_limits<std::size_t>::max();
    auto embs = enumerate_embeddings(j, f.index, unlimited ? 0 : budget + 1);
    res.search_complete = unlimited || embs.size() <= budget;
    if (!unlimited && embs.size() > budget) embs.resize(budget);
    for (const auto& e : embs) {
        ++res.embeddings_tried;
        IndexedFamily sub;
        sub.index = j;
        sub.arity = f.arity;
        sub.rational_target = f.rational_target;
        sub.target = f.target;
        sub.preds = f.preds;
        for (NodeId i = 0; i < j.size(); ++i) {
            if (f.rational_target)
                sub.assign_rat[i] = f.assign_rat.at(e.img[i]);
            else
                sub.assign_rel[i] = f.assign_rel.at(e.img[i]);
        }
        if (check_indexed_indiscernible(sub, tag, n_max).ok) {
            res.status = ExtractResult::FOUND;
            res.emb = e;
            res.sub = std::move(sub);
            return res;
        }
    }
    return res;
}

IndexedFamily family_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw TreeError(std::string("bad family json: ") + e.what());
    }
    IndexedFamily f;
    try {
        f.index = MeetTree::parse(j.at("tree").get<std::string>());
        f.arity = j.at("arity").get<int>();
        const auto& tgt = j.at("target");
        if (tgt.is_string() && tgt.get<std::string>() == "rationals") {
            f.rational_target = true;
            for (const auto& p : j.value("predicates", nlohmann::json::array())) {
                LinearPredicate lp;
                lp.name = p.at("name").get<std::string>();
                for (const auto& c : p.at("coeffs"))
                    lp.coeffs.push_back(rat_from_string(c.get<std::string>()));
                lp.cmp = p.at("cmp").get<std::string>();
                lp.rhs = rat_from_string(p.at("rhs").get<std::string>());
                f.preds.push_back(std::move(lp));
            }
        } else {
            f.target.universe = tgt.at("universe").get<int>();
            for (const auto& r : tgt.value("relations", nlohmann::json::array())) {
                RelStructure::Rel rel;
                rel.name = r.at("name").get<std::string>();
                rel.arity = r.at("arity").get<int>();
                for (const auto& t : r.at("tuples")) rel.tuples.insert(t.get<std::vector<int>>());
                f.target.rels.push_back(std::move(rel));
            }
        }
        for (const auto& [key, val] : j.at("assignment").items()) {
            NodeId n = f.index.require(path_from_string(key));
            if (f.rational_target) {
                std::vector<Rat> t;
                for (const auto& v : val) t.push_back(rat_from_string(v.get<std::string>()));
                f.assign_rat[n] = std::move(t);
            } else {
                f.assign_rel[n] = val.get<std::vector<int>>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw TreeError(std::string("bad family json: ") + e.what());
    }
    f.validate();
    return f;
}

std::string family_to_json(const IndexedFamily& f) {
    f.validate();
    nlohmann::json j;
    j["tree"] = f.index.serialize();
    j["arity"] = f.arity;
    if (f.rational_target) {
        j["target"] = "rationals";
        auto preds = nlohmann::json::array();
        for (const auto& p : f.preds) {
            nlohmann::json pj;
            pj["name"] = p.name;
            auto cs = nlohmann::json::array();
            for (const auto& c : p.coeffs) cs.push_back(rat_to_string(c));
            pj["coeffs"] = cs;
            pj["cmp"] = p.cmp;
            pj["rhs"] = rat_to_string(p.rhs);
            preds.push_back(pj);
        }
        j["predicates"] = preds;
    } else {
        nlohmann::json tgt;
        tgt["universe"] = f.target.universe;
        auto rels = nlohmann::json::array();
        for (const auto& r : f.target.rels) {
            nlohmann::json rj;
            rj["name"] = r.name;
            rj["arity"] = r.arity;
            rj["tuples"] = r.tuples;
            rels.push_back(rj);
        }
        tgt["relations"] = rels;
        j["target"] = tgt;
    }
    nlohmann::json asg;
    for (NodeId i = 0; i < f.index.size(); ++i) {
        std::string key = path_to_string(f.index.path(i));
        if (f.rational_target) {
            auto vs = nlohmann::json::array();
            for (const auto& v : f.assign_rat.at(i)) vs.push_back(rat_to_string(v));
            asg[key] = vs;
        } else {
            asg[key] = f.assign_rel.at(i);
        }
    }
    j["assignment"] = asg;
    return j.dump(2);
}

}  // namespace treekit
