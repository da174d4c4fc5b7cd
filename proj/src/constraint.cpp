#include "treekit/constraint.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace treekit {

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

}  // namespace

PatternConstraint PatternConstraint::parse(const std::string& text) {
    PatternConstraint pc;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto sep = text.find(';', pos);
        std::string part = strip(text.substr(pos, sep == std::string::npos ? sep : sep - pos));
        pos = sep == std::string::npos ? text.size() + 1 : sep + 1;
        if (part.empty()) continue;

        Atom a{};
        auto fail = [&] { throw std::invalid_argument("bad constraint atom: " + part); };
        auto cut = [&](const std::string& op) -> std::pair<std::string, std::string> {
            auto k = part.find(op);
            return {strip(part.substr(0, k)), strip(part.substr(k + op.size()))};
        };
        if (part.rfind("!P(", 0) == 0 && part.back() == ')') {
            a.kind = Kind::NOMARK;
            a.x = strip(part.substr(3, part.size() - 4));
            if (!is_ident(a.x)) fail();
        } else if (part.rfind("P(", 0) == 0 && part.back() == ')') {
            a.kind = Kind::MARK;
            a.x = strip(part.substr(2, part.size() - 3));
            if (!is_ident(a.x)) fail();
        } else if (part.find("<lex") != std::string::npos) {
            a.kind = Kind::LEX;
            std::tie(a.x, a.y) = cut("<lex");
            if (!is_ident(a.x) || !is_ident(a.y)) fail();
        } else if (part.find("incomp") != std::string::npos) {
            a.kind = Kind::INCOMP;
            std::tie(a.x, a.y) = cut("incomp");
            if (!is_ident(a.x) || !is_ident(a.y)) fail();
        } else if (part.find("<=") != std::string::npos) {
            a.kind = Kind::LE;
            std::tie(a.x, a.y) = cut("<=");
            if (!is_ident(a.x) || !is_ident(a.y)) fail();
        } else if (part.find('^') != std::string::npos) {
            a.kind = Kind::MEET;
            auto [lhs, rest] = cut("^");
            if (rest.find('=') == std::string::npos) fail();
            auto k = rest.find('=');
            a.x = lhs;
            a.y = strip(rest.substr(0, k));
            a.z = strip(rest.substr(k + 1));
            if (!is_ident(a.x) || !is_ident(a.y) || !is_ident(a.z)) fail();
        } else if (part.find('<') != std::string::npos) {
            a.kind = Kind::LT;
            std::tie(a.x, a.y) = cut("<");
            if (!is_ident(a.x) || !is_ident(a.y)) fail();
        } else if (part.find('=') != std::string::npos) {
            a.kind = Kind::CONST;
            auto k = part.find('=');
            a.x = strip(part.substr(0, k));
            std::string rhs = strip(part.substr(k + 1));
            if (!is_ident(a.x)) fail();
            try {
                a.c = path_from_string(rhs);
            } catch (const std::invalid_argument&) {
                fail();
            }
        } else {
            fail();
        }
        pc.atoms_.push_back(std::move(a));
    }
    return pc;
}

std::vector<std::string> PatternConstraint::variables() const {
    std::set<std::string> s;
    for (const auto& a : atoms_) {
        s.insert(a.x);
        if (!a.y.empty()) s.insert(a.y);
        if (!a.z.empty()) s.insert(a.z);
    }
    return {s.begin(), s.end()};
}

PatternConstraint::Tri PatternConstraint::eval_atom(const MeetTree& t, const Atom& a,
                                                    const std::map<std::string, NodeId>& asg,
                                                    bool partial) const {
    auto get = [&](const std::string& v) -> std::optional<NodeId> {
        auto it = asg.find(v);
        if (it == asg.end()) {
            if (!partial) throw std::invalid_argument("unassigned constraint variable: " + v);
            return std::nullopt;
        }
        return it->second;
    };
    auto x = get(a.x);
    if (!x) return Tri::Unknown;
    std::optional<NodeId> y, z;
    if (!a.y.empty()) {
        y = get(a.y);
        if (!y) return Tri::Unknown;
    }
    if (!a.z.empty()) {
        z = get(a.z);
        if (!z) return Tri::Unknown;
    }
    bool ok = false;
    switch (a.kind) {
        case Kind::LE: ok = t.le(*x, *y); break;
        case Kind::LT: ok = t.lt(*x, *y); break;
        case Kind::LEX: ok = t.lex_lt(*x, *y); break;
        case Kind::INCOMP: ok = t.incomp(*x, *y); break;
        case Kind::MEET: ok = t.meet_node(*x, *y) == *z; break;
        case Kind::MARK: ok = t.marked(*x); break;
        case Kind::NOMARK: ok = !t.marked(*x); break;
        case Kind::CONST: {
            auto v = t.find(a.c);
            ok = v && *v == *x;
            break;
        }
    }
    return ok ? Tri::True : Tri::False;
}

bool PatternConstraint::eval(const MeetTree& t,
                             const std::map<std::string, NodeId>& asg) const {
    for (const auto& a : atoms_)
        if (eval_atom(t, a, asg, false) != Tri::True) return false;
    return true;
}

bool PatternConstraint::eval_partial(const MeetTree& t,
                                     const std::map<std::string, NodeId>& asg) const {
    for (const auto& a : atoms_)
        if (eval_atom(t, a, asg, true) == Tri::False) return false;
    return true;
}

}  // namespace treekit
