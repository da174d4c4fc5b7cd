#include "treekit/qftp.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace treekit {

LanguageTag tag_from_string(const std::string& s) {
    if (s == "L0") return LanguageTag::L0;
    if (s == "L0P") return LanguageTag::L0P;
    if (s == "LS") return LanguageTag::LS;
    throw std::invalid_argument("unknown language tag: " + s);
}

std::string tag_to_string(LanguageTag tag) {
    switch (tag) {
        case LanguageTag::L0: return "L0";
        case LanguageTag::L0P: return "L0P";
        case LanguageTag::LS: return "LS";
    }
    return "?";
}

bool QfTypeCode::operator<(const QfTypeCode& o) const {
    return std::tie(tag, shape, leaf, level, marks) <
           std::tie(o.tag, o.shape, o.leaf, o.level, o.marks);
}

std::string QfTypeCode::to_string() const {
    std::string s = tag_to_string(tag) + "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ' ';
        s += path_to_string(shape[i]);
        if (!leaf.empty() && leaf[i]) s += "P";
        if (!level.empty()) {
            s += '@';
            s += level[i] == kTopLevel ? "w" : std::to_string(level[i]);
        }
    }
    s += "; marks";
    for (int m : marks) s += ' ' + std::to_string(m);
    s += ']';
    return s;
}

QfTypeCode qftp(const MeetTree& t, const std::vector<NodeId>& tuple, LanguageTag tag) {
    std::vector<NodeId> cl = meet_closure(t, tuple);  // sorted lex
    const std::size_t m = cl.size();

    QfTypeCode code;
    code.tag = tag;
    code.shape.resize(m);
    if (m > 0) code.shape[0] = {};  // closure minimum: a prefix of every member
    // Closure nodes arrive in lex order, so each node's longest proper
    // prefix inside the closure appears earlier; child ranks follow lex
    // order of arrival.
    std::vector<int> child_count(m, 0);
    for (std::size_t i = 1; i < m; ++i) {
        int par = -1;
        for (std::size_t j = 0; j < i; ++j)
            if (is_proper_prefix(t.path(cl[j]), t.path(cl[i])))
                if (par < 0 || t.path(cl[static_cast<std::size_t>(par)]).size() <
                                   t.path(cl[j]).size())
                    par = static_cast<int>(j);
        if (par < 0) throw TreeError("closure lost its minimum");
        code.shape[i] = code.shape[static_cast<std::size_t>(par)];
        code.shape[i].push_back(
            static_cast<std::uint32_t>(child_count[static_cast<std::size_t>(par)]++));
    }

    if (tag != LanguageTag::L0) {
        code.leaf.resize(m);
        for (std::size_t i = 0; i < m; ++i) code.leaf[i] = t.marked(cl[i]);
    }
    if (tag == LanguageTag::LS) {
        code.level.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            code.level[i] =
                t.marked(cl[i]) ? kTopLevel : static_cast<int>(t.path(cl[i]).size());
    }

    code.marks.reserve(tuple.size());
    for (NodeId v : tuple) {
        auto it = std::lower_bound(cl.begin(), cl.end(), v);
        code.marks.push_back(static_cast<int>(it - cl.begin()));
    }
    return code;
}

SameTypeResult same_type_implication(const MeetTree& t,
                                     const std::vector<NodeId>& a,
                                     const std::vector<NodeId>& b) {
    SameTypeResult r{};
    r.l0p_a = qftp(t, a, LanguageTag::L0P);
    r.l0p_b = qftp(t, b, LanguageTag::L0P);
    r.ls_a = qftp(t, a, LanguageTag::LS);
    r.ls_b = qftp(t, b, LanguageTag::LS);

    auto closed = [&](const std::vector<NodeId>& tup) {
        auto cl = meet_closure(t, tup);
        for (NodeId v : cl)
            if (std::find(tup.begin(), tup.end(), v) == tup.end()) return false;
        return true;
    };
    bool pre = a.size() == b.size() && closed(a) && closed(b);
    if (pre) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            bool ma = t.marked(a[i]), mb = t.marked(b[i]);
            if (ma != mb || (!ma && a[i] != b[i])) {
                pre = false;
                break;
            }
        }
    }
    if (!pre) {
        r.verdict = SameTypeVerdict::PRECONDITION_UNMET;
    } else if (!(r.l0p_a == r.l0p_b)) {
        r.verdict = SameTypeVerdict::VACUOUS;
    } else {
        r.verdict = r.ls_a == r.ls_b ? SameTypeVerdict::VERIFIED : SameTypeVerdict::VIOLATION;
    }
    return r;
}

}  // namespace treekit
