#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace treekit {

// A node of a word tree: a finite sequence of naturals. The root is the
// empty sequence.
using Path = std::vector<std::uint32_t>;

inline bool is_prefix(const Path& a, const Path& b) {
    if (a.size() > b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

inline bool is_proper_prefix(const Path& a, const Path& b) {
    return a.size() < b.size() && is_prefix(a, b);
}

// Longest common prefix = binary meet in the word tree.
inline Path meet(const Path& a, const Path& b) {
    std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return Path(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
}

inline bool incomparable(const Path& a, const Path& b) {
    return !is_prefix(a, b) && !is_prefix(b, a);
}

// Prefix-first lexicographic order: a proper prefix precedes all of its
// extensions; otherwise compare at the first differing coordinate.
inline bool lex_less(const Path& a, const Path& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

struct LexLess {
    bool operator()(const Path& a, const Path& b) const { return lex_less(a, b); }
};

// Text form: dot-separated coordinates, "-" for the root.
inline std::string path_to_string(const Path& p) {
    if (p.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(p[i]);
    }
    return s;
}

inline Path path_from_string(const std::string& s) {
    if (s == "-") return {};
    Path p;
    std::size_t i = 0;
    if (s.empty()) throw std::invalid_argument("empty path");
    while (i < s.size()) {
        std::size_t j = i;
        while (j < s.size() && s[j] != '.') ++j;
        if (j == i) throw std::invalid_argument("malformed path: " + s);
        for (std::size_t k = i; k < j; ++k)
            if (s[k] < '0' || s[k] > '9')
                throw std::invalid_argument("malformed path: " + s);
        p.push_back(static_cast<std::uint32_t>(std::stoul(s.substr(i, j - i))));
        i = (j < s.size()) ? j + 1 : j;
        if (j < s.size() && j + 1 == s.size())
            throw std::invalid_argument("malformed path: " + s);
    }
    return p;
}

}  // namespace treekit
