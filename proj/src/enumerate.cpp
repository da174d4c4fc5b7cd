#include "treekit/enumerate.hpp"

namespace treekit {

namespace {

using Shape = std::vector<Path>;  // node paths, root = empty

std::vector<Shape> shapes(int n);

// Ordered forests with m nodes total, each tree nonempty, rooted under
// directions 0, 1, ...
std::vector<Shape> forests(int m) {
    std::vector<Shape> out;
    if (m == 0) {
        out.push_back({});
        return out;
    }
    for (int first = 1; first <= m; ++first) {
        auto heads = shapes(first);
        auto rests = forests(m - first);
        for (const auto& rest : rests) {
            // Shift the rest one direction to the right, head goes at 0.
            for (const auto& head : heads) {
                Shape f;
                for (const auto& p : head) {
                    Path q{0};
                    q.insert(q.end(), p.begin(), p.end());
                    f.push_back(std::move(q));
                }
                for (const auto& p : rest) {
                    Path q = p;
                    q[0] += 1;
                    f.push_back(std::move(q));
                }
                out.push_back(std::move(f));
            }
        }
    }
    return out;
}

std::vector<Shape> shapes(int n) {
    std::vector<Shape> out;
    if (n <= 0) return out;
    for (auto& f : forests(n - 1)) {
        Shape s;
        s.push_back({});
        for (auto& p : f) s.push_back(std::move(p));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<MeetTree> enumerate_classes(int n) {
    std::vector<MeetTree> out;
    for (const auto& s : shapes(n)) {
        std::vector<std::size_t> maximal;
        for (std::size_t i = 0; i < s.size(); ++i) {
            bool maxi = true;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (is_proper_prefix(s[i], s[j])) {
                    maxi = false;
                    break;
                }
            if (maxi) maximal.push_back(i);
        }
        for (std::uint64_t bits = 0; bits < (1ULL << maximal.size()); ++bits) {
            std::vector<std::pair<Path, bool>> nodes;
            nodes.reserve(s.size());
            for (const auto& p : s) nodes.emplace_back(p, false);
            for (std::size_t k = 0; k < maximal.size(); ++k)
                if (bits & (1ULL << k)) nodes[maximal[k]].second = true;
            out.push_back(MeetTree::build(std::move(nodes)));
        }
    }
    return out;
}

std::vector<MeetTree> enumerate_classes_up_to(int max_n) {
    std::vector<MeetTree> out;
    for (int n = 1; n <= max_n; ++n)
        for (auto& t : enumerate_classes(n)) out.push_back(std::move(t));
    return out;
}

MeetTree balanced_tree(int b, int d) {
    std::vector<std::pair<Path, bool>> nodes;
    std::vector<Path> level{{}};
    nodes.emplace_back(Path{}, d == 0);
    for (int depth = 1; depth <= d; ++depth) {
        std::vector<Path> next;
        for (const auto& p : level)
            for (int i = 0; i < b; ++i) {
                Path q = p;
                q.push_back(static_cast<std::uint32_t>(i));
                nodes.emplace_back(q, depth == d);
                next.push_back(std::move(q));
            }
        level = std::move(next);
    }
    return MeetTree::build(std::move(nodes));
}

}  // namespace treekit
