#include "treekit/embedding.hpp"

namespace treekit {

namespace {

// Candidate v for position i must respect everything assigned so far.
bool consistent(const MeetTree& a, const MeetTree& b, const std::vector<NodeId>& img,
                NodeId i, NodeId v) {
    if (a.marked(i) != b.marked(v)) return false;
    for (NodeId j = 0; j < i; ++j) {
        NodeId w = img[static_cast<std::size_t>(j)];
        if (a.le(j, i) != b.le(w, v)) return false;
        if (a.le(i, j) != b.le(v, w)) return false;
        NodeId ma = a.meet_node(j, i);
        if (ma < i) {
            // The meet is already placed (it precedes i in lex order).
            if (b.meet_node(w, v) != img[static_cast<std::size_t>(ma)]) return false;
        }
    }
    return true;
}

void search(const MeetTree& a, const MeetTree& b, std::vector<NodeId>& img, NodeId i,
            std::size_t limit, const std::vector<NodeId>& pins,
            std::vector<Embedding>& out) {
    if (limit && out.size() >= limit) return;
    if (i == a.size()) {
        out.push_back(Embedding{img});
        return;
    }
    NodeId lo = i == 0 ? 0 : img[static_cast<std::size_t>(i) - 1] + 1;
    NodeId hi = b.size() - (a.size() - i);
    if (!pins.empty() && pins[static_cast<std::size_t>(i)] >= 0) {
        NodeId pin = pins[static_cast<std::size_t>(i)];
        if (pin < lo) return;  // pin conflicts with image monotonicity
        lo = hi = pin;
    }
    // Image ids must be strictly increasing: lex order is preserved and
    // ids follow lex order.
    for (NodeId v = lo; v <= hi; ++v) {
        if (!consistent(a, b, img, i, v)) continue;
        img[static_cast<std::size_t>(i)] = v;
        search(a, b, img, i + 1, limit, pins, out);
        if (limit && out.size() >= limit) return;
    }
}

}  // namespace

bool is_embedding(const MeetTree& a, const MeetTree& b, const Embedding& e) {
    if (e.dom_size() != a.size()) return false;
    for (NodeId v : e.img)
        if (v < 0 || v >= b.size()) return false;
    for (NodeId i = 0; i < a.size(); ++i) {
        if (a.marked(i) != b.marked(e(i))) return false;
        for (NodeId j = 0; j < a.size(); ++j) {
            if (i != j && e(i) == e(j)) return false;
            if (a.le(i, j) != b.le(e(i), e(j))) return false;
            if (a.lex_lt(i, j) != b.lex_lt(e(i), e(j))) return false;
            if (e(a.meet_node(i, j)) != b.meet_node(e(i), e(j))) return false;
        }
    }
    return true;
}

std::vector<Embedding> enumerate_embeddings(const MeetTree& a, const MeetTree& b,
                                            std::size_t limit) {
    std::vector<Embedding> out;
    if (a.size() > b.size()) return out;
    if (a.empty()) {
        out.push_back(Embedding{});
        return out;
    }
    std::vector<NodeId> img(static_cast<std::size_t>(a.size()), -1);
    search(a, b, img, 0, limit, {}, out);
    return out;
}

std::optional<Embedding> find_embedding(const MeetTree& a, const MeetTree& b) {
    auto v = enumerate_embeddings(a, b, 1);
    if (v.empty()) return std::nullopt;
    return v.front();
}

std::optional<Embedding> find_embedding_extending(
    const MeetTree& a, const MeetTree& b,
    const std::vector<std::pair<NodeId, NodeId>>& pins) {
    if (a.empty()) return Embedding{};
    std::vector<NodeId> pinv(static_cast<std::size_t>(a.size()), -1);
    for (auto [x, y] : pins) pinv.at(static_cast<std::size_t>(x)) = y;
    std::vector<Embedding> out;
    std::vector<NodeId> img(static_cast<std::size_t>(a.size()), -1);
    search(a, b, img, 0, 1, pinv, out);
    if (out.empty()) return std::nullopt;
    return out.front();
}

Embedding compose(const Embedding& outer, const Embedding& inner) {
    Embedding e;
    e.img.reserve(inner.img.size());
    for (NodeId v : inner.img) e.img.push_back(outer(v));
    return e;
}

}  // namespace treekit
