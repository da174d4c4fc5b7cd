#pragma once

#include <functional>
#include <vector>

#include "treekit/tree.hpp"

namespace treekit {

// An embedding of A into B: img[a] is the image of node a. Preserves and
// reflects prefix order, lex order and the mark, and commutes with meets.
struct Embedding {
    std::vector<NodeId> img;
    NodeId operator()(NodeId a) const { return img.at(static_cast<std::size_t>(a)); }
    int dom_size() const { return static_cast<int>(img.size()); }
    bool operator==(const Embedding& o) const = default;
};

bool is_embedding(const MeetTree& a, const MeetTree& b, const Embedding& e);

// All embeddings of a into b, ordered lex on the image tuple. Since node
// ids follow lex order on both sides, images are strictly increasing id
// sequences. limit = 0 means no cap.
std::vector<Embedding> enumerate_embeddings(const MeetTree& a, const MeetTree& b,
                                            std::size_t limit = 0);

// First embedding in that order, if any.
std::optional<Embedding> find_embedding(const MeetTree& a, const MeetTree& b);

// First embedding of a into b that agrees with the given partial map
// (pairs of (a-node, b-node)), if any.
std::optional<Embedding> find_embedding_extending(
    const MeetTree& a, const MeetTree& b,
    const std::vector<std::pair<NodeId, NodeId>>& pins);

Embedding compose(const Embedding& outer, const Embedding& inner);

}  // namespace treekit
