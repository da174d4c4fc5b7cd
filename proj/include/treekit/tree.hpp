#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treekit/node.hpp"

namespace treekit {

struct TreeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using NodeId = int;

// A finite meet-tree of words with an optional leaf mark on maximal nodes.
// Nodes are stored in prefix-first lex order, so ids are monotone in that
// order and every binary meet of members is itself a member.
class MeetTree {
public:
    MeetTree() = default;

    // nodes: (path, marked) pairs. With autoclose, missing pairwise meets
    // are added unmarked; without it a missing meet is an error. A mark on
    // a non-maximal node is always an error.
    static MeetTree build(std::vector<std::pair<Path, bool>> nodes, bool autoclose = false);

    // Text format: one node per line, "path" or "path P", "-" for the root.
    // A leading "#autoclose" line turns on meet completion. Other lines
    // starting with '#' are comments.
    static MeetTree parse(const std::string& text);
    std::string serialize() const;

    int size() const { return static_cast<int>(paths_.size()); }
    bool empty() const { return paths_.empty(); }
    const Path& path(NodeId v) const { return paths_.at(static_cast<std::size_t>(v)); }
    bool marked(NodeId v) const { return marked_.at(static_cast<std::size_t>(v)); }

    std::optional<NodeId> find(const Path& p) const;
    NodeId require(const Path& p) const;

    bool le(NodeId a, NodeId b) const { return is_prefix(path(a), path(b)); }
    bool lt(NodeId a, NodeId b) const { return is_proper_prefix(path(a), path(b)); }
    // Node ids increase in prefix-first lex order.
    bool lex_lt(NodeId a, NodeId b) const { return a < b; }
    bool incomp(NodeId a, NodeId b) const { return incomparable(path(a), path(b)); }

    // Binary meet; always a member.
    NodeId meet_node(NodeId a, NodeId b) const;

    // Longest proper prefix of v among members, if any.
    std::optional<NodeId> parent(NodeId v) const;

    bool is_maximal(NodeId v) const;

    // Ids of maximal marked nodes in lex order.
    std::vector<NodeId> marked_leaves() const;

    // Ids of all maximal nodes in lex order.
    std::vector<NodeId> maximal_nodes() const;

    bool operator==(const MeetTree& o) const {
        return paths_ == o.paths_ && marked_ == o.marked_;
    }

private:
    std::vector<Path> paths_;   // sorted by lex_less
    std::vector<bool> marked_;  // parallel to paths_
};

// Ids of the meet-closure of the given nodes, sorted lex, deduplicated.
// Pairwise meets suffice: the meet of two prefixes of a word is the
// shorter one, so no new meets appear at the second round.
std::vector<NodeId> meet_closure(const MeetTree& t, const std::vector<NodeId>& tuple);

// True when the tuple (>= 2 distinct entries) is pairwise incomparable and
// all pairwise meets coincide. Throws TreeError on duplicates or comparable
// entries.
bool is_fan(const MeetTree& t, const std::vector<NodeId>& tuple);

// Marked maximal nodes weakly above v, in lex order.
std::vector<NodeId> cone_leaves(const MeetTree& t, NodeId v);

// True iff eta <lex nu <lex xi and (eta ^ nu) is a proper prefix of
// (nu ^ xi). All three must be marked leaves.
bool leaf_pattern_x(const MeetTree& t, NodeId eta, NodeId nu, NodeId xi);

}  // namespace treekit
