#pragma once

#include <string>

#include "treekit/embedding.hpp"
#include "treekit/qftp.hpp"

namespace treekit {

struct AmalgamResult {
    MeetTree C;
    Embedding g1, g2;  // B1 -> C, B2 -> C
};

// Strong amalgamation of B1 <- A -> B2 over embeddings f1, f2: the images
// of g1 and g2 intersect exactly in the image of A, no fresh meet nodes
// are needed, and |C| = |B1| + |B2| - |A|. Where the shared part leaves
// the choice open, B1-only branches precede B2-only branches in lex.
AmalgamResult amalgamate(const MeetTree& A, const MeetTree& B1, const MeetTree& B2,
                         const Embedding& f1, const Embedding& f2);

// Amalgamation over the empty tree: a fresh unmarked root below disjoint
// copies, B1's copy first in lex. Empty inputs collapse to the other side.
AmalgamResult joint_embed(const MeetTree& B1, const MeetTree& B2);

// A one-point extension demand: B is the closure of S and one extra node
// x; s_nodes are the ids of S inside B (lex order). key identifies the
// marked configuration up to isomorphism.
struct Demand {
    MeetTree B;
    std::vector<NodeId> s_nodes;
    NodeId x;
    QfTypeCode key;
};

// All demands with |S| < k up to isomorphism (so |B| <= k + 1), sorted by
// (|B|, key).
std::vector<Demand> enumerate_demands(int k);

struct DemandEntry {
    QfTypeCode key;
    int b_size;
    std::string status;  // "present", "amalgamated", "joint", "skipped"
};

struct GenericStage {
    MeetTree tree;
    int stage = 0;
    bool complete = false;  // false when the node budget cut the run short
    std::vector<DemandEntry> demand_log;
};

// A finite approximation of the generic tree: realizes every one-point
// extension demand with |S| < k. A demand counts as realized when its B
// embeds into the tree.
GenericStage generic_stage(int k, int max_nodes = 5000);

// Demand keys with |S| < k whose B does not embed into t; empty result
// means t has the extension property at level k.
std::vector<QfTypeCode> check_extension_property(const MeetTree& t, int k);

// One saturation round: for every demand with |S| < k and every embedding
// of S into the input tree, realize the demand over that copy (amalgamate
// unless the extension already exists there). Gives a much richer ambient
// tree than generic_stage for downstream searches. max_nodes caps growth.
MeetTree saturate_over_copies(const MeetTree& t, int k, int max_nodes = 4000);

}  // namespace treekit
