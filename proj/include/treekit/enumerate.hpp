#pragma once

#include <vector>

#include "treekit/tree.hpp"

namespace treekit {

// One representative per isomorphism class of nonempty meet-trees with
// exactly n nodes (marks on maximal nodes, all mark patterns). Classes of
// such trees are rooted plane trees: siblings are ordered by lex.
std::vector<MeetTree> enumerate_classes(int n);

// All classes with 1..max_n nodes, smaller sizes first.
std::vector<MeetTree> enumerate_classes_up_to(int max_n);

// Balanced index tree b^{<=d}: full b-ary of depth d with every depth-d
// node marked. b >= 1, d >= 0 (d = 0 is a single marked root).
MeetTree balanced_tree(int b, int d);

}  // namespace treekit
