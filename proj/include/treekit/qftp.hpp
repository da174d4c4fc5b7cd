#pragma once

#include <string>
#include <vector>

#include "treekit/tree.hpp"

namespace treekit {

// L0 sees prefix order, lex order and meets; L0P adds the leaf mark; LS
// adds a level per node, where a marked node sits at the top level (all
// marked nodes share it) and an unmarked node's level is its word length.
enum class LanguageTag { L0, L0P, LS };

LanguageTag tag_from_string(const std::string& s);
std::string tag_to_string(LanguageTag tag);

// Top-level sentinel for marked nodes in LS codes.
inline constexpr int kTopLevel = -1;

// Canonical code of the quantifier-free type of a tuple: the meet-closure
// of its entries relabeled so that the code depends only on the induced
// substructure. shape[i] is the canonical path of the i-th closure node in
// lex order (parent's canonical path plus the node's child rank); marks[j]
// is the closure index of the j-th tuple entry.
struct QfTypeCode {
    LanguageTag tag = LanguageTag::L0;
    std::vector<Path> shape;
    std::vector<bool> leaf;   // L0P and LS only
    std::vector<int> level;   // LS only
    std::vector<int> marks;

    bool operator==(const QfTypeCode& o) const = default;
    bool operator<(const QfTypeCode& o) const;
    std::string to_string() const;
};

QfTypeCode qftp(const MeetTree& t, const std::vector<NodeId>& tuple, LanguageTag tag);

// Outcome of checking one instance of the implication "equal unmarked
// parts and equal L0P type force equal LS type".
enum class SameTypeVerdict {
    PRECONDITION_UNMET,  // tuples not closed, or unmarked parts mismatch
    VACUOUS,             // L0P codes differ
    VERIFIED,            // L0P codes equal and LS codes equal
    VIOLATION,           // L0P codes equal but LS codes differ
};

struct SameTypeResult {
    SameTypeVerdict verdict;
    QfTypeCode l0p_a, l0p_b, ls_a, ls_b;
};

// Both tuples must be meet-closed and must agree positionally on which
// entries are marked; unmarked entries must be the same nodes in the same
// positions.
SameTypeResult same_type_implication(const MeetTree& t,
                                     const std::vector<NodeId>& a,
                                     const std::vector<NodeId>& b);

}  // namespace treekit
