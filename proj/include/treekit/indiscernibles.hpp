#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treekit/embedding.hpp"
#include "treekit/qftp.hpp"
#include "treekit/relstruct.hpp"
#include "treekit/tree.hpp"

namespace treekit {

// Family of tuples in a target structure indexed by the nodes of a meet tree.
// The target is either a finite relational structure (elements are integers)
// or exact rational space with declared linear predicates.  The type
// functional maps an indexed tuple to a canonical code string built from the
// atomic diagram of the concatenated assignment.
struct IndexedFamily {
    MeetTree index;
    int arity = 1;
    bool rational_target = false;

    RelStructure target;                          // integer targets
    std::vector<LinearPredicate> preds;           // rational targets

    std::map<NodeId, std::vector<int>> assign_rel;
    std::map<NodeId, std::vector<Rat>> assign_rat;

    void validate() const;

    // Canonical atomic-diagram code of the concatenated images of idx_tuple,
    // optionally extended by fixed parameter nodes appended at the end.
    std::string code(const std::vector<NodeId>& idx_tuple,
                     const std::vector<NodeId>& params = {}) const;
};

IndexedFamily family_from_json(const std::string& text);
std::string family_to_json(const IndexedFamily& f);

struct IndiscResult {
    bool ok = true;
    // First violating pair in lex enumeration order when !ok.
    std::vector<NodeId> tuple_a, tuple_b;
    std::string code_a, code_b;
    std::size_t tuples_checked = 0;
};

// Generalized indiscernibility: index tuples with equal qf type in the given
// language must have images with equal code.  Tuples of length 1..n_max over
// all index nodes, repeats allowed.
IndiscResult check_indexed_indiscernible(const IndexedFamily& f, LanguageTag tag, int n_max);

// Order-indiscernibility of the marked-leaf sequence over the root image:
// every increasing tuple of marked leaves of the same length must yield the
// same code (the root's image is appended as a fixed parameter).
IndiscResult check_treetop_collapse(const IndexedFamily& f, int n_max);

// Same, restricted to marked leaves above xi, over the image of xi.
IndiscResult check_cone_indiscernible(const IndexedFamily& f, NodeId xi, int n_max);

struct SideSetResult {
    IndiscResult left, right;          // over the image of nu only
    IndiscResult left_strong, right_strong;  // over images of all nodes >= nu
    std::vector<NodeId> left_leaves, right_leaves;
    bool all_ok() const {
        return left.ok && right.ok && left_strong.ok && right_strong.ok;
    }
};

// Side sets at a non-leaf nu: leaves eta with eta^nu strictly below nu, split
// into the lex-left and lex-right branch sets.
SideSetResult check_side_sets(const IndexedFamily& f, NodeId nu, int n_max);

struct ExtractResult {
    enum Status { FOUND, EXHAUSTED } status = EXHAUSTED;
    std::optional<Embedding> emb;      // J -> f.index when FOUND
    std::optional<IndexedFamily> sub;  // re-verified sub-family when FOUND
    std::size_t embeddings_tried = 0;
    bool search_complete = false;      // false iff the budget was hit
};

// Search for an embedded copy of J in the index tree whose induced sub-family
// is indiscernible in the given language.  At most `budget` embeddings are
// examined; budget 0 examines none and reports EXHAUSTED immediately.
ExtractResult extract_copy(const IndexedFamily& f, const MeetTree& j, LanguageTag tag, int n_max,
                           std::size_t budget = std::numeric_limits<std::size_t>::max());

}  // namespace treekit
