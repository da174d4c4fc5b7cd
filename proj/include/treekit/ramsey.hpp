#pragma once

#include <cstdint>
#include <functional>
#include <map>

#include "treekit/embedding.hpp"
#include "treekit/qftp.hpp"

namespace treekit {

struct RamseyInstance {
    MeetTree A, B;
    Embedding f;  // A -> B
    int r = 2;
};

RamseyInstance make_instance(MeetTree A, MeetTree B, int r);

// chi[i] colors the i-th embedding of enumerate_embeddings(A, C).
using Coloring = std::vector<int>;

// An embedding of B into C all of whose induced A-copies share one color,
// if any.
std::optional<Embedding> mono_copy(const RamseyInstance& inst, const MeetTree& C,
                                   const Coloring& chi);

enum class RamseyVerdict { WITNESS, REFUTED, INDETERMINATE };

struct WitnessResult {
    RamseyVerdict verdict = RamseyVerdict::INDETERMINATE;
    Coloring bad_coloring;  // on REFUTED
    std::uint64_t nodes_explored = 0;
};

// Exhaustive search for a coloring with no monochromatic B-copy.
// Colorings are normalized up to color permutation (sound: badness is
// permutation-invariant). budget caps search nodes, 0 = unlimited.
// reversed re-runs with both embedding lists enumerated back to front,
// for independent re-verification.
WitnessResult is_ramsey_witness(const RamseyInstance& inst, const MeetTree& C,
                                std::uint64_t budget = 0, bool reversed = false);

struct RamseySearchResult {
    bool found = false;
    MeetTree C;
    WitnessResult verdict;                              // for the found C
    std::vector<std::pair<MeetTree, Coloring>> refuted;  // candidates that failed
    bool indeterminate = false;                          // budget ran out somewhere
};

// Try candidates in a fixed order (balanced marked trees by node count,
// then generic stages) up to size_budget nodes; the returned witness is
// re-verified with reversed enumeration order.
RamseySearchResult ramsey_search(const RamseyInstance& inst, int size_budget,
                                 std::uint64_t node_budget = 0);

struct CollapseResult {
    bool well_defined = false;
    // color per unmarked-position subtuple, keyed by node ids
    std::map<std::vector<NodeId>, int> minus_coloring;
    std::vector<NodeId> tuple_a, tuple_b;  // counterexample pair when ill-defined
};

// Push a coloring of the realizations of an L0P type down to their
// unmarked parts. chi must be defined on every realization; if two
// realizations with the same unmarked part get different colors, they are
// returned as the counterexample.
CollapseResult collapse_leaf_coloring(
    const MeetTree& ambient, const QfTypeCode& q,
    const std::function<int(const std::vector<NodeId>&)>& chi);

}  // namespace treekit
