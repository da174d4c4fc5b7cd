#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "treekit/indiscernibles.hpp"
#include "treekit/rational.hpp"
#include "treekit/tree.hpp"

namespace treekit {

// ---- ordered-abelian-group family ----
// Index n^{<=m}, node eta mapped to sum of eta(i)*g/n^i. The declared
// predicates are the two four-variable difference inequalities plus pairwise
// order, so order-indiscernibility of the leaf sequence fails exactly on the
// documented meet configuration.
IndexedFamily oag_family(int n, int m, const Rat& g);

struct OagCertificate {
    std::array<Path, 4> leaves;
    std::array<Rat, 4> values;
};

// Brute force over lex-increasing 4-tuples of marked leaves: meet pattern
// eta0^eta1 and eta2^eta3 both strictly above eta1^eta2, with
// a1 - a0 < a3 - a1 and a2 - a0 > a3 - a2.
std::optional<OagCertificate> oag_certificate(const IndexedFamily& fam);

// ---- multigraph family ----
// Vertices = marked leaves of b^{<=d} plus one padding vertex for interior
// nodes; R_k(u, v) holds iff u != v and |eta_u ^ eta_v| = k.
IndexedFamily multigraph_family(int b, int d);

// ---- two-sorted IP pattern family ----
// Three blocks a/b/c of leaf vertices plus three padding vertices; ternary
// phi(a_eta, b_nu, c_xi) holds iff (eta, nu, xi) is an X-pattern.
IndexedFamily two_ip_family(int b, int d);

struct TwoIpCertificate {
    std::array<Path, 4> leaves;  // eta0 < eta1 < eta2 < eta3 lex
    // not phi(a0, b1, c3) and phi(a0, b2, c3)
};

std::optional<TwoIpCertificate> two_ip_certificate(const IndexedFamily& fam);

// ---- interval tree families ----
struct IntervalTreeFamily {
    MeetTree index;
    std::vector<RatInterval> iv;            // by node id
    std::vector<std::optional<Rat>> point;  // marked leaves only
};

// Root gets [0,1]; a node with interval [l,r] and k children splits it into
// 2k-1 equal segments and hands the even-indexed ones to the children in lex
// order, leaving gaps. Marked leaves realize their interval midpoint.
IntervalTreeFamily interval_sop2(const MeetTree& index);

struct InvariantReport {
    bool ok = true;
    std::size_t checks = 0;
    std::string detail;  // first failure
};

// Pairwise nesting/disjointness plus point-in-ancestor checks, all exact.
InvariantReport check_interval_invariants(const IntervalTreeFamily& fam);

// Adapter: node -> (lo, hi) over rationals, no extra predicates (the order
// part of the code carries the interval relations).
IndexedFamily family_from_intervals(const IntervalTreeFamily& fam);

// ---- SOP3 replay ----
struct Sop3Pair {
    RatInterval a, b;
};

struct ClauseReport {
    std::string name;
    bool ok = false;
    std::optional<Rat> witness;  // point in the intersection for consistency clauses
};

struct Sop3Replay {
    bool sat = false;
    int n = 0;
    Path eta, nu;  // anchor branch points, eta incomparable with nu, eta lex-first
    std::vector<Path> eta_l, eta_r, nu_l, nu_r;  // chosen leaves, chain order
    std::vector<Sop3Pair> pairs;                 // d_i = (a_i, b_i)
    std::vector<ClauseReport> clauses;
    bool verified = false;          // all clauses ok
    std::vector<std::string> missing;  // UNSAT diagnostics
};

// Searches the index for the branching configuration (two incomparable branch
// points with enough marked leaves around them to fill the lex chain), then
// builds d_i from realization points and verifies both clause families by
// exact interval intersection.
Sop3Replay sop3_replay(const IntervalTreeFamily& fam, int n);

struct BoundaryEntry {
    int b = 0, d = 0;
    int nodes = 0;
    bool sat = false;
};

struct BoundaryReport {
    std::vector<BoundaryEntry> entries;  // in deterministic candidate order
    std::optional<BoundaryEntry> first_sat;
};

// Runs sop3_replay(n) over balanced stages b^{<=d} (b, d >= 2) ordered by
// node count, then branching; stops at the first satisfiable stage.
BoundaryReport sop3_boundary(int n, int max_nodes = 80);

// ---- interval lemma, both directions ----
struct IntervalsToSop3 {
    std::vector<Rat> ks;
    std::vector<Sop3Pair> cks;  // c_k = ([1/3+k, 2/3+k], [k, 1/3+k])
    std::vector<ClauseReport> clauses;
    bool verified = false;
};

// Defaults to k_i = i/(4n), i = 1..n; custom ks must satisfy 0 < k1 < ... < 1/3.
IntervalsToSop3 intervals_to_sop3(int n, std::vector<Rat> ks = {});

struct SubsetVerdict {
    std::vector<int> members;
    bool satisfiable = false;
    std::optional<Rat> witness;
};

struct Sop3ToIntervals {
    std::vector<RatInterval> sample;
    std::vector<SubsetVerdict> subsets;  // every nonempty subset
    bool verified = false;  // intersection verdicts match the candidate-point oracle
};

// Requires all 2*|sample| endpoints pairwise distinct. Satisfiability of each
// subset is decided by fold intersection and cross-checked against candidate
// points drawn from the endpoint partition.
Sop3ToIntervals sop3_to_intervals(const std::vector<RatInterval>& sample);

// ---- certificates ----
std::string oag_certificate_json(const IndexedFamily& fam, const OagCertificate& c);
std::string multigraph_certificate_json(const IndexedFamily& fam, const Path& a1, const Path& a2,
                                        const Path& b1, const Path& b2);
std::string two_ip_certificate_json(const IndexedFamily& fam, const TwoIpCertificate& c);
std::string interval_family_json(const IntervalTreeFamily& fam);
std::string sop3_replay_json(const Sop3Replay& r);
std::string intervals_to_sop3_json(const IntervalsToSop3& r);
std::string sop3_to_intervals_json(const Sop3ToIntervals& r);

}  // namespace treekit
