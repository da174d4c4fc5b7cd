#pragma once

#include "treekit/constraint.hpp"
#include "treekit/embedding.hpp"
#include "treekit/qftp.hpp"

namespace treekit {

// Tuples in B whose type is q and which satisfy the constraint, in lex
// order on tuples. Constraint variables must be x0..x{arity-1}.
// limit = 0 means no cap.
std::vector<std::vector<NodeId>> find_realizations(const QfTypeCode& q, const MeetTree& B,
                                                   const PatternConstraint& c,
                                                   std::size_t limit = 0);

struct SolveResult {
    bool sat = false;
    std::vector<NodeId> nu;
};

// Given marked leaves eta_0 <lex ... <lex eta_{n-1} <lex eta_n, find
// marked leaves nu_0 <lex ... <lex nu_{n-1} such that
//   (1) qftp_L0P(nu-bar, root) = qftp_L0P(eta_0..eta_{n-1}, root)
//   (2) eta_n is incomparable with m = /\ nu_j and eta_n <lex m.
// UNSAT (sat = false) when T has no witness.
SolveResult solve_switcheroo1(const MeetTree& T, const std::vector<NodeId>& etas,
                              NodeId eta_n);

// Trusted postcondition check, written against tree relations only.
bool check_switcheroo1(const MeetTree& T, const std::vector<NodeId>& etas, NodeId eta_n,
                       const std::vector<NodeId>& nu);

// Given a marked leaf eta_0 and a fan of marked leaves eta_1..eta_n with
// meet z*, eta_0 <lex all of them and eta_0 incomparable with z*, find
// marked leaves nu_1 <lex ... <lex nu_n such that
//   (1) qftp_L0P(nu-bar) = qftp_L0P(eta_1..eta_n)
//   (2) /\ nu_j <lex eta_0
//   (3) eta_0, nu_1, ..., nu_n form a fan.
SolveResult solve_switcheroo2(const MeetTree& T, NodeId eta0,
                              const std::vector<NodeId>& fan);

bool check_switcheroo2(const MeetTree& T, NodeId eta0, const std::vector<NodeId>& fan,
                       const std::vector<NodeId>& nu);

struct AgeReport {
    std::vector<QfTypeCode> realized;  // iso classes of generated substructures, <= k nodes
    std::vector<QfTypeCode> missing;   // classes of valid trees of <= k nodes not realized
    bool complete = false;
};

AgeReport age_check(const MeetTree& I, int k);

}  // namespace treekit
