#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "treekit/enumerate.hpp"
#include "treekit/indiscernibles.hpp"
#include "treekit/witnesses.hpp"

using namespace treekit;

namespace {

// All nodes carry the same singleton tuple.
IndexedFamily constant_family(const MeetTree& t) {
    IndexedFamily f;
    f.index = t;
    f.arity = 1;
    f.target.universe = 1;
    f.target.rels.push_back({"U", 1, {{0}}});
    for (NodeId v = 0; v < t.size(); ++v) f.assign_rel[v] = {0};
    return f;
}

}  // namespace

TEST_CASE("constant family is indiscernible") {
    auto f = constant_family(balanced_tree(2, 2));
    CHECK(check_indexed_indiscernible(f, LanguageTag::L0P, 2).ok);
    CHECK(check_indexed_indiscernible(f, LanguageTag::LS, 2).ok);
    CHECK(check_treetop_collapse(f, 3).ok);
    for (NodeId v = 0; v < f.index.size(); ++v)
        if (!f.index.marked(v)) CHECK(check_side_sets(f, v, 2).all_ok());
}

TEST_CASE("code is the atomic diagram") {
    auto f = constant_family(MeetTree::parse("-\n0 P\n1 P\n"));
    f.target.universe = 3;
    f.target.rels = {{"E", 2, {{0, 1}}}};
    f.assign_rel[0] = {2};
    f.assign_rel[1] = {0};
    f.assign_rel[2] = {1};
    // (leaf 0, leaf 1) realizes E in position (0,1) only
    CHECK(f.code({1, 2}) == "eq:0;E:0100");
    CHECK(f.code({2, 1}) == "eq:0;E:0010");
    CHECK(f.code({1}, {1}) == "eq:1;E:0000");
    // distinct-element family with no relations ignores order entirely
    IndexedFamily g;
    g.index = balanced_tree(2, 2);
    g.arity = 1;
    g.target.universe = g.index.size();
    for (NodeId v = 0; v < g.index.size(); ++v) g.assign_rel[v] = {v};
    CHECK(check_treetop_collapse(g, 3).ok);
}

TEST_CASE("multigraph family indiscernibility") {
    auto f = multigraph_family(2, 3);
    CHECK(check_indexed_indiscernible(f, LanguageTag::LS, 2).ok);
    auto bad = check_indexed_indiscernible(f, LanguageTag::L0P, 2);
    CHECK_FALSE(bad.ok);
    // the violating pairs have equal L0P type but different meet levels
    REQUIRE(bad.tuple_a.size() == 2);
    CHECK(f.index.path(f.index.meet_node(bad.tuple_a[0], bad.tuple_a[1])).size() !=
          f.index.path(f.index.meet_node(bad.tuple_b[0], bad.tuple_b[1])).size());
    auto col = check_treetop_collapse(f, 2);
    CHECK_FALSE(col.ok);
    // a meet-length 0 pair and a meet-length 1 pair disagree
    NodeId l000 = f.index.require(path_from_string("0.0.0"));
    NodeId l010 = f.index.require(path_from_string("0.1.0"));
    NodeId l100 = f.index.require(path_from_string("1.0.0"));
    CHECK(f.code({l000, l100}, {0}) != f.code({l000, l010}, {0}));
}

TEST_CASE("oag family counterexamples") {
    auto f = oag_family(2, 2, Rat(1));
    CHECK_FALSE(check_treetop_collapse(f, 2).ok);
    NodeId zero = f.index.require(path_from_string("0"));
    CHECK_FALSE(check_cone_indiscernible(f, zero, 2).ok);
    // the length-4 configuration from the certificate is itself a violation
    auto f3 = oag_family(3, 2, Rat(1));
    auto cert = oag_certificate(f3);
    REQUIRE(cert.has_value());
    std::vector<NodeId> bad;
    for (const auto& p : cert->leaves) bad.push_back(f3.index.require(p));
    auto leaves = f3.index.marked_leaves();
    std::string bad_code = f3.code(bad, {0});
    bool partner_found = false;
    for (std::size_t i0 = 0; i0 < leaves.size() && !partner_found; ++i0)
        for (std::size_t i1 = i0 + 1; i1 < leaves.size() && !partner_found; ++i1)
            for (std::size_t i2 = i1 + 1; i2 < leaves.size() && !partner_found; ++i2)
                for (std::size_t i3 = i2 + 1; i3 < leaves.size() && !partner_found; ++i3)
                    partner_found =
                        f3.code({leaves[i0], leaves[i1], leaves[i2], leaves[i3]}, {0}) != bad_code;
    CHECK(partner_found);
    // side sets: the q0 pattern over the parameter splits the left set
    auto sides = check_side_sets(f3, f3.index.require(path_from_string("1")), 2);
    CHECK_FALSE(sides.left.ok);
}

TEST_CASE("interval family side sets are indiscernible") {
    auto fam = interval_sop2(balanced_tree(2, 3));
    auto f = family_from_intervals(fam);
    NodeId nu = f.index.require(path_from_string("1"));
    auto r = check_side_sets(f, nu, 2);
    CHECK(r.left_leaves.size() == 4);
    CHECK(r.right_leaves.empty());
    CHECK(r.all_ok());
    NodeId mid = f.index.require(path_from_string("0.1"));
    auto r2 = check_side_sets(f, mid, 2);
    CHECK(r2.all_ok());
    CHECK_FALSE(r2.left_leaves.empty());
    CHECK_FALSE(r2.right_leaves.empty());
}

TEST_CASE("cone check degenerate cases") {
    auto f = constant_family(balanced_tree(2, 2));
    // root cone equals the treetop check's leaf set
    CHECK(check_cone_indiscernible(f, 0, 2).ok);
    NodeId leaf = f.index.marked_leaves().front();
    CHECK(check_cone_indiscernible(f, leaf, 2).ok);  // single leaf, vacuous
    IndexedFamily empty_family;
    empty_family.index = MeetTree::parse("-\n");
    empty_family.arity = 1;
    empty_family.target.universe = 1;
    empty_family.assign_rel[0] = {0};
    CHECK_THROWS_AS(check_treetop_collapse(empty_family, 2), TreeError);
}

TEST_CASE("L0P indiscernibility implies LS indiscernibility") {
    std::mt19937 rng(7);
    for (const auto& t : enumerate_classes_up_to(4)) {
        for (int trial = 0; trial < 4; ++trial) {
            IndexedFamily f;
            f.index = t;
            f.arity = 1;
            f.target.universe = 2;
            f.target.rels.push_back({"U", 1, {{1}}});
            for (NodeId v = 0; v < t.size(); ++v)
                f.assign_rel[v] = {(int)(rng() % 2)};
            if (check_indexed_indiscernible(f, LanguageTag::L0P, 2).ok)
                CHECK(check_indexed_indiscernible(f, LanguageTag::LS, 2).ok);
        }
    }
}

TEST_CASE("treetop collapse ok implies cone ok") {
    std::mt19937 rng(11);
    for (const auto& t : enumerate_classes_up_to(5)) {
        if (t.marked_leaves().empty()) continue;
        IndexedFamily f;
        f.index = t;
        f.arity = 1;
        f.target.universe = 2;
        f.target.rels.push_back({"U", 1, {{1}}});
        for (NodeId v = 0; v < t.size(); ++v) f.assign_rel[v] = {(int)(rng() % 2)};
        if (!check_treetop_collapse(f, 2).ok) continue;
        // cone tuples are a sub-pool of the leaf tuples, so collapse over the
        // root transfers whenever the cone parameter has the root's image
        for (NodeId v = 0; v < t.size(); ++v)
            if (f.assign_rel[v] == f.assign_rel[0] && !cone_leaves(t, v).empty() &&
                t.marked(cone_leaves(t, v).front()))
                CHECK(check_cone_indiscernible(f, v, 2).ok);
    }
}

TEST_CASE("extract copy") {
    // f already indiscernible: identity-like copy of its own index
    auto f = constant_family(balanced_tree(2, 2));
    auto r = extract_copy(f, f.index, LanguageTag::L0P, 2);
    REQUIRE(r.status == ExtractResult::FOUND);
    CHECK(r.search_complete);
    // pigeonhole: two leaves share a unary code
    IndexedFamily g;
    g.index = balanced_tree(2, 2);
    g.arity = 1;
    g.target.universe = 2;
    g.target.rels.push_back({"U", 1, {{1}}});
    for (NodeId v = 0; v < g.index.size(); ++v) g.assign_rel[v] = {0};
    g.assign_rel[g.index.marked_leaves()[0]] = {1};  // one odd leaf out
    auto fan = MeetTree::parse("-\n0 P\n1 P\n");
    auto rf = extract_copy(g, fan, LanguageTag::L0P, 1);
    REQUIRE(rf.status == ExtractResult::FOUND);
    // the sub-family re-verifies by construction
    CHECK(check_indexed_indiscernible(*rf.sub, LanguageTag::L0P, 1).ok);
    // budget 0 examines nothing
    auto rz = extract_copy(g, fan, LanguageTag::L0P, 1, 0);
    CHECK(rz.status == ExtractResult::EXHAUSTED);
    CHECK(rz.embeddings_tried == 0);
    // no copy at all: every pair of leaves differs
    IndexedFamily h = g;
    h.target.universe = 4;
    auto hl = h.index.marked_leaves();
    for (std::size_t i = 0; i < hl.size(); ++i) h.assign_rel[hl[i]] = {(int)i};
    h.target.rels = {{"U", 1, {{1}, {3}}}, {"V", 1, {{2}, {3}}}};
    auto rh = extract_copy(h, fan, LanguageTag::L0P, 1);
    CHECK(rh.status == ExtractResult::EXHAUSTED);
    CHECK(rh.search_complete);
    CHECK(rh.embeddings_tried > 0);
}

TEST_CASE("family json round trip") {
    auto f = multigraph_family(2, 2);
    auto g = family_from_json(family_to_json(f));
    CHECK(g.index == f.index);
    CHECK(g.arity == f.arity);
    CHECK(g.target.universe == f.target.universe);
    for (NodeId v = 0; v < f.index.size(); ++v) CHECK(g.assign_rel.at(v) == f.assign_rel.at(v));
    CHECK(g.code({0, 1, 2}) == f.code({0, 1, 2}));

    auto o = oag_family(2, 2, Rat(1));
    auto o2 = family_from_json(family_to_json(o));
    CHECK(o2.rational_target);
    CHECK(o2.preds.size() == o.preds.size());
    auto leaves = o2.index.marked_leaves();
    CHECK(o2.code({leaves[0], leaves[1]}) == o.code({leaves[0], leaves[1]}));

    CHECK_THROWS_AS(family_from_json("{"), TreeError);
    CHECK_THROWS_AS(family_from_json("{\"tree\": \"-\\n\"}"), TreeError);
}

TEST_CASE("lex least counterexample is deterministic") {
    auto f = multigraph_family(2, 3);
    auto a = check_treetop_collapse(f, 2);
    auto b = check_treetop_collapse(f, 2);
    REQUIRE_FALSE(a.ok);
    CHECK(a.tuple_a == b.tuple_a);
    CHECK(a.tuple_b == b.tuple_b);
    // first violating pair: (000,001) with meet length 2 against (000,010)
    auto leaves = f.index.marked_leaves();
    CHECK(a.tuple_a == std::vector<NodeId>{leaves[0], leaves[1]});
    CHECK(a.tuple_b == std::vector<NodeId>{leaves[0], leaves[2]});
}
