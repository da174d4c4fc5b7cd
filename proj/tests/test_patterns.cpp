#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "treekit/enumerate.hpp"
#include "treekit/fraisse.hpp"
#include "treekit/patterns.hpp"

using namespace treekit;

static MeetTree fan(int n) {
    std::vector<std::pair<Path, bool>> nodes{{Path{}, false}};
    for (int i = 0; i < n; ++i) nodes.emplace_back(Path{static_cast<std::uint32_t>(i)}, true);
    return MeetTree::build(std::move(nodes));
}

TEST_CASE("embedding enumeration matches the frozen counts") {
    MeetTree leaf = MeetTree::parse("- P\n");
    CHECK(enumerate_embeddings(leaf, fan(3)).size() == 3);

    MeetTree fan2 = fan(2);
    CHECK(enumerate_embeddings(fan2, fan(3)).size() == 3);

    MeetTree one = MeetTree::parse("-\n");
    MeetTree chain3 = MeetTree::parse("-\n0\n0.0\n");
    CHECK(enumerate_embeddings(one, chain3).size() == 3);
}

TEST_CASE("embeddings preserve everything (audit over random pairs)") {
    auto classes = enumerate_classes_up_to(4);
    MeetTree big = generic_stage(2).tree;
    std::size_t total = 0;
    for (const auto& a : classes) {
        for (const auto& e : enumerate_embeddings(a, big, 5)) {
            CHECK(is_embedding(a, big, e));
            ++total;
        }
    }
    CHECK(total > 0);
}

TEST_CASE("embedding enumeration order is lex on image tuples") {
    MeetTree leaf = MeetTree::parse("- P\n");
    auto embs = enumerate_embeddings(leaf, fan(4));
    REQUIRE(embs.size() == 4);
    for (std::size_t i = 1; i < embs.size(); ++i) CHECK(embs[i - 1].img < embs[i].img);
}

TEST_CASE("composition is associative") {
    MeetTree a = MeetTree::parse("- P\n");
    MeetTree b = fan(2);
    MeetTree c = fan(3);
    MeetTree d = fan(4);
    auto ab = enumerate_embeddings(a, b)[0];
    auto bc = enumerate_embeddings(b, c)[0];
    auto cd = enumerate_embeddings(c, d)[0];
    CHECK(compose(cd, compose(bc, ab)) == compose(compose(cd, bc), ab));
}

TEST_CASE("find_realizations: single leaf type lists all marked leaves") {
    MeetTree t = fan(4);
    auto q = qftp(t, {t.require(Path{0})}, LanguageTag::L0P);
    auto r = find_realizations(q, t, PatternConstraint::empty());
    REQUIRE(r.size() == 4);
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(r[i] == std::vector<NodeId>{t.require(Path{static_cast<std::uint32_t>(i)})});
}

TEST_CASE("find_realizations: constrained pairs left of a fixed leaf") {
    MeetTree t = fan(4);
    auto q = qftp(t, {t.require(Path{0}), t.require(Path{1})}, LanguageTag::L0P);
    auto c = PatternConstraint::parse("x0 <lex x1");
    auto all = find_realizations(q, t, c);
    CHECK(all.size() == 6);
    // pairs lex-left of leaf 3
    auto cl = PatternConstraint::parse("x0 <lex x1; x2 = 3; x0 <lex x2; x1 <lex x2");
    CHECK_THROWS(find_realizations(q, t, cl));  // x2 out of arity
    auto q3 = qftp(t, {t.require(Path{0}), t.require(Path{1}), t.require(Path{3})},
                   LanguageTag::L0P);
    auto left = find_realizations(q3, t, PatternConstraint::parse("x2 = 3"));
    CHECK(left.size() == 3);
}

TEST_CASE("find_realizations: unsatisfiable constraint") {
    MeetTree t = fan(3);
    auto q = qftp(t, {t.require(Path{0})}, LanguageTag::L0P);
    CHECK(find_realizations(q, t, PatternConstraint::parse("x0 incomp x0")).empty());
}

TEST_CASE("find_realizations round trip: outputs re-encode to q") {
    MeetTree t = generic_stage(2).tree;
    auto leaves = t.marked_leaves();
    REQUIRE(leaves.size() >= 2);
    auto q = qftp(t, {leaves[0], leaves[1]}, LanguageTag::L0P);
    auto r = find_realizations(q, t, PatternConstraint::empty(), 50);
    CHECK(!r.empty());
    for (const auto& tup : r) CHECK(qftp(t, tup, LanguageTag::L0P) == q);
}

TEST_CASE("constraint mini-language") {
    MeetTree t = MeetTree::parse("#autoclose\n-\n0.0 P\n0.1 P\n1 P\n");
    auto c = PatternConstraint::parse("x <= y; x ^ y = x; P(y); !P(x); x <lex y");
    std::map<std::string, NodeId> asg{{"x", t.require(Path{0})}, {"y", t.require(Path{0, 0})}};
    CHECK(c.eval(t, asg));
    asg["y"] = t.require(Path{1});
    CHECK_FALSE(c.eval(t, asg));
    CHECK(PatternConstraint::parse("a incomp b")
              .eval(t, {{"a", t.require(Path{0, 0})}, {"b", t.require(Path{1})}}));
    CHECK(PatternConstraint::parse("a < b").eval(
        t, {{"a", t.require(Path{0})}, {"b", t.require(Path{0, 1})}}));
    CHECK(PatternConstraint::parse("a = 0.1").eval(t, {{"a", t.require(Path{0, 1})}}));
    CHECK_THROWS(PatternConstraint::parse("x >> y"));
    CHECK_THROWS(c.eval(t, {{"x", 0}}));  // unassigned variable
}

TEST_CASE("switcheroo1: side branch witness, n = 1") {
    // wide fan under 0, plus an incomparable branch to the right
    MeetTree t = MeetTree::parse("#autoclose\n-\n0.0 P\n0.1 P\n0.2 P\n1.0 P\n1.1 P\n");
    NodeId e0 = t.require(Path{0, 0});
    NodeId e1 = t.require(Path{0, 1});
    auto r = solve_switcheroo1(t, {e0}, e1);
    REQUIRE(r.sat);
    CHECK(check_switcheroo1(t, {e0}, e1, r.nu));
    // the witness must sit on the incomparable branch, right of eta_1
    CHECK(t.lex_lt(e1, r.nu[0]));
    CHECK(t.incomp(e1, r.nu[0]));
}

TEST_CASE("switcheroo1: UNSAT when the tree is exactly the closure") {
    MeetTree t = MeetTree::parse("#autoclose\n0 P\n1 P\n");
    auto r = solve_switcheroo1(t, {t.require(Path{0})}, t.require(Path{1}));
    CHECK_FALSE(r.sat);
}

TEST_CASE("switcheroo1: n = 2 inside a saturated stage-3 approximation") {
    MeetTree t = saturate_over_copies(generic_stage(3).tree, 3, 250);
    auto leaves = t.marked_leaves();
    REQUIRE(leaves.size() >= 3);
    bool any_sat = false;
    for (std::size_t i = 0; i + 2 < leaves.size() && !any_sat; i += 3) {
        auto r = solve_switcheroo1(t, {leaves[i], leaves[i + 1]}, leaves[i + 2]);
        if (r.sat) {
            CHECK(check_switcheroo1(t, {leaves[i], leaves[i + 1]}, leaves[i + 2], r.nu));
            any_sat = true;
        }
    }
    CHECK(any_sat);
}

TEST_CASE("switcheroo1 rejects bad input") {
    MeetTree t = fan(3);
    auto l = t.marked_leaves();
    CHECK_THROWS_AS(solve_switcheroo1(t, {l[1]}, l[0]), TreeError);  // not increasing
    CHECK_THROWS_AS(solve_switcheroo1(t, {t.require(Path{})}, l[0]), TreeError);
}

TEST_CASE("switcheroo2: n = 1 and UNSAT") {
    MeetTree t = MeetTree::parse("#autoclose\n-\n0.0 P\n0.1 P\n1.0 P\n1.1 P\n");
    NodeId e0 = t.require(Path{1, 0});
    NodeId e1 = t.require(Path{1, 1});
    auto r = solve_switcheroo2(t, e0, {e1});
    REQUIRE(r.sat);
    CHECK(check_switcheroo2(t, e0, {e1}, r.nu));

    // no leaves left of eta0
    MeetTree u = MeetTree::parse("#autoclose\n-\n0.0 P\n0.1 P\n1 P\n");
    NodeId a0 = u.require(Path{0, 0});
    NodeId a1 = u.require(Path{0, 1});
    auto r2 = solve_switcheroo2(u, a0, {a1});
    CHECK_FALSE(r2.sat);
}

TEST_CASE("switcheroo2: n = 2 inside a saturated stage-3 approximation") {
    MeetTree t = saturate_over_copies(generic_stage(3).tree, 3, 250);
    auto leaves = t.marked_leaves();
    bool any_sat = false;
    for (std::size_t i = 0; i + 2 < leaves.size() && !any_sat; ++i) {
        NodeId e0 = leaves[i], e1 = leaves[i + 1], e2 = leaves[i + 2];
        // want e1, e2 a fan with meet incomparable to e0
        if (!t.incomp(e1, e2)) continue;
        NodeId z = t.meet_node(e1, e2);
        if (!t.incomp(e0, z)) continue;
        auto r = solve_switcheroo2(t, e0, {e1, e2});
        if (r.sat) {
            CHECK(check_switcheroo2(t, e0, {e1, e2}, r.nu));
            any_sat = true;
        }
    }
    CHECK(any_sat);
}

TEST_CASE("age_check") {
    MeetTree one = MeetTree::parse("-\n");
    auto rep1 = age_check(one, 2);
    CHECK_FALSE(rep1.complete);

    auto rep2 = age_check(generic_stage(3).tree, 3);
    CHECK(rep2.complete);

    auto rep3 = age_check(balanced_tree(2, 2), 3);
    CHECK_FALSE(rep3.complete);

    // at k = 4 the 3-leaf fan class (4 nodes) is among the missing ones
    auto rep4 = age_check(balanced_tree(2, 2), 4);
    MeetTree f3 = fan(3);
    auto fan_code = qftp(f3, {0, 1, 2, 3}, LanguageTag::L0P);
    bool found = false;
    for (const auto& c : rep4.missing)
        if (c == fan_code) found = true;
    CHECK(found);
}
