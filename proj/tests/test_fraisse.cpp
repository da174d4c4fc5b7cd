#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "treekit/enumerate.hpp"
#include "treekit/fraisse.hpp"
#include "treekit/patterns.hpp"

using namespace treekit;

static void check_amalgam(const MeetTree& A, const MeetTree& B1, const MeetTree& B2,
                          const Embedding& f1, const Embedding& f2,
                          const AmalgamResult& r) {
    CHECK(is_embedding(B1, r.C, r.g1));
    CHECK(is_embedding(B2, r.C, r.g2));
    for (NodeId a = 0; a < A.size(); ++a) CHECK(r.g1(f1(a)) == r.g2(f2(a)));
    CHECK(r.C.size() == B1.size() + B2.size() - A.size());
    // strong: images meet exactly in the base
    std::set<NodeId> i1(r.g1.img.begin(), r.g1.img.end());
    std::set<NodeId> base;
    for (NodeId a = 0; a < A.size(); ++a) base.insert(r.g1(f1(a)));
    for (NodeId v : r.g2.img) {
        if (i1.count(v)) CHECK(base.count(v));
    }
}

TEST_CASE("amalgamate: two leaves over the root give a 2-leaf fan") {
    MeetTree A = MeetTree::parse("-\n");
    MeetTree B = MeetTree::parse("-\n0 P\n");
    Embedding f{{0}};
    auto r = amalgamate(A, B, B, f, f);
    check_amalgam(A, B, B, f, f, r);
    CHECK(r.C.size() == 3);
    CHECK(r.C.marked_leaves().size() == 2);
    // B1's leaf lands lex-first
    CHECK(r.g1(1) < r.g2(1));
}

TEST_CASE("amalgamate: left and right leaf over a 2-chain") {
    MeetTree A = MeetTree::parse("-\n0\n");
    MeetTree B1 = MeetTree::parse("-\n0\n0.0 P\n");  // chain + one leaf
    MeetTree B2 = MeetTree::parse("-\n0\n0.0 P\n");
    auto f1 = find_embedding(A, B1);
    REQUIRE(f1.has_value());
    auto r = amalgamate(A, B1, B2, *f1, *f1);
    check_amalgam(A, B1, B2, *f1, *f1, r);
    CHECK(r.C.size() == 4);
}

TEST_CASE("amalgamate: identity on both sides returns A") {
    MeetTree A = MeetTree::parse("#autoclose\n-\n0 P\n1 P\n");
    Embedding id{{0, 1, 2}};
    auto r = amalgamate(A, A, A, id, id);
    check_amalgam(A, A, A, id, id, r);
    CHECK(r.C == A);
    CHECK(r.g1 == id);
    CHECK(r.g2 == id);
}

TEST_CASE("amalgamate: exhaustive over small shapes") {
    // every (A, B1, B2, f1, f2) with |A| <= 2, |Bi| <= 4 must produce a
    // valid strong amalgam (assertions inside amalgamate plus the audit)
    auto As = enumerate_classes_up_to(2);
    auto Bs = enumerate_classes_up_to(4);
    std::mt19937 rng(99);
    int checked = 0;
    for (const auto& A : As) {
        for (const auto& B1 : Bs) {
            auto f1s = enumerate_embeddings(A, B1, 3);
            if (f1s.empty()) continue;
            for (const auto& B2 : Bs) {
                auto f2s = enumerate_embeddings(A, B2, 3);
                if (f2s.empty()) continue;
                const auto& f1 = f1s[rng() % f1s.size()];
                const auto& f2 = f2s[rng() % f2s.size()];
                auto r = amalgamate(A, B1, B2, f1, f2);
                check_amalgam(A, B1, B2, f1, f2, r);
                ++checked;
            }
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("amalgamate: deep chains force room-making rewrites") {
    // B2 inserts nodes between consecutive nodes of a tight chain
    MeetTree A = MeetTree::parse("-\n0\n");
    MeetTree B1 = MeetTree::parse("-\n0\n");
    MeetTree B2 = MeetTree::parse("-\n0\n0.0\n0.0.0\n0.0.0.0 P\n");
    Embedding f{{0, 1}};
    auto r = amalgamate(A, B1, B2, f, f);
    check_amalgam(A, B1, B2, f, f, r);

    // and the mirrored problem: base at the top of the chain
    MeetTree A2 = MeetTree::parse("-\n");
    MeetTree B3 = MeetTree::parse("-\n0 P\n");
    MeetTree B4 = MeetTree::parse("-\n0\n0.0\n0.0.0 P\n");
    Embedding g1{{0}};  // A's root -> B3's root
    Embedding g2{{2}};  // A's root -> node 0.0 inside B4's chain
    auto r2 = amalgamate(A2, B3, B4, g1, g2);
    check_amalgam(A2, B3, B4, g1, g2, r2);
}

TEST_CASE("joint_embed") {
    MeetTree leaf = MeetTree::parse("- P\n");
    auto r = joint_embed(leaf, leaf);
    CHECK(r.C.size() == 3);
    CHECK(r.C.marked_leaves().size() == 2);

    MeetTree fan2 = MeetTree::parse("-\n0 P\n1 P\n");
    auto r2 = joint_embed(fan2, fan2);
    CHECK(r2.C.size() == 7);
    CHECK(is_embedding(fan2, r2.C, r2.g1));
    CHECK(is_embedding(fan2, r2.C, r2.g2));
    // lex: B1 copy first
    CHECK(r2.g1(0) < r2.g2(0));

    MeetTree empty;
    auto r3 = joint_embed(empty, fan2);
    CHECK(r3.C == fan2);
}

TEST_CASE("enumerate_demands sizes and dedup") {
    auto d2 = enumerate_demands(2);
    for (const auto& d : d2) {
        CHECK(d.B.size() <= 3);
        CHECK(static_cast<int>(d.s_nodes.size()) < 2);
        // B is generated by S and x
        std::vector<NodeId> gen = d.s_nodes;
        gen.push_back(d.x);
        CHECK(meet_closure(d.B, gen).size() == static_cast<std::size_t>(d.B.size()));
    }
    // keys are unique
    std::set<std::string> keys;
    for (const auto& d : d2) keys.insert(d.key.to_string());
    CHECK(keys.size() == d2.size());
}

TEST_CASE("generic_stage(2) realizes all level-2 demands") {
    auto g = generic_stage(2);
    CHECK(g.complete);
    CHECK(check_extension_property(g.tree, 2).empty());
    for (const auto& e : g.demand_log) CHECK(e.status != "skipped");
}

TEST_CASE("generic_stage(3) has the extension property and is age-complete") {
    auto g = generic_stage(3);
    CHECK(g.complete);
    CHECK(check_extension_property(g.tree, 3).empty());
    CHECK(age_check(g.tree, 3).complete);
    // demand log re-verifies: every demand's B embeds
    for (const auto& d : enumerate_demands(3)) CHECK(find_embedding(d.B, g.tree).has_value());
}

TEST_CASE("small trees fail the extension property") {
    MeetTree one = MeetTree::parse("- P\n");
    CHECK_FALSE(check_extension_property(one, 2).empty());
}
