#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "treekit/enumerate.hpp"
#include "treekit/patterns.hpp"
#include "treekit/ramsey.hpp"

using namespace treekit;

static MeetTree fan(int n) {
    std::vector<std::pair<Path, bool>> nodes{{Path{}, false}};
    for (int i = 0; i < n; ++i) nodes.emplace_back(Path{static_cast<std::uint32_t>(i)}, true);
    return MeetTree::build(std::move(nodes));
}

static const MeetTree kLeaf = MeetTree::parse("- P\n");

TEST_CASE("mono_copy") {
    auto inst = make_instance(kLeaf, fan(2), 2);
    MeetTree C = fan(3);

    // r = 1 style: constant coloring picks the first copy
    auto m0 = mono_copy(inst, C, {0, 0, 0});
    REQUIRE(m0.has_value());
    CHECK(*m0 == enumerate_embeddings(inst.B, C)[0]);

    // (0,0,1): the copy on the first two leaves
    auto m1 = mono_copy(inst, C, {0, 0, 1});
    REQUIRE(m1.has_value());
    CHECK(m1->img == std::vector<NodeId>{0, 1, 2});

    // 2-leaf fan into itself with both colors used: none
    auto m2 = mono_copy(inst, fan(2), {0, 1});
    CHECK_FALSE(m2.has_value());

    CHECK_THROWS_AS(mono_copy(inst, C, {0, 0}), TreeError);  // partial coloring
}

TEST_CASE("is_ramsey_witness: pigeonhole instances") {
    auto inst2 = make_instance(kLeaf, fan(2), 2);
    auto w = is_ramsey_witness(inst2, fan(3));
    CHECK(w.verdict == RamseyVerdict::WITNESS);

    auto bad = is_ramsey_witness(inst2, fan(2));
    REQUIRE(bad.verdict == RamseyVerdict::REFUTED);
    // the reported coloring really has no monochromatic copy
    CHECK_FALSE(mono_copy(inst2, fan(2), bad.bad_coloring).has_value());

    auto inst3 = make_instance(kLeaf, fan(2), 3);
    CHECK(is_ramsey_witness(inst3, fan(3)).verdict == RamseyVerdict::REFUTED);
    CHECK(is_ramsey_witness(inst3, fan(4)).verdict == RamseyVerdict::WITNESS);
}

TEST_CASE("is_ramsey_witness: r = 1 and every C containing B") {
    for (const auto& B : enumerate_classes_up_to(4)) {
        if (B.marked_leaves().empty()) continue;
        auto inst = make_instance(kLeaf, B, 1);
        auto w = is_ramsey_witness(inst, B);
        CHECK(w.verdict == RamseyVerdict::WITNESS);
    }
}

TEST_CASE("is_ramsey_witness: budget produces INDETERMINATE") {
    auto inst = make_instance(kLeaf, fan(3), 3);
    auto w = is_ramsey_witness(inst, balanced_tree(3, 2), 2);
    CHECK(w.verdict == RamseyVerdict::INDETERMINATE);
    CHECK(w.nodes_explored >= 2);
}

TEST_CASE("is_ramsey_witness agrees with its reversed-order rerun") {
    auto inst = make_instance(kLeaf, fan(2), 2);
    for (const auto& C : {fan(2), fan(3), balanced_tree(2, 2)}) {
        auto a = is_ramsey_witness(inst, C);
        auto b = is_ramsey_witness(inst, C, 0, true);
        CHECK(a.verdict == b.verdict);
        if (b.verdict == RamseyVerdict::REFUTED)
            CHECK_FALSE(mono_copy(inst, C, b.bad_coloring).has_value());
    }
}

TEST_CASE("ramsey_search finds the fan witnesses") {
    auto r2 = ramsey_search(make_instance(kLeaf, fan(2), 2), 6);
    REQUIRE(r2.found);
    // first working candidate is the 3-leaf fan (balanced b=3, d=1)
    CHECK(r2.C.size() == 4);
    CHECK(r2.C.marked_leaves().size() == 3);

    auto r3 = ramsey_search(make_instance(kLeaf, fan(2), 3), 8);
    REQUIRE(r3.found);
    CHECK(r3.C.marked_leaves().size() == 4);
    // refutations were recorded for the smaller candidates
    CHECK(!r3.refuted.empty());

    CHECK_THROWS_AS(ramsey_search(make_instance(kLeaf, fan(2), 2), 2), TreeError);
}

TEST_CASE("collapse_leaf_coloring: constant and LS-invariant colorings") {
    MeetTree t = MeetTree::parse("#autoclose\n-\n0\n0.0 P\n0.1 P\n1 P\n");
    auto q = qftp(t, {t.require(Path{0}), t.require(Path{0, 0})}, LanguageTag::L0P);

    auto constant = collapse_leaf_coloring(t, q, [](const std::vector<NodeId>&) { return 7; });
    CHECK(constant.well_defined);
    for (const auto& [minus, c] : constant.minus_coloring) CHECK(c == 7);

    // LS-code coloring is well-defined on the minus parts
    std::map<std::string, int> palette;
    auto ls_color = [&](const std::vector<NodeId>& tup) {
        auto key = qftp(t, tup, LanguageTag::LS).to_string();
        return palette.emplace(key, static_cast<int>(palette.size())).first->second;
    };
    auto ls = collapse_leaf_coloring(t, q, ls_color);
    CHECK(ls.well_defined);

    // a coloring that separates two leaves above one unmarked node is
    // rejected with a witness pair
    auto split = collapse_leaf_coloring(t, q, [&](const std::vector<NodeId>& tup) {
        return tup[1] == t.require(Path{0, 0}) ? 0 : 1;
    });
    REQUIRE_FALSE(split.well_defined);
    CHECK(split.tuple_a[0] == split.tuple_b[0]);
    CHECK(split.tuple_a[1] != split.tuple_b[1]);
}

TEST_CASE("collapse round trip: lift then collapse returns the color") {
    MeetTree t = balanced_tree(2, 2);
    auto q = qftp(t, {t.require(Path{0}), t.require(Path{0, 0})}, LanguageTag::L0P);
    // color by the minus node id, lifted through arbitrary leaf extensions
    auto chi = [](const std::vector<NodeId>& tup) { return static_cast<int>(tup[0]); };
    auto res = collapse_leaf_coloring(t, q, chi);
    REQUIRE(res.well_defined);
    for (const auto& [minus, c] : res.minus_coloring) CHECK(c == static_cast<int>(minus[0]));
}
