#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treekit/scan.hpp"

using namespace treekit;

TEST_CASE("same type scan: serial and parallel agree") {
    auto serial = same_type_scan(6, false);
    auto par = same_type_scan(6, true);
    CHECK(serial == par);
    CHECK(serial.ok());
    CHECK(serial.trees > 0);
    CHECK(serial.tuples > serial.trees);  // every singleton is closed
}

TEST_CASE("collapse scan: serial and parallel agree") {
    auto serial = collapse_roundtrip_scan(6, 3, false);
    auto par = collapse_roundtrip_scan(6, 3, true);
    CHECK(serial == par);
    CHECK(serial.ok());
    CHECK(serial.comparisons > 0);
}

TEST_CASE("scan reports are deterministic across runs") {
    CHECK(same_type_scan(5, true) == same_type_scan(5, true));
    CHECK(collapse_roundtrip_scan(5, 2, true) == collapse_roundtrip_scan(5, 2, true));
}
