#pragma once

#include <string>
#include <vector>

namespace treekit {

struct ScanReport {
    unsigned long long trees = 0;
    unsigned long long tuples = 0;
    unsigned long long comparisons = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    bool operator==(const ScanReport& o) const = default;
};

// Over every tree class with <= max_nodes nodes and every pair of meet-closed
// ascending tuples with identical mark pattern and identical unmarked entries:
// equal L0P code must force an equal LS code. The parallel variant splits the
// tree list across OpenMP threads; reports are merged in tree order so both
// variants return identical results.
ScanReport same_type_scan(int max_nodes, bool parallel);

// Over every tree class with <= max_nodes nodes and every realized L0P leaf
// type of arity <= max_arity: the LS-code coloring of the realizations must
// collapse to a well-defined coloring of the unmarked parts, and lifting that
// coloring back must reproduce the original colors.
ScanReport collapse_roundtrip_scan(int max_nodes, int max_arity, bool parallel);

}  // namespace treekit
