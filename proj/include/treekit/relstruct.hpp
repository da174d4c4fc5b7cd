#pragma once

#include <set>
#include <string>
#include <vector>

#include "treekit/rational.hpp"

namespace treekit {

// Finite relational structure on {0, ..., universe-1}.
struct RelStructure {
    struct Rel {
        std::string name;
        int arity = 0;
        std::set<std::vector<int>> tuples;
    };
    int universe = 0;
    std::vector<Rel> rels;

    bool holds(std::size_t rel, const std::vector<int>& t) const {
        return rels.at(rel).tuples.count(t) > 0;
    }
};

// Linear inequality sum(coeffs[i] * x_i) cmp rhs over rational points.
// cmp is one of "<", "<=", "=".
struct LinearPredicate {
    std::string name;
    std::vector<Rat> coeffs;
    std::string cmp;
    Rat rhs;

    bool holds(const std::vector<Rat>& xs) const;
};

}  // namespace treekit
