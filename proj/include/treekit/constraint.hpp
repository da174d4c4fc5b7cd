#pragma once

#include <map>
#include <string>
#include <vector>

#include "treekit/tree.hpp"

namespace treekit {

// A conjunction of atoms over node variables. Text form, atoms joined by
// ';':
//   x <= y     prefix order        x < y      proper prefix
//   x <lex y   lex order           x incomp y incomparability
//   x ^ y = z  meet                P(x), !P(x)
//   x = 0.1    constant node
// Variable names are identifiers; whitespace is ignored.
class PatternConstraint {
public:
    static PatternConstraint parse(const std::string& text);
    static PatternConstraint empty() { return {}; }

    // Variables appearing in the constraint.
    std::vector<std::string> variables() const;

    // Evaluate under a full assignment. Missing variable -> error.
    bool eval(const MeetTree& t, const std::map<std::string, NodeId>& asg) const;

    // Evaluate only those atoms whose variables are all assigned.
    bool eval_partial(const MeetTree& t, const std::map<std::string, NodeId>& asg) const;

private:
    enum class Kind { LE, LT, LEX, INCOMP, MEET, MARK, NOMARK, CONST };
    struct Atom {
        Kind kind;
        std::string x, y, z;
        Path c;  // CONST only
    };
    std::vector<Atom> atoms_;

    enum class Tri { True, False, Unknown };
    Tri eval_atom(const MeetTree& t, const Atom& a,
                  const std::map<std::string, NodeId>& asg, bool partial) const;
};

}  // namespace treekit
