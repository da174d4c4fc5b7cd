#pragma once

#include <string>

namespace treekit {

struct VerifyResult {
    bool ok = false;
    std::string detail;
};

// Re-checks a certificate emitted by the witness operations. Deliberately
// independent of the generators: only path relations and exact rational
// comparisons are used, never the construction code.
VerifyResult verify_certificate(const std::string& json_text);

}  // namespace treekit
