#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace treekit {

using Rat = boost::multiprecision::cpp_rational;

// "p/q" (or plain "p") with optional sign.
inline std::string rat_to_string(const Rat& r) { return r.str(); }

inline Rat rat_from_string(const std::string& s) { return Rat(s); }

// Closed nonempty interval with exact endpoints.
struct RatInterval {
    Rat lo, hi;
    RatInterval() = default;
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("empty interval");
    }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool operator==(const RatInterval& o) const = default;
};

inline std::optional<RatInterval> intersect(const RatInterval& a, const RatInterval& b) {
    Rat lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    return RatInterval(lo, hi);
}

inline bool disjoint(const RatInterval& a, const RatInterval& b) {
    return !intersect(a, b).has_value();
}

inline bool subset(const RatInterval& a, const RatInterval& b) {
    return b.lo <= a.lo && a.hi <= b.hi;
}

}  // namespace treekit
