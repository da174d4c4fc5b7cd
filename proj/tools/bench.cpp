#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "treekit/scan.hpp"

using namespace treekit;

namespace {

template <typename Fn>
double timed(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// Compares the serial reference kernels against the OpenMP ones and checks
// that the reports match.
int main(int argc, char** argv) {
    int max_nodes = argc > 1 ? std::atoi(argv[1]) : 7;
    if (max_nodes < 1) {
        std::fprintf(stderr, "usage: treekit-bench [max_nodes]\n");
        return 2;
    }
    ScanReport s1, s2, c1, c2;
    double ts1 = timed([&] { s1 = same_type_scan(max_nodes, false); });
    double ts2 = timed([&] { s2 = same_type_scan(max_nodes, true); });
    std::printf("same_type_scan(%d): serial %.3fs, parallel %.3fs, %llu tuples, match=%s\n",
                max_nodes, ts1, ts2, s1.tuples, s1 == s2 ? "yes" : "NO");
    double tc1 = timed([&] { c1 = collapse_roundtrip_scan(max_nodes, 3, false); });
    double tc2 = timed([&] { c2 = collapse_roundtrip_scan(max_nodes, 3, true); });
    std::printf("collapse_roundtrip_scan(%d): serial %.3fs, parallel %.3fs, %llu types checked, match=%s\n",
                max_nodes, tc1, tc2, c1.tuples, c1 == c2 ? "yes" : "NO");
    return s1 == s2 && c1 == c2 && s1.ok() && c1.ok() ? 0 : 1;
}
