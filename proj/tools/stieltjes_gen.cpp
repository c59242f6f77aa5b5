// Regenerates the frozen Stieltjes constant table in core/src/stieltjes.cpp.
//
// Usage: stieltjes_gen [count] [digits] [nodes] [radius]
//
// Defaults recompute gamma_0 .. gamma_12 at 115 working digits on a 256-node
// circle of radius 1/2 and print them at 80 digits, which is the format the
// frozen table uses.

#include <cstdio>
#include <cstdlib>

#include "momentforge/special.hpp"

int main(int argc, char** argv) {
    int count = argc > 1 ? std::atoi(argv[1]) : 13;
    int digits = argc > 2 ? std::atoi(argv[2]) : 115;
    int nodes = argc > 3 ? std::atoi(argv[3]) : 256;
    double radius = argc > 4 ? std::atof(argv[4]) : 0.5;

    auto g = momentforge::detail::compute_stieltjes(count, digits, nodes, radius);
    for (int n = 0; n < count; ++n)
        std::printf("    \"%s\",\n", g[n].to_string(80).c_str());
    return 0;
}
