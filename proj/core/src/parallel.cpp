#include "momentforge/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <string>

namespace momentforge {

int thread_count() {
    static int cached = [] {
        if (const char* env = std::getenv("MOMENT_FORGE_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return std::min(v, 64);
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? std::min<int>(static_cast<int>(hw), 64) : 1;
    }();
    return cached;
}

} // namespace momentforge
