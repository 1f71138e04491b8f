#include "takagi/parallel.hpp"

#include <cstdlib>
#include <string>

namespace takagi {

int thread_count() {
    if (const char* env = std::getenv("TAKAGI_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace takagi
