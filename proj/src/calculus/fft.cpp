#include "eulerscope/fft.hpp"

#include <fftw3.h>

#include <new>

namespace eulerscope::fft {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void* aligned_alloc_bytes(std::size_t bytes) {
    if (bytes == 0) return nullptr;
    void* p = fftw_malloc(bytes);
    if (p == nullptr) throw std::bad_alloc();
    return p;
}

void aligned_free(void* p) {
    if (p != nullptr) fftw_free(p);
}

}  // namespace eulerscope::fft
