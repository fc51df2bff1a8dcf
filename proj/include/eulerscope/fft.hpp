#pragma once

#include <complex>
#include <cstddef>
#include <mutex>

namespace eulerscope::fft {

/// FFTW planning is not thread-safe; every planner call takes this lock.
std::mutex& planner_mutex();

void* aligned_alloc_bytes(std::size_t bytes);
void aligned_free(void* p);

/// Owning FFTW-aligned array.
template <class T>
class Buffer {
public:
    Buffer() = default;
    explicit Buffer(std::size_t n) : data_(static_cast<T*>(aligned_alloc_bytes(n * sizeof(T)))), size_(n) {
        for (std::size_t i = 0; i < n; ++i) data_[i] = T{};
    }
    ~Buffer() { aligned_free(data_); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
    Buffer(Buffer&& o) noexcept : data_(o.data_), size_(o.size_) {
        o.data_ = nullptr;
        o.size_ = 0;
    }
    Buffer& operator=(Buffer&& o) noexcept {
        if (this != &o) {
            aligned_free(data_);
            data_ = o.data_;
            size_ = o.size_;
            o.data_ = nullptr;
            o.size_ = 0;
        }
        return *this;
    }

    T* data() { return data_; }
    const T* data() const { return data_; }
    std::size_t size() const { return size_; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

private:
    T* data_ = nullptr;
    std::size_t size_ = 0;
};

using Complex = std::complex<double>;

}  // namespace eulerscope::fft
