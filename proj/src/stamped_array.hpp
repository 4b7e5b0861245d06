#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace transit_hl::detail {

// Array whose entries fall back to a default value after reset(), without
// touching memory. Each entry remembers the epoch it was written in.
template <class T>
class StampedArray {
public:
    StampedArray() = default;
    StampedArray(std::size_t n, T fallback) : values_(n, fallback), stamps_(n, 0), fallback_(fallback) {}

    void resize(std::size_t n, T fallback) {
        values_.assign(n, fallback);
        stamps_.assign(n, 0);
        fallback_ = fallback;
        epoch_ = 1;
    }

    std::size_t size() const { return values_.size(); }

    void reset() {
        if (++epoch_ == 0) {
            std::fill(stamps_.begin(), stamps_.end(), 0);
            epoch_ = 1;
        }
    }

    const T &operator[](std::size_t i) const { return stamps_[i] == epoch_ ? values_[i] : fallback_; }

    void set(std::size_t i, T value) {
        values_[i] = value;
        stamps_[i] = epoch_;
    }

    bool written(std::size_t i) const { return stamps_[i] == epoch_; }

private:
    std::vector<T> values_;
    std::vector<std::uint32_t> stamps_;
    T fallback_{};
    std::uint32_t epoch_ = 1;
};

}  // namespace transit_hl::detail
