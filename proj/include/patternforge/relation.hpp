#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pf {

/// Square boolean matrix over the positions of a ClosedSet.
class BitMatrix {
  public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n, bool value = false) : n_(n), bits_(n * n, value ? 1 : 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m.set(i, i);
        }
        return m;
    }

    std::size_t size() const { return n_; }
    bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool value = true) { bits_[i * n_ + j] = value ? 1 : 0; }

    /// Number of pairs (i, j) with i != j.
    std::size_t strict_count() const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                c += (i != j && (*this)(i, j)) ? 1 : 0;
            }
        }
        return c;
    }

    bool is_subset_of(const BitMatrix& other) const {
        for (std::size_t k = 0; k < bits_.size(); ++k) {
            if (bits_[k] != 0 && other.bits_[k] == 0) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bits_;
};

} // namespace pf
