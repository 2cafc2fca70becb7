#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cartan {

// Derivative multi-index (a_1,...,a_n), one slot per independent variable.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int n) : e_(static_cast<size_t>(n), 0) {
        if (n < 0)
            throw std::invalid_argument("MultiIndex: negative dimension");
    }
    explicit MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
        for (int v : e_)
            if (v < 0)
                throw std::invalid_argument("MultiIndex: negative entry");
    }

    int size() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_.at(static_cast<size_t>(i)); }
    int order() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    bool isZero() const { return order() == 0; }

    MultiIndex plus(int dir) const {
        MultiIndex r = *this;
        r.e_.at(static_cast<size_t>(dir)) += 1;
        return r;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        requireSameSize(o);
        MultiIndex r = *this;
        for (size_t i = 0; i < e_.size(); ++i)
            r.e_[i] += o.e_[i];
        return r;
    }

    // Componentwise difference; requires *this >= o componentwise.
    MultiIndex operator-(const MultiIndex& o) const {
        requireSameSize(o);
        MultiIndex r = *this;
        for (size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] -= o.e_[i];
            if (r.e_[i] < 0)
                throw std::invalid_argument("MultiIndex: subtraction underflow");
        }
        return r;
    }

    bool dominates(const MultiIndex& o) const {
        if (size() != o.size())
            return false;
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] < o.e_[i])
                return false;
        return true;
    }

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return !(*this == o); }

    // Graded-lexicographic order: total order first, then lex.
    bool operator<(const MultiIndex& o) const {
        int a = order(), b = o.order();
        if (a != b)
            return a < b;
        return e_ < o.e_;
    }
    bool operator>(const MultiIndex& o) const { return o < *this; }

    const std::vector<int>& entries() const { return e_; }

private:
    void requireSameSize(const MultiIndex& o) const {
        if (size() != o.size())
            throw std::invalid_argument("MultiIndex: dimension mismatch");
    }

    std::vector<int> e_;
};

}  // namespace cartan
