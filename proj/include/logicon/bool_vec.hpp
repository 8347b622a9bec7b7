#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace logicon {

/// Dense boolean vector packed 64 entries per word.
///
/// Arithmetic follows the boolean semiring: addition is OR, multiplication
/// is AND. Out-of-range bits in the last word are kept at zero so that
/// word-level comparisons and popcounts need no masking.
class bool_vec {
public:
    bool_vec() = default;

    explicit bool_vec(std::size_t n, bool fill = false)
        : size_(n), words_((n + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
        trim();
    }

    /// Builds from a 0/1 initializer, e.g. bool_vec({1,0,1}).
    bool_vec(std::initializer_list<int> bits) : bool_vec(bits.size()) {
        std::size_t i = 0;
        for (int b : bits) set(i++, b != 0);
    }

    static bool_vec zeros(std::size_t n) { return bool_vec(n, false); }
    static bool_vec ones(std::size_t n) { return bool_vec(n, true); }

    /// Standard basis vector: a single 1 at position i.
    static bool_vec unit(std::size_t n, std::size_t i) {
        bool_vec v(n);
        v.set(i, true);
        return v;
    }

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const {
        check(i);
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    void set(std::size_t i, bool value) {
        check(i);
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }

    void flip(std::size_t i) { set(i, !get(i)); }

    /// Number of entries equal to 1.
    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    bool all() const { return count() == size_; }

    bool_vec& operator|=(const bool_vec& o) {
        same_size(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }

    bool_vec& operator&=(const bool_vec& o) {
        same_size(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }

    bool_vec& operator^=(const bool_vec& o) {
        same_size(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
        return *this;
    }

    friend bool_vec operator|(bool_vec a, const bool_vec& b) { return a |= b; }
    friend bool_vec operator&(bool_vec a, const bool_vec& b) { return a &= b; }
    friend bool_vec operator^(bool_vec a, const bool_vec& b) { return a ^= b; }

    bool_vec operator~() const {
        bool_vec r(*this);
        for (std::uint64_t& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    friend bool operator==(const bool_vec& a, const bool_vec& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    /// Componentwise order: true when every 1 of *this is also a 1 of o.
    bool leq(const bool_vec& o) const {
        same_size(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    /// Visits the index of every 1-bit in increasing order.
    template <class Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                const int b = std::countr_zero(w);
                fn(k * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    /// Raw word storage, low bit of word 0 is entry 0.
    const std::vector<std::uint64_t>& words() const { return words_; }

    std::string to_string() const {
        std::string s;
        s.reserve(size_);
        for (std::size_t i = 0; i < size_; ++i) s += get(i) ? '1' : '0';
        return s;
    }

private:
    void check(std::size_t i) const {
        if (i >= size_)
            throw index_error("bool_vec index " + std::to_string(i) + " out of range [0," +
                              std::to_string(size_) + ")");
    }

    void same_size(const bool_vec& o) const {
        if (size_ != o.size_)
            throw shape_error("bool_vec size mismatch: " + std::to_string(size_) + " vs " +
                              std::to_string(o.size_));
    }

    // Clears bits past size_ in the last word.
    void trim() {
        const std::size_t rem = size_ % 64;
        if (rem != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace logicon
