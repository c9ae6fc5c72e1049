// bitword.hpp -- fixed-width bitstrings, the universal register value.
#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpkc {

// Fixed-width bitstring. Bit index 0 is the least significant bit of the
// integer encoding; widths are fixed at construction and operations on
// mismatched widths throw.
class BitWord {
public:
    BitWord() = default;

    BitWord(int width, std::uint64_t value) : width_(width), value_(value) {
        if (width < 1 || width > 64)
            throw std::invalid_argument("BitWord: width must be in [1,64]");
        if (width < 64 && (value >> width) != 0)
            throw std::invalid_argument("BitWord: value does not fit width");
    }

    static BitWord zero(int width) { return BitWord(width, 0); }

    // Parses a binary string written most-significant bit first.
    static BitWord from_string(const std::string& msb_first) {
        if (msb_first.empty() || msb_first.size() > 64)
            throw std::invalid_argument("BitWord: bad string length");
        std::uint64_t v = 0;
        for (char c : msb_first) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("BitWord: bad character in bitstring");
            v = (v << 1) | static_cast<std::uint64_t>(c - '0');
        }
        return BitWord(static_cast<int>(msb_first.size()), v);
    }

    int width() const { return width_; }
    std::uint64_t value() const { return value_; }

    bool bit(int i) const {
        if (i < 0 || i >= width_) throw std::out_of_range("BitWord: bit index");
        return (value_ >> i) & 1u;
    }

    int hamming_weight() const { return std::popcount(value_); }

    BitWord operator^(const BitWord& o) const {
        require_same_width(o);
        return BitWord(width_, value_ ^ o.value_);
    }

    BitWord with_bit_flipped(int i) const {
        if (i < 0 || i >= width_) throw std::out_of_range("BitWord: bit index");
        return BitWord(width_, value_ ^ (std::uint64_t{1} << i));
    }

    // Concatenation: *this supplies the high (leading) bits.
    BitWord concat(const BitWord& low) const {
        if (width_ + low.width_ > 64)
            throw std::invalid_argument("BitWord: concat exceeds 64 bits");
        return BitWord(width_ + low.width_, (value_ << low.width_) | low.value_);
    }

    // Extracts `width` bits starting at bit `lsb`.
    BitWord slice(int lsb, int width) const {
        if (lsb < 0 || width < 1 || lsb + width > width_)
            throw std::out_of_range("BitWord: slice out of range");
        std::uint64_t v = (value_ >> lsb) & mask(width);
        return BitWord(width, v);
    }

    BitWord high_bits(int n) const { return slice(width_ - n, n); }
    BitWord low_bits(int n) const { return slice(0, n); }

    // Most-significant bit first.
    std::string to_string() const {
        std::string s(static_cast<std::size_t>(width_), '0');
        for (int i = 0; i < width_; ++i)
            if (bit(i)) s[static_cast<std::size_t>(width_ - 1 - i)] = '1';
        return s;
    }

    friend bool operator==(const BitWord& a, const BitWord& b) {
        return a.width_ == b.width_ && a.value_ == b.value_;
    }
    friend auto operator<=>(const BitWord& a, const BitWord& b) {
        if (auto c = a.width_ <=> b.width_; c != 0) return c;
        return a.value_ <=> b.value_;
    }

    static std::uint64_t mask(int width) {
        return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    }

private:
    void require_same_width(const BitWord& o) const {
        if (width_ != o.width_)
            throw std::invalid_argument("BitWord: width mismatch");
    }

    int width_ = 1;
    std::uint64_t value_ = 0;
};

inline int bit_length(std::uint64_t v) {
    return v == 0 ? 1 : 64 - std::countl_zero(v);
}

} // namespace qpkc
