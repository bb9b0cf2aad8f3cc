#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "congsec/errors.hpp"

namespace congsec {

// Packed bit string. Bit i lives in word i/64 at position i%64.
// Value semantics throughout; everything is deterministic and
// allocation-friendly for the hot encode/decode paths.
class BitString {
public:
    BitString() = default;
    explicit BitString(size_t n) : words_((n + 63) / 64, 0), n_(n) {}

    static BitString zeros(size_t n) { return BitString(n); }

    static BitString from_u64(uint64_t v, size_t nbits) {
        BitString b(nbits);
        for (size_t i = 0; i < nbits && i < 64; ++i)
            if ((v >> i) & 1) b.set(i, true);
        return b;
    }

    static BitString from_bools(const std::vector<bool>& v) {
        BitString b(v.size());
        for (size_t i = 0; i < v.size(); ++i) b.set(i, v[i]);
        return b;
    }

    size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void set(size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }

    void push_back(bool v) {
        if (n_ % 64 == 0) words_.push_back(0);
        ++n_;
        set(n_ - 1, v);
    }

    void append(const BitString& o) {
        for (size_t i = 0; i < o.n_; ++i) push_back(o.get(i));
    }

    BitString slice(size_t off, size_t len) const {
        if (off + len > n_) throw internal_error("BitString::slice out of range");
        BitString r(len);
        for (size_t i = 0; i < len; ++i) r.set(i, get(off + i));
        return r;
    }

    uint64_t to_u64() const {
        uint64_t v = 0;
        for (size_t i = 0; i < n_ && i < 64; ++i)
            if (get(i)) v |= uint64_t(1) << i;
        return v;
    }

    BitString& operator^=(const BitString& o) {
        if (o.n_ != n_) throw invalid_input("xor of bit strings with different lengths");
        for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }

    friend BitString operator^(BitString a, const BitString& b) { a ^= b; return a; }

    friend bool operator==(const BitString& a, const BitString& b) {
        if (a.n_ != b.n_) return false;
        for (size_t i = 0; i < a.words_.size(); ++i)
            if (a.words_[i] != b.words_[i]) return false;
        return true;
    }
    friend bool operator!=(const BitString& a, const BitString& b) { return !(a == b); }

    friend bool operator<(const BitString& a, const BitString& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (size_t i = a.words_.size(); i-- > 0;)
            if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
        return false;
    }

    size_t count() const {
        size_t c = 0;
        for (size_t i = 0; i < n_; ++i) c += get(i);
        return c;
    }

    // Canonical byte serialization: length header then packed little-endian words.
    void append_bytes(std::string& out) const {
        uint64_t len = n_;
        for (int i = 0; i < 8; ++i) out.push_back(char((len >> (8 * i)) & 0xff));
        size_t nbytes = (n_ + 7) / 8;
        for (size_t i = 0; i < nbytes; ++i)
            out.push_back(char((words_[i >> 3] >> (8 * (i & 7))) & 0xff));
    }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        size_t nbytes = (n_ + 7) / 8;
        for (size_t i = 0; i < nbytes; ++i) {
            unsigned byte = unsigned((words_[i >> 3] >> (8 * (i & 7))) & 0xff);
            s.push_back(digits[byte >> 4]);
            s.push_back(digits[byte & 0xf]);
        }
        return s;
    }

    std::string to_bit_string() const {
        std::string s;
        s.reserve(n_);
        for (size_t i = 0; i < n_; ++i) s.push_back(get(i) ? '1' : '0');
        return s;
    }

private:
    std::vector<uint64_t> words_;
    size_t n_ = 0;
};

// Sequential reader over a BitString, used when slicing tape material.
class BitReader {
public:
    explicit BitReader(const BitString& b) : b_(&b) {}
    BitString take(size_t n) {
        BitString r = b_->slice(pos_, n);
        pos_ += n;
        return r;
    }
    bool take_bit() { return b_->get(pos_++); }
    size_t remaining() const { return b_->size() - pos_; }

private:
    const BitString* b_;
    size_t pos_ = 0;
};

} // namespace congsec
