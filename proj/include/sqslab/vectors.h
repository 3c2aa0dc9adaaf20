// Copyright 2026 The sqslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQSLAB_VECTORS_H
#define SQSLAB_VECTORS_H

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sqslab {

constexpr int kMaxBitWidth = 32;

/// Fixed-width binary vector packed into an integer. Bit 0 is the leftmost
/// (most significant) bit, so integer order is lexicographic order.
class BitVector {
   public:
    BitVector() = default;
    BitVector(int width, uint64_t bits);

    /// Parses "1011" (binary string, leftmost character is bit 0).
    static BitVector from_string(std::string_view binary);
    /// Parses hex such as "b" into the given width.
    static BitVector from_hex(std::string_view hex, int width);

    int width() const {
        return width_;
    }
    uint64_t bits() const {
        return bits_;
    }
    bool operator[](int i) const {
        return (bits_ >> (width_ - 1 - i)) & 1;
    }
    BitVector with_bit(int i, bool value) const;
    bool is_zero() const {
        return bits_ == 0;
    }

    std::string str() const;
    std::string hex() const;

    bool operator==(const BitVector &other) const = default;

   private:
    int width_ = 0;
    uint64_t bits_ = 0;
};

/// s.x mod 2. Throws a usage error on width mismatch.
bool dot_gf2(const BitVector &x, const BitVector &s);

inline bool parity_of(uint64_t v) {
    return std::popcount(v) & 1;
}

/// Hex string with ceil(width/4) digits.
std::string to_hex(uint64_t bits, int width);
uint64_t parse_hex(std::string_view hex);

bool is_odd_prime(uint64_t p);

/// Vector over Z_p. Entry 0 is the most significant digit of the base-p code.
class ZpVector {
   public:
    ZpVector() = default;
    ZpVector(std::vector<uint32_t> entries, uint32_t p);

    static ZpVector from_code(uint64_t code, int n, uint32_t p);

    int size() const {
        return static_cast<int>(entries_.size());
    }
    uint32_t modulus() const {
        return p_;
    }
    uint32_t operator[](int i) const {
        return entries_[i];
    }
    const std::vector<uint32_t> &entries() const {
        return entries_;
    }
    uint64_t code() const;

    /// a.x mod p.
    uint32_t dot(const ZpVector &x) const;

    std::string str() const;

    bool operator==(const ZpVector &other) const = default;

   private:
    std::vector<uint32_t> entries_;
    uint32_t p_ = 0;
};

uint64_t ipow(uint64_t base, int exp);

}  // namespace sqslab

#endif
