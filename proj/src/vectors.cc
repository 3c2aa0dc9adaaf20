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

#include "sqslab/vectors.h"

#include <sstream>

#include "sqslab/errors.h"

namespace sqslab {

BitVector::BitVector(int width, uint64_t bits) : width_(width), bits_(bits) {
    if (width < 0 || width > kMaxBitWidth) {
        fail(ErrorKind::Usage, "bit vector width " + std::to_string(width) + " outside [0, 32]");
    }
    if (width < 64 && (bits >> width) != 0) {
        fail(ErrorKind::Usage, "bits do not fit in width " + std::to_string(width));
    }
}

BitVector BitVector::from_string(std::string_view binary) {
    uint64_t bits = 0;
    for (char c : binary) {
        if (c != '0' && c != '1') {
            fail(ErrorKind::Usage, "not a binary string: " + std::string(binary));
        }
        bits = (bits << 1) | static_cast<uint64_t>(c == '1');
    }
    return BitVector(static_cast<int>(binary.size()), bits);
}

BitVector BitVector::from_hex(std::string_view hex, int width) {
    return BitVector(width, parse_hex(hex));
}

BitVector BitVector::with_bit(int i, bool value) const {
    uint64_t mask = uint64_t{1} << (width_ - 1 - i);
    return BitVector(width_, value ? (bits_ | mask) : (bits_ & ~mask));
}

std::string BitVector::str() const {
    std::string out;
    out.reserve(width_);
    for (int i = 0; i < width_; i++) {
        out.push_back((*this)[i] ? '1' : '0');
    }
    return out;
}

std::string BitVector::hex() const {
    return to_hex(bits_, width_);
}

bool dot_gf2(const BitVector &x, const BitVector &s) {
    if (x.width() != s.width()) {
        fail(ErrorKind::Usage, "dot_gf2 width mismatch: " + std::to_string(x.width()) + " vs " +
                                   std::to_string(s.width()));
    }
    return parity_of(x.bits() & s.bits());
}

std::string to_hex(uint64_t bits, int width) {
    int digits = width <= 0 ? 1 : (width + 3) / 4;
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(digits, '0');
    for (int i = digits - 1; i >= 0; i--) {
        out[i] = kDigits[bits & 0xF];
        bits >>= 4;
    }
    return out;
}

uint64_t parse_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) {
        hex.remove_prefix(2);
    }
    if (hex.empty() || hex.size() > 16) {
        fail(ErrorKind::Usage, "bad hex string '" + std::string(hex) + "'");
    }
    uint64_t v = 0;
    for (char c : hex) {
        int d;
        if (c >= '0' && c <= '9') {
            d = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            d = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            d = c - 'A' + 10;
        } else {
            fail(ErrorKind::Usage, "bad hex string '" + std::string(hex) + "'");
        }
        v = (v << 4) | static_cast<uint64_t>(d);
    }
    return v;
}

bool is_odd_prime(uint64_t p) {
    if (p < 3 || p % 2 == 0) {
        return false;
    }
    for (uint64_t d = 3; d * d <= p; d += 2) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

uint64_t ipow(uint64_t base, int exp) {
    uint64_t r = 1;
    for (int i = 0; i < exp; i++) {
        r *= base;
    }
    return r;
}

ZpVector::ZpVector(std::vector<uint32_t> entries, uint32_t p) : entries_(std::move(entries)), p_(p) {
    if (!is_odd_prime(p)) {
        fail(ErrorKind::Usage, "modulus " + std::to_string(p) + " is not an odd prime");
    }
    for (uint32_t e : entries_) {
        if (e >= p) {
            fail(ErrorKind::Usage, "entry " + std::to_string(e) + " not reduced mod " + std::to_string(p));
        }
    }
}

ZpVector ZpVector::from_code(uint64_t code, int n, uint32_t p) {
    std::vector<uint32_t> entries(n);
    for (int i = n - 1; i >= 0; i--) {
        entries[i] = static_cast<uint32_t>(code % p);
        code /= p;
    }
    return ZpVector(std::move(entries), p);
}

uint64_t ZpVector::code() const {
    uint64_t c = 0;
    for (uint32_t e : entries_) {
        c = c * p_ + e;
    }
    return c;
}

uint32_t ZpVector::dot(const ZpVector &x) const {
    if (x.size() != size() || x.p_ != p_) {
        fail(ErrorKind::Usage, "ZpVector dot shape mismatch");
    }
    uint64_t acc = 0;
    for (int i = 0; i < size(); i++) {
        acc += static_cast<uint64_t>(entries_[i]) * x.entries_[i];
    }
    return static_cast<uint32_t>(acc % p_);
}

std::string ZpVector::str() const {
    std::ostringstream out;
    out << '(';
    for (int i = 0; i < size(); i++) {
        out << (i ? "," : "") << entries_[i];
    }
    out << ')';
    return out.str();
}

}  // namespace sqslab
