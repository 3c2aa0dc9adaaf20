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

#include "sqslab/quantum.h"

#include <algorithm>
#include <numeric>

#include "sqslab/errors.h"

namespace sqslab {

namespace {

constexpr uint64_t kMaxOrderModulus = uint64_t{1} << 20;

}  // namespace

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    return std::gcd(a, b);
}

uint64_t lcm_u64(uint64_t a, uint64_t b) {
    return std::lcm(a, b);
}

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t mod) {
    if (mod == 1) {
        return 0;
    }
    unsigned __int128 result = 1;
    unsigned __int128 b = base % mod;
    while (exp > 0) {
        if (exp & 1) {
            result = result * b % mod;
        }
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<uint64_t>(result);
}

uint64_t order_of(uint64_t a, uint64_t N) {
    if (N < 2 || N > kMaxOrderModulus) {
        fail(ErrorKind::Usage, "order_of needs 2 <= N <= 2^20, got N = " + std::to_string(N));
    }
    if (gcd_u64(a % N, N) != 1) {
        fail(ErrorKind::Precondition, "gcd(" + std::to_string(a) + ", " + std::to_string(N) + ") != 1");
    }
    uint64_t x = a % N;
    uint64_t r = 1;
    while (x != 1) {
        x = x * (a % N) % N;
        r++;
    }
    return r;
}

ShorInstance ShorInstance::make(uint64_t N, uint64_t a, int n) {
    if (n < 1 || n > kMaxBitWidth) {
        fail(ErrorKind::Usage, "register width outside [1, 32]");
    }
    if (N > (uint64_t{1} << n)) {
        fail(ErrorKind::Usage, "N = " + std::to_string(N) + " does not fit in " + std::to_string(n) + " bits");
    }
    ShorInstance inst;
    inst.N = N;
    inst.a = a;
    inst.n = n;
    inst.r = order_of(a, N);
    return inst;
}

nlohmann::json ShorInstance::to_json() const {
    return {{"kind", "shor"}, {"N", N}, {"a", a}, {"n", n}};
}

ShorInstance ShorInstance::from_json(const nlohmann::json &j) {
    return make(j.at("N").get<uint64_t>(), j.at("a").get<uint64_t>(), j.at("n").get<int>());
}

uint64_t rounded_multiple(uint64_t t, int n, uint64_t r) {
    if (r == 0) {
        fail(ErrorKind::Usage, "rounded_multiple with r = 0");
    }
    unsigned __int128 num = static_cast<unsigned __int128>(t) << n;
    uint64_t q = static_cast<uint64_t>(num / r);
    uint64_t rem = static_cast<uint64_t>(num % r);
    if (2 * static_cast<unsigned __int128>(rem) > r || (2 * static_cast<unsigned __int128>(rem) == r && (q & 1))) {
        q++;
    }
    return q;
}

std::vector<uint64_t> shor_hidden_set(const ShorInstance &instance) {
    std::vector<uint64_t> out;
    out.reserve(instance.r);
    for (uint64_t t = 0; t < instance.r; t++) {
        out.push_back(rounded_multiple(t, instance.n, instance.r));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Predicate shor_hidden_predicate(const ShorInstance &instance) {
    return Predicate::set_membership(Domain::full_cube(instance.n), shor_hidden_set(instance));
}

std::vector<std::pair<uint64_t, uint64_t>> convergents(uint64_t y, uint64_t Q) {
    if (Q == 0) {
        fail(ErrorKind::Usage, "convergents of y/0");
    }
    std::vector<std::pair<uint64_t, uint64_t>> out;
    // h_{k} = a_k h_{k-1} + h_{k-2}, same for k.
    uint64_t h_prev = 1, h_prev2 = 0;
    uint64_t k_prev = 0, k_prev2 = 1;
    uint64_t num = y, den = Q;
    while (den != 0) {
        uint64_t a = num / den;
        uint64_t h = a * h_prev + h_prev2;
        uint64_t k = a * k_prev + k_prev2;
        out.emplace_back(h, k);
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        uint64_t rem = num % den;
        num = den;
        den = rem;
    }
    return out;
}

namespace {

// |y/Q - t/d| <= 1/(2Q), in integers.
bool close_convergent(uint64_t y, uint64_t Q, uint64_t t, uint64_t d) {
    unsigned __int128 lhs = static_cast<unsigned __int128>(y) * d;
    unsigned __int128 rhs = static_cast<unsigned __int128>(t) * Q;
    unsigned __int128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
    return 2 * diff <= d;
}

}  // namespace

std::optional<uint64_t> cf_denominator(uint64_t y, uint64_t Q, uint64_t N) {
    if (y == 0) {
        return std::nullopt;
    }
    for (const auto &[t, d] : convergents(y, Q)) {
        if (d >= N) {
            break;
        }
        if (close_convergent(y, Q, t, d)) {
            return d;
        }
    }
    return std::nullopt;
}

std::optional<uint64_t> continued_fraction_order(uint64_t y, uint64_t Q, uint64_t N, uint64_t a) {
    if (y == 0) {
        return std::nullopt;
    }
    for (const auto &[t, d] : convergents(y, Q)) {
        if (d >= N) {
            break;
        }
        if (close_convergent(y, Q, t, d) && mod_pow(a, d, N) == 1) {
            return d;
        }
    }
    return std::nullopt;
}

std::optional<uint64_t> recover_order_lcm(std::span<const uint64_t> samples, uint64_t Q, uint64_t N, uint64_t a) {
    uint64_t L = 1;
    for (uint64_t y : samples) {
        std::optional<uint64_t> d = cf_denominator(y, Q, N);
        if (!d) {
            continue;
        }
        L = lcm_u64(L, *d);
        if (L >= N) {
            return std::nullopt;  // a bad sample pushed L past any possible order
        }
        if (mod_pow(a, L, N) == 1) {
            return L;
        }
    }
    return std::nullopt;
}

SimonInstance SimonInstance::make(const BitVector &secret) {
    SimonInstance inst;
    inst.n = secret.width();
    inst.secret = secret;
    return inst;
}

Predicate SimonInstance::hidden_set() const {
    return Predicate::neg_parity(secret, true);
}

uint64_t SimonInstance::hidden_set_size() const {
    if (secret.is_zero()) {
        return (uint64_t{1} << n) - 1;
    }
    return (uint64_t{1} << (n - 1)) - 1;
}

nlohmann::json SimonInstance::to_json() const {
    return {{"kind", "simon"}, {"n", n}, {"secret_hex", secret.hex()}};
}

SimonInstance SimonInstance::from_json(const nlohmann::json &j) {
    return make(BitVector::from_hex(j.at("secret_hex").get<std::string>(), j.at("n").get<int>()));
}

int gf2_rank(std::span<const uint64_t> rows, int width) {
    std::vector<uint64_t> basis(width, 0);  // basis[b] has leading bit b
    int rank = 0;
    for (uint64_t row : rows) {
        uint64_t v = row;
        for (int b = width - 1; b >= 0 && v != 0; b--) {
            if (!((v >> b) & 1)) {
                continue;
            }
            if (basis[b] == 0) {
                basis[b] = v;
                rank++;
                v = 0;
            } else {
                v ^= basis[b];
            }
        }
    }
    return rank;
}

Gf2Solution gf2_solve(std::span<const BitVector> samples) {
    Gf2Solution out;
    if (samples.empty()) {
        return out;
    }
    int n = samples.front().width();
    std::vector<uint64_t> pivot_row(n, 0);  // reduced row with leading bit b, 0 if none
    for (const BitVector &row : samples) {
        if (row.width() != n) {
            fail(ErrorKind::Usage, "samples have different widths");
        }
        uint64_t v = row.bits();
        for (int b = n - 1; b >= 0 && v != 0; b--) {
            if ((v >> b) & 1) {
                if (pivot_row[b] == 0) {
                    pivot_row[b] = v;
                    v = 0;
                } else {
                    v ^= pivot_row[b];
                }
            }
        }
    }
    // Back-substitute to reduced echelon form.
    for (int b = 0; b < n; b++) {
        if (pivot_row[b] == 0) {
            continue;
        }
        for (int c = b + 1; c < n; c++) {
            if (pivot_row[c] != 0 && ((pivot_row[c] >> b) & 1)) {
                pivot_row[c] ^= pivot_row[b];
            }
        }
    }
    int free_bit = -1;
    for (int b = 0; b < n; b++) {
        if (pivot_row[b] != 0) {
            out.rank++;
        } else {
            free_bit = b;
        }
    }
    if (out.rank == n) {
        out.status = Gf2Solution::Status::Secret;
        out.secret = BitVector(n, 0);
    } else if (out.rank == n - 1) {
        uint64_t s = uint64_t{1} << free_bit;
        for (int b = 0; b < n; b++) {
            if (pivot_row[b] != 0 && ((pivot_row[b] >> free_bit) & 1)) {
                s |= uint64_t{1} << b;
            }
        }
        out.status = Gf2Solution::Status::Secret;
        out.secret = BitVector(n, s);
    }
    return out;
}

SampleSource simon_standard_source(const SimonInstance &instance) {
    if (instance.degenerate()) {
        fail(ErrorKind::Precondition, "hidden set is empty");
    }
    int n = instance.n;
    uint64_t s = instance.secret.bits();
    return [n, s](Rng &rng) {
        uint64_t top = uint64_t{1} << n;
        while (true) {
            uint64_t y = 1 + rng.below(top - 1);
            if (!parity_of(y & s)) {
                return y;
            }
        }
    };
}

SimonRun simon_end_to_end(const SimonInstance &instance, const SampleSource &source, uint64_t num_samples, Rng &rng) {
    SimonRun out;
    if (instance.degenerate()) {
        out.status = SimonRun::Status::Degenerate;
        return out;
    }
    std::vector<BitVector> rows;
    rows.reserve(num_samples);
    for (uint64_t k = 0; k < num_samples; k++) {
        rows.emplace_back(instance.n, source(rng));
    }
    Gf2Solution sol = gf2_solve(rows);
    out.rank = sol.rank;
    if (sol.status == Gf2Solution::Status::Underdetermined) {
        out.status = SimonRun::Status::Underdetermined;
        return out;
    }
    out.recovered = sol.secret;
    out.status = sol.secret == instance.secret ? SimonRun::Status::Recovered : SimonRun::Status::Wrong;
    return out;
}

}  // namespace sqslab
