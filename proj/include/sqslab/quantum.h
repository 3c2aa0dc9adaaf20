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

#ifndef SQSLAB_QUANTUM_H
#define SQSLAB_QUANTUM_H

// Classical models of the Simon and Shor sampling stages: the hidden sets they
// sample from and the post-processing applied to the samples.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "sqslab/domain.h"
#include "sqslab/rng.h"

namespace sqslab {

uint64_t gcd_u64(uint64_t a, uint64_t b);
uint64_t lcm_u64(uint64_t a, uint64_t b);
uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t mod);

/// Least r > 0 with a^r = 1 mod N. Requires gcd(a, N) = 1 and N <= 2^20.
uint64_t order_of(uint64_t a, uint64_t N);

struct ShorInstance {
    uint64_t N = 0;
    uint64_t a = 0;
    int n = 0;  // first-register width; 2^n >= N
    uint64_t r = 0;

    static ShorInstance make(uint64_t N, uint64_t a, int n);
    nlohmann::json to_json() const;
    static ShorInstance from_json(const nlohmann::json &j);
};

/// round(t 2^n / r) with ties to even.
uint64_t rounded_multiple(uint64_t t, int n, uint64_t r);

/// {round(t 2^n / r) : 0 <= t < r}, ascending.
std::vector<uint64_t> shor_hidden_set(const ShorInstance &instance);
Predicate shor_hidden_predicate(const ShorInstance &instance);

/// Continued fraction convergents (numerator, denominator) of y / Q.
std::vector<std::pair<uint64_t, uint64_t>> convergents(uint64_t y, uint64_t Q);

/// Denominator of the first convergent t/d of y/Q with d < N and |y/Q - t/d| <= 1/(2Q).
/// This is r / gcd(t, r) for ideal samples. None for y = 0.
std::optional<uint64_t> cf_denominator(uint64_t y, uint64_t Q, uint64_t N);

/// Least convergent denominator d < N with |y/Q - t/d| <= 1/(2Q) and a^d = 1 mod N.
std::optional<uint64_t> continued_fraction_order(uint64_t y, uint64_t Q, uint64_t N, uint64_t a);

/// lcm of cf_denominator over the samples, stopping once a^L = 1 mod N.
std::optional<uint64_t> recover_order_lcm(std::span<const uint64_t> samples, uint64_t Q, uint64_t N, uint64_t a);

struct SimonInstance {
    int n = 0;
    BitVector secret;

    static SimonInstance make(const BitVector &secret);
    /// {y != 0 : y.s = 0}.
    Predicate hidden_set() const;
    uint64_t hidden_set_size() const;
    bool degenerate() const {
        return hidden_set_size() == 0;
    }
    nlohmann::json to_json() const;
    static SimonInstance from_json(const nlohmann::json &j);
};

struct Gf2Solution {
    enum class Status { Secret, Underdetermined };
    Status status = Status::Underdetermined;
    BitVector secret;  // valid when status == Secret; all-zero means rank n
    int rank = 0;
};

/// Nullspace of the sample rows over GF(2): rank n gives s = 0, rank n-1 the unique
/// nonzero s, anything lower is underdetermined.
Gf2Solution gf2_solve(std::span<const BitVector> samples);

/// Rank of a set of rows of the given width.
int gf2_rank(std::span<const uint64_t> rows, int width);

using SampleSource = std::function<uint64_t(Rng &)>;

/// Uniform over the hidden set (what one run of the quantum circuit gives).
SampleSource simon_standard_source(const SimonInstance &instance);

struct SimonRun {
    enum class Status { Recovered, Wrong, Underdetermined, Degenerate };
    Status status = Status::Degenerate;
    std::optional<BitVector> recovered;
    int rank = 0;
    bool success() const {
        return status == Status::Recovered;
    }
};

SimonRun simon_end_to_end(const SimonInstance &instance, const SampleSource &source, uint64_t num_samples, Rng &rng);

}  // namespace sqslab

#endif
