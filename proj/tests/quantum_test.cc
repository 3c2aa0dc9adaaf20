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

#include <numeric>

#include "gtest/gtest.h"
#include "sqslab/samplers.h"
#include "test_util.h"

using namespace sqslab;
using sqslab_test::kind_of;

namespace {

uint64_t naive_order(uint64_t a, uint64_t N) {
    uint64_t v = a % N;
    uint64_t r = 1;
    while (v != 1 % N) {
        v = v * a % N;
        r++;
    }
    return r;
}

std::vector<BitVector> rows_of(std::initializer_list<const char *> bits) {
    std::vector<BitVector> out;
    for (const char *b : bits) {
        out.push_back(BitVector::from_string(b));
    }
    return out;
}

}  // namespace

TEST(quantum, order_examples) {
    EXPECT_EQ(order_of(7, 15), 4u);
    EXPECT_EQ(order_of(1, 15), 1u);
    EXPECT_EQ(order_of(1, 1048573), 1u);
    EXPECT_EQ(order_of(2, 9), 6u);
    EXPECT_EQ(kind_of([] { order_of(6, 15); }), ErrorKind::Precondition);
}

TEST(quantum, order_matches_iteration_and_is_minimal) {
    Rng rng(1);
    for (int k = 0; k < 300; k++) {
        uint64_t N = 2 + rng.below(5000);
        uint64_t a = 1 + rng.below(N - 1);
        if (std::gcd(a, N) != 1) {
            continue;
        }
        uint64_t r = order_of(a, N);
        ASSERT_EQ(r, naive_order(a, N));
        ASSERT_EQ(mod_pow(a, r, N), 1 % N);
        for (uint64_t q = 2; q <= r; q++) {
            bool prime = true;
            for (uint64_t d = 2; d * d <= q; d++) {
                prime = prime && q % d != 0;
            }
            if (prime && r % q == 0) {
                ASSERT_NE(mod_pow(a, r / q, N), 1u);
            }
        }
    }
}

TEST(quantum, shor_sets) {
    ShorInstance a = ShorInstance::make(15, 7, 8);
    EXPECT_EQ(a.r, 4u);
    EXPECT_EQ(shor_hidden_set(a), (std::vector<uint64_t>{0, 64, 128, 192}));
    ShorInstance b = ShorInstance::make(15, 1, 8);
    EXPECT_EQ(shor_hidden_set(b), std::vector<uint64_t>{0});
    ShorInstance c = ShorInstance::make(21, 2, 9);
    EXPECT_EQ(c.r, 6u);
    EXPECT_EQ(shor_hidden_set(c), (std::vector<uint64_t>{0, 85, 171, 256, 341, 427}));
    Predicate f = shor_hidden_predicate(c);
    EXPECT_EQ(f.domain(), Domain::full_cube(9));
    EXPECT_TRUE(f.eval(341));
    EXPECT_FALSE(f.eval(342));
    EXPECT_EQ(kind_of([] { ShorInstance::make(300, 7, 8); }), ErrorKind::Usage);
    ShorInstance back = ShorInstance::from_json(c.to_json());
    EXPECT_EQ(back.N, 21u);
    EXPECT_EQ(back.r, 6u);
}

TEST(quantum, rounding_ties_to_even) {
    // 1 * 2^2 / 8 = 0.5 rounds to 0; 3 * 4 / 8 = 1.5 rounds to 2.
    EXPECT_EQ(rounded_multiple(1, 2, 8), 0u);
    EXPECT_EQ(rounded_multiple(3, 2, 8), 2u);
    EXPECT_EQ(rounded_multiple(5, 2, 8), 2u);
    EXPECT_EQ(rounded_multiple(1, 9, 6), 85u);
}

TEST(quantum, continued_fraction_examples) {
    EXPECT_EQ(continued_fraction_order(192, 256, 15, 7), std::optional<uint64_t>(4));
    EXPECT_EQ(cf_denominator(64, 256, 15), std::optional<uint64_t>(4));
    EXPECT_EQ(continued_fraction_order(0, 256, 15, 7), std::nullopt);
    auto cv = convergents(192, 256);
    ASSERT_FALSE(cv.empty());
    EXPECT_EQ(cv.back(), (std::pair<uint64_t, uint64_t>{3, 4}));
}

TEST(quantum, continued_fraction_recovers_order_from_ideal_samples) {
    Rng rng(2);
    int checked = 0;
    for (int k = 0; k < 60; k++) {
        uint64_t N = 3 + rng.below(998);
        uint64_t a = 2 + rng.below(N - 2);
        if (std::gcd(a, N) != 1) {
            continue;
        }
        int n = 0;
        while ((uint64_t{1} << n) < N * N) {
            n++;
        }
        ShorInstance inst = ShorInstance::make(N, a, n);
        uint64_t Q = uint64_t{1} << n;
        for (uint64_t t = 1; t < inst.r; t++) {
            uint64_t y = rounded_multiple(t, n, inst.r);
            std::optional<uint64_t> d = continued_fraction_order(y, Q, N, a);
            if (std::gcd(t, inst.r) == 1) {
                ASSERT_EQ(d, std::optional<uint64_t>(inst.r)) << "N=" << N << " a=" << a << " t=" << t;
                checked++;
            } else {
                std::optional<uint64_t> partial = cf_denominator(y, Q, N);
                ASSERT_TRUE(partial.has_value());
                ASSERT_EQ(inst.r % *partial, 0u);
            }
        }
        std::vector<uint64_t> all = shor_hidden_set(inst);
        EXPECT_EQ(recover_order_lcm(all, Q, N, a), std::optional<uint64_t>(inst.r));
    }
    EXPECT_GT(checked, 100);
}

TEST(quantum, simon_instances) {
    for (int n = 1; n <= 20; n++) {
        BitVector s(n, (uint64_t{1} << n) - 1);
        SimonInstance inst = SimonInstance::make(s);
        EXPECT_EQ(inst.hidden_set_size(), (uint64_t{1} << (n - 1)) - 1) << n;
    }
    SimonInstance zero = SimonInstance::make(BitVector(4, 0));
    EXPECT_EQ(zero.hidden_set_size(), 15u);
    EXPECT_EQ(positive_set(zero.hidden_set()).size(), 15u);
    SimonInstance small = SimonInstance::make(BitVector::from_string("101"));
    EXPECT_EQ(positive_set(small.hidden_set()), (std::vector<uint64_t>{0b010, 0b101, 0b111}));
    EXPECT_TRUE(SimonInstance::make(BitVector::from_string("1")).degenerate());
    SimonInstance back = SimonInstance::from_json(small.to_json());
    EXPECT_EQ(back.secret, small.secret);
}

TEST(quantum, simon_hidden_set_size_by_enumeration) {
    Rng rng(3);
    for (int n = 2; n <= 12; n++) {
        uint64_t s = 1 + rng.below((uint64_t{1} << n) - 1);
        uint64_t count = 0;
        for (uint64_t y = 1; y < (uint64_t{1} << n); y++) {
            count += sqslab_test::naive_dot(y, s, n) == 0;
        }
        EXPECT_EQ(SimonInstance::make(BitVector(n, s)).hidden_set_size(), count);
    }
}

TEST(quantum, gf2_examples) {
    auto a = rows_of({"010", "101", "111"});
    Gf2Solution sa = gf2_solve(a);
    EXPECT_EQ(sa.status, Gf2Solution::Status::Secret);
    EXPECT_EQ(sa.secret, BitVector::from_string("101"));
    EXPECT_EQ(sa.rank, 2);

    auto b = rows_of({"100", "110", "011"});
    Gf2Solution sb = gf2_solve(b);
    EXPECT_EQ(sb.status, Gf2Solution::Status::Secret);
    EXPECT_EQ(sb.secret, BitVector(3, 0));
    EXPECT_EQ(sb.rank, 3);

    auto c = rows_of({"110"});
    Gf2Solution sc = gf2_solve(c);
    EXPECT_EQ(sc.status, Gf2Solution::Status::Underdetermined);
    EXPECT_EQ(sc.rank, 1);

    auto mixed = rows_of({"10", "101"});
    EXPECT_EQ(kind_of([&] { gf2_solve(mixed); }), ErrorKind::Usage);
}

TEST(quantum, gf2_recovers_secret_from_independent_rows) {
    Rng rng(4);
    for (int trial = 0; trial < 200; trial++) {
        int n = 2 + static_cast<int>(rng.below(19));
        uint64_t s = 1 + rng.below((uint64_t{1} << n) - 1);
        std::vector<BitVector> rows;
        std::vector<uint64_t> raw;
        while (static_cast<int>(raw.size()) < 3 * n) {
            uint64_t y = rng.below(uint64_t{1} << n);
            if (y != 0 && sqslab_test::naive_dot(y, s, n) == 0) {
                raw.push_back(y);
                rows.emplace_back(n, y);
            }
        }
        if (gf2_rank(raw, n) < n - 1) {
            continue;
        }
        Gf2Solution sol = gf2_solve(rows);
        ASSERT_EQ(sol.status, Gf2Solution::Status::Secret);
        ASSERT_EQ(sol.secret.bits(), s);
        for (uint64_t y : raw) {
            ASSERT_EQ(sqslab_test::naive_dot(y, sol.secret.bits(), n), 0);
        }
    }
}

TEST(quantum, simon_standard_model_succeeds) {
    Rng rng(5);
    int trials = 1000, wins = 0;
    for (int t = 0; t < trials; t++) {
        Rng trial = rng.fork(t);
        SimonInstance inst = SimonInstance::make(BitVector(12, 1 + trial.below(4095)));
        SimonRun run = simon_end_to_end(inst, simon_standard_source(inst), 24, trial);
        wins += run.success();
    }
    EXPECT_GE(static_cast<double>(wins) / trials, 0.99);
}

TEST(quantum, simon_random_guess_source_fails) {
    Rng rng(6);
    Domain d = Domain::punctured_cube(12);
    SampleSource guess = [d](Rng &r) { return random_guess(d, r); };
    int trials = 1000, wins = 0;
    for (int t = 0; t < trials; t++) {
        Rng trial = rng.fork(t);
        SimonInstance inst = SimonInstance::make(BitVector(12, 1 + trial.below(4095)));
        wins += simon_end_to_end(inst, guess, 24, trial).success();
    }
    EXPECT_LE(static_cast<double>(wins) / trials, 0.01);
}

TEST(quantum, simon_degenerate) {
    Rng rng(7);
    SimonInstance inst = SimonInstance::make(BitVector::from_string("1"));
    EXPECT_EQ(kind_of([&] { simon_standard_source(inst); }), ErrorKind::Precondition);
    int calls = 0;
    SampleSource counting = [&calls](Rng &) {
        calls++;
        return uint64_t{0};
    };
    SimonRun run = simon_end_to_end(inst, counting, 2, rng);
    EXPECT_EQ(calls, 0);
    EXPECT_EQ(run.status, SimonRun::Status::Degenerate);
    EXPECT_FALSE(run.success());
}
