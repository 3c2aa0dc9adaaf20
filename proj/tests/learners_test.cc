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

#include "sqslab/learners.h"

#include <cmath>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace sqslab;
using sqslab_test::bit_at;
using sqslab_test::kind_of;

TEST(learners, dictator_exact) {
    Rng rng(1);
    HonestSqlOracle oracle(Predicate::dictator(8, 3), honest::Exact{}, rng);
    Hypothesis h = dictator_sq_learner(oracle, 8, 0.1, 0.1);
    EXPECT_EQ(h, Hypothesis::dictator(8, 3));
    EXPECT_EQ(oracle.queries_used(), 8u);
    EXPECT_EQ(oracle.tolerances_used(), std::vector<double>(8, 0.25));

    HonestSqlOracle small(Predicate::dictator(2, 0), honest::Exact{}, rng);
    EXPECT_EQ(dictator_sq_learner(small, 2, 0.1, 0.1), Hypothesis::dictator(2, 0));
}

TEST(learners, dictator_correlations_by_enumeration) {
    // Correlation of (2f - 1) with (-1)^{x_i}: -1 at the target, 0 elsewhere.
    int n = 6, target = 4;
    for (int i = 0; i < n; i++) {
        double sum = 0.0;
        for (uint64_t x = 0; x < 64; x++) {
            int y = bit_at(x, target, n);
            sum += (2 * y - 1) * (bit_at(x, i, n) ? -1 : 1);
        }
        EXPECT_DOUBLE_EQ(sum / 64.0, i == target ? -1.0 : 0.0);
    }
    Hypothesis h = Hypothesis::dictator(n, target);
    for (uint64_t x = 0; x < 64; x++) {
        EXPECT_EQ(h.eval(x), bit_at(x, target, n) == 1);
    }
}

TEST(learners, dictator_worst_noise) {
    Rng rng(2);
    for (int trial = 0; trial < 200; trial++) {
        int n = 2 + static_cast<int>(rng.below(11));
        int target = static_cast<int>(rng.below(n));
        HonestSqlOracle oracle(Predicate::dictator(n, target), honest::WorstNoise{}, rng.fork(trial));
        ASSERT_EQ(dictator_sq_learner(oracle, n, 0.1, 0.1), Hypothesis::dictator(n, target));
    }
}

TEST(learners, dictator_at_width_twenty) {
    Rng rng(3);
    HonestSqlOracle oracle(Predicate::dictator(20, 17), honest::WorstNoise{}, rng);
    EXPECT_EQ(dictator_sq_learner(oracle, 20, 0.1, 0.1), Hypothesis::dictator(20, 17));
}

TEST(learners, no_dictator_found) {
    Rng rng(4);
    HonestSqlOracle oracle(Predicate::constant(Domain::full_cube(5), true), honest::Exact{}, rng);
    EXPECT_EQ(kind_of([&] { dictator_sq_learner(oracle, 5, 0.1, 0.1); }), ErrorKind::NoDictatorFound);
}

TEST(learners, trivial_sparse) {
    Predicate f = Predicate::set_membership(Domain::full_cube(16), {0x1234});
    Hypothesis h = trivial_sparse_learner(16, std::ldexp(1.0, -16), 0.01);
    EXPECT_EQ(h, Hypothesis::constant(16, false));
    EXPECT_DOUBLE_EQ(hypothesis_error(h, f), std::ldexp(1.0, -16));
    EXPECT_LT(hypothesis_error(h, f), 0.01);
    EXPECT_EQ(kind_of([] { trivial_sparse_learner(8, 0.1, 0.01); }), ErrorKind::Precondition);
}

TEST(learners, trivial_sparse_error_equals_density) {
    for (uint64_t count : {1u, 3u, 10u}) {
        std::vector<uint64_t> members;
        for (uint64_t k = 0; k < count; k++) {
            members.push_back(k * 7 + 1);
        }
        Predicate f = Predicate::set_membership(Domain::full_cube(8), members);
        Hypothesis h = trivial_sparse_learner(8, 0.05, 0.05);
        EXPECT_DOUBLE_EQ(hypothesis_error(h, f), static_cast<double>(count) / 256.0);
    }
}

TEST(learners, hypothesis_json) {
    Hypothesis d = Hypothesis::dictator(9, 4);
    nlohmann::json j = d.to_json();
    EXPECT_EQ(j["kind"], "dictator");
    EXPECT_EQ(j["index"], 4);
    EXPECT_EQ(Hypothesis::from_json(j), d);
    Hypothesis c = Hypothesis::constant(9, true);
    EXPECT_EQ(c.to_json()["kind"], "constant");
    EXPECT_EQ(Hypothesis::from_json(c.to_json()), c);
    EXPECT_THROW(Hypothesis::from_json({{"kind", "halfspace"}}), Error);
}
