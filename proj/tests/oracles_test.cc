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

#include "sqslab/oracles.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace sqslab;
using sqslab_test::bit_at;
using sqslab_test::digits_of;
using sqslab_test::kind_of;

namespace {

QueryFn constant_query() {
    return [](uint64_t) { return 1; };
}

QueryFn character(uint64_t s, int n) {
    return [s, n](uint64_t x) { return sqslab_test::naive_dot(x, s, n) ? -1 : 1; };
}

QueryFn random_query(uint64_t seed) {
    return [seed](uint64_t x) { return (splitmix64(seed ^ splitmix64(x)) & 1) ? 1 : -1; };
}

// Brute-force E_{S_f}[g] by walking the whole domain.
double enumerated_mean(const Predicate &f, const QueryFn &g) {
    double sum = 0.0, count = 0.0;
    f.domain().for_each([&](uint64_t x) {
        if (f.eval(x)) {
            sum += g(x);
            count += 1.0;
        }
    });
    return sum / count;
}

}  // namespace

TEST(oracles, honest_exact_examples) {
    Rng rng(1);
    Predicate f = Predicate::neg_parity(BitVector::from_string("101"));
    EXPECT_DOUBLE_EQ(honest_sqs_answer(f, constant_query(), 0.1, honest::Exact{}, rng).value, 1.0);
    QueryFn first_bit = [](uint64_t x) { return bit_at(x, 0, 3) ? -1 : 1; };
    OracleAnswer a = honest_sqs_answer(f, first_bit, 0.1, honest::Exact{}, rng);
    EXPECT_NEAR(a.value, -1.0 / 3.0, 1e-15);
    EXPECT_EQ(a.value, a.true_mean);
    EXPECT_EQ(a.failure_bound, 0.0);

    Predicate single = Predicate::set_membership(Domain::full_cube(4), {0b1011});
    QueryFn last_bit = [](uint64_t x) { return bit_at(x, 3, 4) ? -1 : 1; };
    EXPECT_DOUBLE_EQ(honest_sqs_answer(single, last_bit, 0.1, honest::Exact{}, rng).value, -1.0);
}

TEST(oracles, honest_exact_matches_enumeration) {
    Rng rng(2);
    for (uint64_t s = 1; s < 32; s++) {
        Predicate f = Predicate::neg_parity(BitVector(5, s));
        QueryFn g = random_query(s);
        OracleAnswer a = honest_sqs_answer(f, g, 0.05, honest::Exact{}, rng);
        EXPECT_NEAR(a.value, enumerated_mean(f, g), 1e-15);
    }
    Predicate b = Predicate::bool_linear(ZpVector({1, 2, 1}, 5));
    QueryFn g = random_query(99);
    EXPECT_NEAR(honest_sqs_answer(b, g, 0.05, honest::Exact{}, rng).value, enumerated_mean(b, g), 1e-15);
}

TEST(oracles, empty_positive_set) {
    Rng rng(3);
    Predicate f = Predicate::constant(Domain::full_cube(3), false);
    EXPECT_EQ(kind_of([&] { honest_sqs_answer(f, constant_query(), 0.1, honest::Exact{}, rng); }),
              ErrorKind::OracleUndefined);
}

TEST(oracles, query_values_must_be_signs) {
    Rng rng(4);
    Predicate f = Predicate::neg_parity(BitVector::from_string("11"));
    QueryFn zero = [](uint64_t) { return 0; };
    EXPECT_EQ(kind_of([&] { honest_sqs_answer(f, zero, 0.1, honest::Exact{}, rng); }), ErrorKind::Usage);
}

TEST(oracles, sampled_mode) {
    Rng rng(5);
    Predicate single = Predicate::set_membership(Domain::full_cube(4), {6});
    OracleAnswer a = honest_sqs_answer(single, random_query(1), 0.1, honest::Sampled{50}, rng);
    EXPECT_DOUBLE_EQ(a.value, a.true_mean);
    EXPECT_NEAR(a.failure_bound, std::min(1.0, 2.0 * std::exp(-50 * 0.01 / 2.0)), 1e-15);

    Predicate f = Predicate::neg_parity(BitVector::from_string("110101"));
    QueryFn g = random_query(2);
    int within = 0;
    for (int k = 0; k < 200; k++) {
        OracleAnswer b = honest_sqs_answer(f, g, 0.2, honest::Sampled{400}, rng);
        within += std::abs(b.value - b.true_mean) <= 0.2;
        // The value is a mean of 400 signs.
        double scaled = b.value * 400.0;
        ASSERT_NEAR(scaled, std::round(scaled), 1e-9);
    }
    // Failure bound is 2 exp(-8) per answer.
    EXPECT_GE(within, 198);
}

TEST(oracles, worst_noise_is_uniform_on_tolerance_band) {
    Rng rng(6);
    Predicate f = Predicate::neg_parity(BitVector::from_string("101"));
    QueryFn first_bit = [](uint64_t x) { return bit_at(x, 0, 3) ? -1 : 1; };
    double xi = 0.2;
    double sigma = -1.0 / 3.0;
    std::vector<double> values;
    for (int k = 0; k < 10000; k++) {
        OracleAnswer a = honest_sqs_answer(f, first_bit, xi, honest::WorstNoise{}, rng);
        ASSERT_LE(std::abs(a.value - sigma), xi);
        values.push_back(a.value);
    }
    std::sort(values.begin(), values.end());
    double d = 0.0;
    double n = static_cast<double>(values.size());
    for (size_t i = 0; i < values.size(); i++) {
        double cdf = (values[i] - (sigma - xi)) / (2.0 * xi);
        d = std::max({d, std::abs((i + 1) / n - cdf), std::abs(cdf - i / n)});
    }
    // Kolmogorov-Smirnov critical value at alpha = 0.01.
    EXPECT_LT(d, 1.628 / std::sqrt(n));
}

TEST(oracles, sql_examples) {
    Rng rng(7);
    LabeledQueryFn label = [](uint64_t, int y) { return 2 * y - 1; };
    EXPECT_DOUBLE_EQ(
        honest_sql_answer(Predicate::constant(Domain::full_cube(4), true), label, 0.1, honest::Exact{}, rng).value,
        1.0);
    LabeledQueryFn first_bit = [](uint64_t x, int) { return bit_at(x, 0, 4) ? -1 : 1; };
    EXPECT_DOUBLE_EQ(honest_sql_answer(Predicate::dictator(4, 2), first_bit, 0.1, honest::Exact{}, rng).value, 0.0);
    LabeledQueryFn product = [](uint64_t x, int y) { return (2 * y - 1) * (bit_at(x, 0, 4) ? -1 : 1); };
    EXPECT_DOUBLE_EQ(honest_sql_answer(Predicate::dictator(4, 0), product, 0.1, honest::Exact{}, rng).value, -1.0);
    Predicate punctured = Predicate::neg_parity(BitVector::from_string("11"));
    EXPECT_EQ(kind_of([&] { honest_sql_answer(punctured, label, 0.1, honest::Exact{}, rng); }), ErrorKind::Usage);
}

TEST(oracles, budget_is_enforced) {
    Predicate f = Predicate::neg_parity(BitVector::from_string("101"));
    QueryBudget budget;
    budget.max_queries = 2;
    budget.min_tolerance = 0.1;
    HonestSqsOracle oracle(f, honest::Exact{}, Rng(8), budget);
    EXPECT_EQ(kind_of([&] { oracle.ask(constant_query(), 0.05); }), ErrorKind::Budget);
    EXPECT_EQ(kind_of([&] { oracle.ask(constant_query(), 0.0); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([&] { oracle.ask(constant_query(), 1.5); }), ErrorKind::Usage);
    EXPECT_EQ(oracle.queries_used(), 0u);
    oracle.ask(constant_query(), 0.1);
    oracle.ask(constant_query(), 0.5);
    EXPECT_EQ(kind_of([&] { oracle.ask(constant_query(), 0.5); }), ErrorKind::Budget);
    EXPECT_EQ(oracle.queries_used(), 2u);
    EXPECT_EQ(oracle.tolerances_used(), (std::vector<double>{0.1, 0.5}));
}

TEST(oracles, xi_independence_examples) {
    Domain cube4 = Domain::full_cube(4);
    Predicate f = Predicate::neg_parity(BitVector::from_string("0110"));
    EXPECT_TRUE(xi_independent(f, constant_query(), 0.0, cube4));
    EXPECT_FALSE(xi_independent(f, character(0b0110, 4), 0.5, cube4));

    Domain cube8 = Domain::full_cube(8);
    Predicate h = Predicate::neg_parity(BitVector(8, 0x5A));
    EXPECT_TRUE(xi_independent(h, character(0x33, 8), 0.1, cube8));
    // Cross-parity mean over the punctured positive set is -1/(2^{n-1} - 1).
    EXPECT_FALSE(xi_independent(h, character(0x33, 8), 0.5 / 127.0, cube8));
}

TEST(oracles, adversary_removes_exactly_the_matching_parity) {
    auto table = std::make_shared<ClassTable>(PredicateClass::all_neg_parity(16));
    AdversarialSqsOracle adv(table, QueryBudget::unlimited());
    EXPECT_EQ(adv.reference_domain(), Domain::full_cube(16));
    uint64_t s = 0xB3C5;
    OracleAnswer a = adv.ask(character(s, 16), 1.0 / 16);
    EXPECT_DOUBLE_EQ(a.value, 0.0);
    ASSERT_EQ(adv.transcript().size(), 1u);
    // Only S_f for f = not-parity_s sees g = +1 throughout; every other mean is -1/(2^15 - 1).
    EXPECT_EQ(adv.transcript()[0].removed, 1u);
    EXPECT_LE(adv.transcript()[0].removed, 1024u);
    EXPECT_EQ(adv.remaining(), 65534u);
    EXPECT_FALSE(std::binary_search(adv.candidates().begin(), adv.candidates().end(), s - 1));
}

TEST(oracles, adversary_constant_query) {
    auto table = std::make_shared<ClassTable>(PredicateClass::all_neg_parity(8));
    AdversarialSqsOracle adv(table, QueryBudget::unlimited());
    OracleAnswer a = adv.ask(constant_query(), 0.01);
    EXPECT_DOUBLE_EQ(a.value, 1.0);
    EXPECT_EQ(adv.transcript()[0].removed, 0u);
    EXPECT_EQ(adv.remaining(), 255u);
}

TEST(oracles, adversary_boollinear_removal_matches_enumeration) {
    int n = 6;
    uint32_t p = 3;
    auto table = std::make_shared<ClassTable>(PredicateClass::normalized_bool_linear(n, p));
    AdversarialSqsOracle adv(table, QueryBudget::unlimited());
    Domain d = Domain::punctured_zp(n, p);
    EXPECT_EQ(adv.reference_domain(), d);
    QueryFn g = random_query(5);
    double xi = std::pow(3.0, -n / 3.0) / 4.0;
    OracleAnswer a = adv.ask(g, xi);

    double ref = 0.0;
    d.for_each([&](uint64_t x) { ref += g(x); });
    ref /= static_cast<double>(d.cardinality());
    EXPECT_NEAR(a.value, ref, 1e-12);

    uint64_t removed = 0;
    for (uint64_t m = 0; m < 243; m++) {
        auto av = digits_of(m, n, p);
        av[0] = 1;
        Predicate f = Predicate::bool_linear(ZpVector(av, p));
        removed += std::abs(enumerated_mean(f, g) - ref) > xi;
    }
    EXPECT_GT(removed, 0u);
    EXPECT_EQ(adv.transcript()[0].removed, removed);
}

TEST(oracles, adversary_boollinear_bias_bound) {
    auto table = std::make_shared<ClassTable>(PredicateClass::normalized_bool_linear(8, 3));
    AdversarialSqsOracle adv(table, QueryBudget::unlimited());
    double bound = std::pow(3.0, 2.0 * 8 / 3 + 2);
    for (uint64_t seed = 0; seed < 5; seed++) {
        adv.ask(random_query(seed), std::pow(3.0, -8.0 / 3.0));
        EXPECT_LE(static_cast<double>(adv.transcript().back().removed), bound);
    }
}

TEST(oracles, adversary_exhaustion) {
    Predicate only = Predicate::set_membership(Domain::full_cube(3), {5});
    auto table = std::make_shared<ClassTable>(PredicateClass::custom({only}));
    AdversarialSqsOracle adv(table, QueryBudget::unlimited());
    QueryFn indicator = [](uint64_t x) { return x == 5 ? 1 : -1; };
    EXPECT_EQ(kind_of([&] { adv.ask(indicator, 0.5); }), ErrorKind::AdversaryExhausted);
    EXPECT_EQ(adv.remaining(), 1u);
    EXPECT_EQ(kind_of([&] { adv.prune_to([](uint64_t) { return false; }); }), ErrorKind::AdversaryExhausted);
}

TEST(oracles, commit_is_uniform_without_queries) {
    auto table = std::make_shared<ClassTable>(PredicateClass::all_neg_parity(4));
    std::vector<int> counts(15, 0);
    Rng rng(9);
    int draws = 100000;
    for (int k = 0; k < draws; k++) {
        AdversarialSqsOracle adv(table, QueryBudget::unlimited());
        adv.commit(rng);
        counts[*adv.committed()]++;
    }
    double expected = draws / 15.0;
    double chi2 = 0.0;
    for (int c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    // 14 degrees of freedom, alpha = 0.001.
    EXPECT_LT(chi2, 36.12);
}

TEST(oracles, commit_after_pruning_to_one) {
    auto table = std::make_shared<ClassTable>(PredicateClass::all_neg_parity(5));
    AdversarialSqsOracle adv(table, QueryBudget::unlimited());
    adv.prune_to([](uint64_t i) { return i == 7; });
    Rng rng(10);
    Predicate f = adv.commit(rng);
    EXPECT_EQ(f.describe(), PredicateClass::all_neg_parity(5).member(7).describe());
    OptimalSuccess best = adv.optimal_success();
    EXPECT_DOUBLE_EQ(best.probability, 1.0);
    EXPECT_TRUE(f.eval(best.best_x));
}

TEST(oracles, replay_after_commit) {
    // Positive sets of the small Z_3 class hold 81 points, so it needs a wider tolerance.
    for (auto [cls, xi] : {std::pair{PredicateClass::all_neg_parity(10), 0.05},
                           std::pair{PredicateClass::normalized_bool_linear(5, 3), 0.3}}) {
        auto table = std::make_shared<ClassTable>(cls);
        AdversarialSqsOracle adv(table, QueryBudget::unlimited());
        std::vector<QueryFn> queries;
        for (uint64_t k = 0; k < 12; k++) {
            queries.push_back(random_query(100 + k));
            adv.ask(queries.back(), xi);
        }
        EXPECT_LT(adv.remaining(), cls.size());
        Rng rng(11);
        Predicate f = adv.commit(rng);
        EXPECT_TRUE(adv.replay_consistent());
        for (size_t k = 0; k < queries.size(); k++) {
            const TranscriptEntry &e = adv.transcript()[k];
            EXPECT_LE(std::abs(enumerated_mean(f, queries[k]) - e.answer), e.xi);
        }
    }
}

TEST(oracles, candidate_set_only_shrinks_within_lemma_bound) {
    auto table = std::make_shared<ClassTable>(PredicateClass::all_neg_parity(16));
    AdversarialSqsOracle adv(table, QueryBudget::unlimited());
    uint64_t previous = adv.remaining();
    for (uint64_t k = 0; k < 8; k++) {
        adv.ask(random_query(200 + k), 1.0 / 16);
        const TranscriptEntry &e = adv.transcript().back();
        EXPECT_LE(e.removed, 1024u);
        EXPECT_EQ(e.remaining + e.removed, previous);
        previous = e.remaining;
    }
    EXPECT_GE(static_cast<double>(adv.remaining()), candidate_floor(65535, 8, 1024));
    EXPECT_DOUBLE_EQ(candidate_floor(100, 3, 10), 70.0);
}

TEST(oracles, optimal_success_untouched) {
    for (int n : {8, 10, 12, 16}) {
        auto table = std::make_shared<ClassTable>(PredicateClass::all_neg_parity(n));
        AdversarialSqsOracle adv(table, QueryBudget::unlimited());
        OptimalSuccess o = adv.optimal_success();
        double half = std::ldexp(1.0, n - 1);
        EXPECT_NEAR(o.probability, (half - 1) / (2 * half - 1), 1e-15);
        EXPECT_LT(o.probability, 0.5 + std::pow(2.0, -(n / 4.0 - 2)));
    }
    auto bl = std::make_shared<ClassTable>(PredicateClass::normalized_bool_linear(3, 3));
    AdversarialSqsOracle adv(bl, QueryBudget::unlimited());
    EXPECT_NEAR(adv.optimal_success().probability, 1.0 / 3.0, 1e-15);
}

TEST(oracles, optimal_success_matches_enumeration_after_queries) {
    auto table = std::make_shared<ClassTable>(PredicateClass::all_neg_parity(6));
    AdversarialSqsOracle adv(table, QueryBudget::unlimited());
    adv.ask(character(0b101100, 6), 0.3);
    adv.ask(random_query(3), 0.1);
    PredicateClass cls = PredicateClass::all_neg_parity(6);
    uint64_t best = 0;
    for (uint64_t x = 1; x < 64; x++) {
        uint64_t count = 0;
        for (uint64_t m : adv.candidates()) {
            count += cls.member(m).eval(x);
        }
        best = std::max(best, count);
    }
    OptimalSuccess o = adv.optimal_success();
    EXPECT_EQ(o.best_count, best);
    EXPECT_DOUBLE_EQ(o.probability, static_cast<double>(best) / adv.remaining());
}

TEST(oracles, transcript_jsonl) {
    auto table = std::make_shared<ClassTable>(PredicateClass::all_neg_parity(6));
    AdversarialSqsOracle adv(table, QueryBudget::unlimited());
    adv.ask(character(3, 6), 0.25);
    adv.ask(constant_query(), 0.25);
    std::string text = adv.transcript_jsonl();
    std::istringstream in(text);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        nlohmann::json j = nlohmann::json::parse(line);
        for (const char *key : {"query_index", "xi", "answer", "removed", "remaining"}) {
            EXPECT_TRUE(j.contains(key)) << key;
        }
        EXPECT_EQ(j["query_index"], lines);
        lines++;
    }
    EXPECT_EQ(lines, 2);
}
