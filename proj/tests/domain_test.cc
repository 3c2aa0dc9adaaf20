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

#include "sqslab/domain.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "sqslab/errors.h"
#include "test_util.h"

using namespace sqslab;
using sqslab_test::code_of;
using sqslab_test::digits_of;
using sqslab_test::kind_of;

namespace {

uint64_t zp_code(std::initializer_list<uint32_t> entries, uint32_t p) {
    return code_of(std::vector<uint32_t>(entries), p);
}

}  // namespace

TEST(domain, cardinalities) {
    EXPECT_EQ(Domain::full_cube(5).cardinality(), 32u);
    EXPECT_EQ(Domain::punctured_cube(5).cardinality(), 31u);
    EXPECT_EQ(Domain::punctured_zp(3, 3).cardinality(), 24u);
    EXPECT_EQ(Domain::punctured_zp(2, 5).cardinality(), 20u);
}

TEST(domain, punctured_zp_size_by_enumeration) {
    for (uint32_t p : {3u, 5u}) {
        for (int n = 2; n <= 12; n++) {
            Domain d = Domain::punctured_zp(n, p);
            uint64_t count = 0;
            d.for_each([&](uint64_t) { count++; });
            double expected = std::pow(p, n) - p;
            EXPECT_EQ(static_cast<double>(count), expected) << "p=" << p << " n=" << n;
        }
    }
}

TEST(domain, punctured_zp_membership_matches_definition) {
    Domain d = Domain::punctured_zp(4, 3);
    for (uint64_t c = 0; c < 81; c++) {
        EXPECT_EQ(d.contains(c), sqslab_test::in_punctured_zp(digits_of(c, 4, 3))) << c;
    }
    // (1, 0, ..., 0) is ruled out.
    EXPECT_FALSE(d.contains(zp_code({1, 0, 0, 0}, 3)));
}

TEST(domain, enumeration_is_lexicographic_and_indexable) {
    for (Domain d : {Domain::full_cube(4), Domain::punctured_cube(5), Domain::punctured_zp(3, 5)}) {
        std::vector<uint64_t> els = d.elements();
        ASSERT_EQ(els.size(), d.cardinality());
        EXPECT_TRUE(std::is_sorted(els.begin(), els.end()));
        for (uint64_t i = 0; i < els.size(); i++) {
            EXPECT_EQ(d.code_at(i), els[i]);
            EXPECT_EQ(d.index_of(els[i]), i);
        }
    }
    EXPECT_EQ(kind_of([] { Domain::punctured_cube(3).index_of(0); }), ErrorKind::Domain);
    EXPECT_EQ(kind_of([] { Domain::punctured_cube(3).code_at(7); }), ErrorKind::Domain);
}

TEST(domain, enumeration_cap) {
    Domain d = Domain::full_cube(10);
    EXPECT_EQ(kind_of([&] { d.require_enumerable(100); }), ErrorKind::Resource);
    EXPECT_NO_THROW(d.require_enumerable(1024));
    Predicate f = Predicate::neg_parity(BitVector(10, 1));
    EXPECT_EQ(kind_of([&] { positive_set(f, 100); }), ErrorKind::Resource);
}

TEST(domain, bad_parameters) {
    EXPECT_EQ(kind_of([] { Domain::punctured_zp(3, 4); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { Domain::punctured_zp(3, 2); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { Domain::punctured_zp(1, 3); }), ErrorKind::Usage);
    EXPECT_EQ(kind_of([] { Domain::full_cube(0); }), ErrorKind::Usage);
}

TEST(domain, eval_examples) {
    EXPECT_TRUE(Predicate::bool_linear(ZpVector({1, 1}, 3)).eval(zp_code({0, 1}, 3)));
    EXPECT_FALSE(Predicate::bool_linear(ZpVector({1, 2}, 3)).eval(zp_code({1, 1}, 3)));
    EXPECT_TRUE(Predicate::neg_parity(BitVector::from_string("101")).eval(BitVector::from_string("010").bits()));
}

TEST(domain, eval_outside_domain) {
    Predicate f = Predicate::neg_parity(BitVector::from_string("101"));
    EXPECT_EQ(kind_of([&] { f.eval(0); }), ErrorKind::Domain);
    EXPECT_EQ(kind_of([&] { f.eval(8); }), ErrorKind::Domain);
    Predicate g = Predicate::bool_linear(ZpVector({1, 1}, 3));
    EXPECT_EQ(kind_of([&] { g.eval(zp_code({2, 0}, 3)); }), ErrorKind::Domain);
}

TEST(domain, eval_matches_definitions) {
    for (uint64_t s = 0; s < 16; s++) {
        Predicate f = Predicate::neg_parity(BitVector(4, s), false);
        for (uint64_t x = 0; x < 16; x++) {
            EXPECT_EQ(f.eval(x), sqslab_test::naive_dot(x, s, 4) == 0);
        }
    }
    uint32_t p = 5;
    for (uint64_t ac = 0; ac < 125; ac++) {
        std::vector<uint32_t> a = digits_of(ac, 3, p);
        Predicate f = Predicate::bool_linear(ZpVector(a, p));
        for (uint64_t xc = 0; xc < 125; xc++) {
            std::vector<uint32_t> x = digits_of(xc, 3, p);
            if (!sqslab_test::in_punctured_zp(x)) {
                continue;
            }
            uint32_t dot = (a[0] * x[0] + a[1] * x[1] + a[2] * x[2]) % p;
            EXPECT_EQ(f.eval(xc), dot == 1);
        }
    }
}

TEST(domain, positive_set_examples) {
    Predicate f = Predicate::neg_parity(BitVector::from_string("101"));
    std::vector<uint64_t> expected = {0b010, 0b101, 0b111};
    EXPECT_EQ(positive_set(f), expected);

    Predicate g = Predicate::bool_linear(ZpVector({1, 1}, 3));
    EXPECT_EQ(positive_set(g).size(), 2u);
    // x0 + x1 = 1 with x1 != 0: (0,1) and (2,2).
    std::vector<uint64_t> expected_g = {zp_code({0, 1}, 3), zp_code({2, 2}, 3)};
    EXPECT_EQ(positive_set(g), expected_g);

    Predicate h = Predicate::set_membership(Domain::full_cube(4), {0b1011});
    EXPECT_EQ(positive_set(h), std::vector<uint64_t>{0b1011});
}

TEST(domain, density_examples) {
    Fraction d = density_exact(Predicate::neg_parity(BitVector::from_string("101")));
    EXPECT_EQ(d.num, 3u);
    EXPECT_EQ(d.den, 7u);
    EXPECT_DOUBLE_EQ(density(Predicate::constant(Domain::full_cube(5), true)), 1.0);
    Fraction b = density_exact(Predicate::bool_linear(ZpVector({1, 0, 2}, 3)));
    EXPECT_EQ(b.num, 8u);
    EXPECT_EQ(b.den, 24u);
    EXPECT_DOUBLE_EQ(density(Predicate::dictator(6, 2)), 0.5);
}

TEST(domain, class_stats_examples) {
    BoolLinearClassStats a = class_stats_boollinear(3, 3);
    EXPECT_EQ(a.class_size, 9u);
    EXPECT_EQ(a.positive_size_min, 8u);
    EXPECT_EQ(a.positive_size_max, 8u);
    EXPECT_EQ(a.per_point_min, 3u);
    EXPECT_EQ(a.per_point_max, 3u);
    EXPECT_EQ(a.agreement_min, 12u);
    EXPECT_EQ(a.agreement_max, 12u);
    EXPECT_EQ(a.pairs_checked, 36u);

    BoolLinearClassStats b = class_stats_boollinear(2, 5);
    EXPECT_EQ(b.class_size, 5u);
    EXPECT_EQ(b.per_point_min, 1u);
    EXPECT_EQ(b.domain_size, 20u);
}

// Independent agreement count: compare truth tables built from raw digit arithmetic.
TEST(domain, pairwise_agreement_brute_force) {
    for (uint32_t p : {3u, 5u}) {
        for (int n = 2; n <= 4; n++) {
            uint64_t ambient = 1;
            for (int i = 0; i < n; i++) {
                ambient *= p;
            }
            std::vector<std::vector<uint32_t>> points;
            for (uint64_t c = 0; c < ambient; c++) {
                auto x = digits_of(c, n, p);
                if (sqslab_test::in_punctured_zp(x)) {
                    points.push_back(x);
                }
            }
            uint64_t members = ambient / p;
            std::vector<std::vector<bool>> tables;
            for (uint64_t m = 0; m < members; m++) {
                auto a = digits_of(m, n, p);
                a[0] = 1;
                std::vector<bool> t;
                for (const auto &x : points) {
                    uint64_t dot = 0;
                    for (int i = 0; i < n; i++) {
                        dot += a[i] * x[i];
                    }
                    t.push_back(dot % p == 1);
                }
                tables.push_back(t);
            }
            double pn2 = std::pow(p, n - 2);
            uint64_t agreement = static_cast<uint64_t>((p * p - 2.0 * p + 2) * pn2 - p);
            for (size_t i = 0; i < tables.size(); i++) {
                for (size_t j = i + 1; j < tables.size(); j++) {
                    uint64_t agree = 0;
                    for (size_t k = 0; k < points.size(); k++) {
                        agree += tables[i][k] == tables[j][k];
                    }
                    ASSERT_EQ(agree, agreement) << "p=" << p << " n=" << n;
                }
            }
            for (size_t k = 0; k < points.size(); k++) {
                uint64_t count = 0;
                for (const auto &t : tables) {
                    count += t[k];
                }
                ASSERT_EQ(count, static_cast<uint64_t>(pn2));
            }
            EXPECT_TRUE(class_stats_boollinear(n, p).all_match());
        }
    }
}

TEST(domain, negparity_point_counts_both_conventions) {
    for (int n = 2; n <= 12; n++) {
        NegParityPointCounts nz = negparity_point_counts(n, ParityIndexSet::NonZero);
        EXPECT_EQ(nz.min, (uint64_t{1} << (n - 1)) - 1);
        EXPECT_EQ(nz.max, nz.min);
        NegParityPointCounts all = negparity_point_counts(n, ParityIndexSet::All);
        EXPECT_EQ(all.min, uint64_t{1} << (n - 1));
        EXPECT_EQ(all.max, all.min);
    }
}

TEST(domain, predicate_classes) {
    PredicateClass nz = PredicateClass::all_neg_parity(4);
    EXPECT_EQ(nz.size(), 15u);
    PredicateClass all = PredicateClass::all_neg_parity(4, ParityIndexSet::All);
    EXPECT_EQ(all.size(), 16u);
    PredicateClass bl = PredicateClass::normalized_bool_linear(3, 3);
    EXPECT_EQ(bl.size(), 9u);
    std::vector<std::string> seen;
    for (const Predicate &f : bl.members()) {
        EXPECT_TRUE(f.is_normalized());
        seen.push_back(f.describe());
    }
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(std::unique(seen.begin(), seen.end()), seen.end());
    EXPECT_EQ(PredicateClass::dictators(5).size(), 5u);
}

TEST(domain, json_round_trip) {
    std::vector<Predicate> preds = {
        Predicate::neg_parity(BitVector::from_string("1011")),
        Predicate::neg_parity(BitVector::from_string("0110"), false),
        Predicate::bool_linear(ZpVector({1, 2, 0}, 5)),
        Predicate::set_membership(Domain::full_cube(4), {3, 9}),
        Predicate::dictator(8, 3),
        Predicate::constant(Domain::punctured_zp(3, 3), false),
    };
    for (const Predicate &f : preds) {
        Predicate g = Predicate::from_json(f.to_json());
        EXPECT_EQ(g.describe(), f.describe());
        EXPECT_EQ(g.domain(), f.domain());
        EXPECT_EQ(positive_set(g), positive_set(f));
    }
    for (const PredicateClass &c : {PredicateClass::all_neg_parity(5, ParityIndexSet::All),
                                     PredicateClass::normalized_bool_linear(3, 5), PredicateClass::dictators(4)}) {
        PredicateClass d = PredicateClass::from_json(c.to_json());
        EXPECT_EQ(d.size(), c.size());
        EXPECT_EQ(d.describe(), c.describe());
    }
    EXPECT_EQ(Domain::from_json(Domain::punctured_zp(4, 7).to_json()), Domain::punctured_zp(4, 7));
}
