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
#include <sstream>

#include "sqslab/errors.h"

namespace sqslab {

namespace {

constexpr double kReplaySlack = 1e-12;

void check_tolerance(double xi, const QueryBudget &budget, uint64_t used) {
    if (!(xi > 0.0 && xi <= 1.0)) {
        fail(ErrorKind::Usage, "tolerance " + std::to_string(xi) + " outside (0, 1]");
    }
    if (used >= budget.max_queries) {
        fail(ErrorKind::Budget, "query budget of " + std::to_string(budget.max_queries) + " exhausted");
    }
    if (xi < budget.min_tolerance * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "tolerance " << xi << " below the session minimum " << budget.min_tolerance;
        fail(ErrorKind::Budget, msg.str());
    }
}

int checked_labeled_value(const LabeledQueryFn &g, uint64_t code, int label) {
    int v = g(code, label);
    if (v != 1 && v != -1) {
        fail(ErrorKind::Usage, "labeled query returned " + std::to_string(v) + ", expected +/-1");
    }
    return v;
}

// Two-sided Hoeffding for the mean of m values in [-1, 1].
double sampled_failure_bound(uint64_t m, double xi) {
    return std::min(1.0, 2.0 * std::exp(-static_cast<double>(m) * xi * xi / 2.0));
}

OracleAnswer answer_from_points(const std::vector<uint64_t> &points, const QueryFn &g, double xi,
                                const HonestMode &mode, Rng &rng) {
    if (points.empty()) {
        fail(ErrorKind::OracleUndefined, "positive set is empty");
    }
    double sum = 0.0;
    for (uint64_t x : points) {
        sum += checked_query_value(g, x);
    }
    OracleAnswer out;
    out.true_mean = sum / static_cast<double>(points.size());
    out.tolerance_used = xi;
    std::visit(
        [&](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, honest::Exact>) {
                out.value = out.true_mean;
            } else if constexpr (std::is_same_v<T, honest::Sampled>) {
                double s = 0.0;
                for (uint64_t k = 0; k < m.m; k++) {
                    s += checked_query_value(g, points[rng.below(points.size())]);
                }
                out.value = s / static_cast<double>(m.m);
                out.failure_bound = sampled_failure_bound(m.m, xi);
            } else {
                out.value = out.true_mean + (2.0 * rng.unit() - 1.0) * xi;
            }
        },
        mode);
    return out;
}

}  // namespace

std::string describe(const HonestMode &mode) {
    return std::visit(
        [](const auto &m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, honest::Exact>) {
                return "exact";
            } else if constexpr (std::is_same_v<T, honest::Sampled>) {
                return "sampled(" + std::to_string(m.m) + ")";
            } else {
                return "worst_noise";
            }
        },
        mode);
}

OracleAnswer SqsOracle::ask(const QueryFn &g, double xi) {
    check_tolerance(xi, budget_, tolerances_.size());
    OracleAnswer a = answer(g, xi);
    tolerances_.push_back(xi);
    return a;
}

OracleAnswer SqlOracle::ask(const LabeledQueryFn &g, double xi) {
    check_tolerance(xi, budget_, tolerances_.size());
    OracleAnswer a = answer(g, xi);
    tolerances_.push_back(xi);
    return a;
}

int checked_query_value(const QueryFn &g, uint64_t code) {
    int v = g(code);
    if (v != 1 && v != -1) {
        fail(ErrorKind::Usage, "query returned " + std::to_string(v) + ", expected +/-1");
    }
    return v;
}

double positive_set_mean(const Predicate &f, const QueryFn &g) {
    std::vector<uint64_t> positives = positive_set(f);
    if (positives.empty()) {
        fail(ErrorKind::OracleUndefined, "positive set of " + f.describe() + " is empty");
    }
    double sum = 0.0;
    for (uint64_t x : positives) {
        sum += checked_query_value(g, x);
    }
    return sum / static_cast<double>(positives.size());
}

double domain_mean(const Domain &domain, const QueryFn &g) {
    domain.require_enumerable();
    double sum = 0.0;
    domain.for_each([&](uint64_t x) { sum += checked_query_value(g, x); });
    return sum / static_cast<double>(domain.cardinality());
}

OracleAnswer honest_sqs_answer(const Predicate &f, const QueryFn &g, double xi, const HonestMode &mode, Rng &rng) {
    if (!(xi > 0.0 && xi <= 1.0)) {
        fail(ErrorKind::Usage, "tolerance " + std::to_string(xi) + " outside (0, 1]");
    }
    return answer_from_points(positive_set(f), g, xi, mode, rng);
}

OracleAnswer honest_sql_answer(const Predicate &f, const LabeledQueryFn &g, double xi, const HonestMode &mode,
                               Rng &rng) {
    const Domain &d = f.domain();
    if (d.kind() != DomainKind::FullCube) {
        fail(ErrorKind::Usage, "SQL oracle needs a predicate over the full cube, got " + d.describe());
    }
    if (!(xi > 0.0 && xi <= 1.0)) {
        fail(ErrorKind::Usage, "tolerance " + std::to_string(xi) + " outside (0, 1]");
    }
    d.require_enumerable();
    double sum = 0.0;
    d.for_each([&](uint64_t x) { sum += checked_labeled_value(g, x, f.eval_unchecked(x) ? 1 : 0); });
    OracleAnswer out;
    out.true_mean = sum / static_cast<double>(d.cardinality());
    out.tolerance_used = xi;
    std::visit(
        [&](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, honest::Exact>) {
                out.value = out.true_mean;
            } else if constexpr (std::is_same_v<T, honest::Sampled>) {
                double s = 0.0;
                for (uint64_t k = 0; k < m.m; k++) {
                    uint64_t x = d.code_at(rng.below(d.cardinality()));
                    s += checked_labeled_value(g, x, f.eval_unchecked(x) ? 1 : 0);
                }
                out.value = s / static_cast<double>(m.m);
                out.failure_bound = sampled_failure_bound(m.m, xi);
            } else {
                out.value = out.true_mean + (2.0 * rng.unit() - 1.0) * xi;
            }
        },
        mode);
    return out;
}

HonestSqsOracle::HonestSqsOracle(Predicate f, HonestMode mode, Rng rng, QueryBudget budget)
    : SqsOracle(budget), f_(std::move(f)), mode_(mode), rng_(rng), positives_(positive_set(f_)) {
    if (positives_.empty()) {
        fail(ErrorKind::OracleUndefined, "positive set of " + f_.describe() + " is empty");
    }
}

OracleAnswer HonestSqsOracle::answer(const QueryFn &g, double xi) {
    return answer_from_points(positives_, g, xi, mode_, rng_);
}

HonestSqlOracle::HonestSqlOracle(Predicate f, HonestMode mode, Rng rng, QueryBudget budget)
    : SqlOracle(budget), f_(std::move(f)), mode_(mode), rng_(rng) {
    if (f_.domain().kind() != DomainKind::FullCube) {
        fail(ErrorKind::Usage, "SQL oracle needs a predicate over the full cube");
    }
}

OracleAnswer HonestSqlOracle::answer(const LabeledQueryFn &g, double xi) {
    return honest_sql_answer(f_, g, xi, mode_, rng_);
}

bool xi_independent(const Predicate &f, const QueryFn &g, double xi, const Domain &reference) {
    return std::abs(positive_set_mean(f, g) - domain_mean(reference, g)) <= xi;
}

ClassTable::ClassTable(PredicateClass cls) : cls_(std::move(cls)), domain_(cls_.domain()) {
    switch (cls_.kind()) {
        case PredicateClass::Kind::NegParity:
            spectral_ = true;
            domain_.require_enumerable();
            return;
        case PredicateClass::Kind::BoolLinear: {
            int n = cls_.n();
            uint32_t p = cls_.p();
            uint64_t block = ipow(p, n - 1);
            domain_.require_enumerable();
            std::vector<uint8_t> digits(block * (n - 1));
            for (uint64_t r = 0; r < block; r++) {
                uint64_t v = r;
                for (int i = n - 2; i >= 0; i--) {
                    digits[r * (n - 1) + i] = static_cast<uint8_t>(v % p);
                    v /= p;
                }
            }
            flat_.reserve(block * (block - 1));
            offsets_.reserve(block + 1);
            offsets_.push_back(0);
            for (uint64_t member = 0; member < block; member++) {
                const uint8_t *a = &digits[member * (n - 1)];
                for (uint64_t r = 1; r < block; r++) {
                    const uint8_t *x = &digits[r * (n - 1)];
                    uint32_t acc = 0;
                    for (int i = 0; i < n - 1; i++) {
                        acc += static_cast<uint32_t>(a[i]) * x[i];
                    }
                    uint64_t x0 = (1 + p - acc % p) % p;
                    // index_of for x0 * block + r.
                    flat_.push_back(static_cast<uint32_t>(x0 * (block - 1) + r - 1));
                }
                offsets_.push_back(flat_.size());
            }
            return;
        }
        case PredicateClass::Kind::Dictator:
        case PredicateClass::Kind::Custom: {
            if (domain_.cardinality() > UINT32_MAX) {
                fail(ErrorKind::Resource, "class domain too large for a positive-set table");
            }
            offsets_.push_back(0);
            for (uint64_t i = 0; i < cls_.size(); i++) {
                for (uint64_t c : positive_set(cls_.member(i))) {
                    flat_.push_back(static_cast<uint32_t>(domain_.index_of(c)));
                }
                offsets_.push_back(flat_.size());
            }
            return;
        }
    }
}

std::span<const uint32_t> ClassTable::positives(uint64_t member) const {
    if (spectral_) {
        return {};
    }
    return std::span<const uint32_t>(flat_).subspan(offsets_[member], offsets_[member + 1] - offsets_[member]);
}

uint64_t ClassTable::positive_count(uint64_t member) const {
    if (spectral_) {
        int n = cls_.n();
        uint64_t s = cls_.index_set() == ParityIndexSet::NonZero ? member + 1 : member;
        return s == 0 ? (uint64_t{1} << n) - 1 : (uint64_t{1} << (n - 1)) - 1;
    }
    return offsets_[member + 1] - offsets_[member];
}

nlohmann::json TranscriptEntry::to_json() const {
    return {{"query_index", query_index}, {"xi", xi},           {"answer", answer},
            {"sampling_mean", sampling_mean}, {"removed", removed}, {"remaining", remaining}};
}

Domain adversary_reference_domain(const PredicateClass &cls) {
    if (cls.kind() == PredicateClass::Kind::NegParity) {
        return Domain::full_cube(cls.n());
    }
    return cls.domain();
}

double candidate_floor(double initial, double queries, double per_query_bound) {
    return initial - queries * per_query_bound;
}

AdversarialSqsOracle::AdversarialSqsOracle(std::shared_ptr<const ClassTable> table, QueryBudget budget)
    : SqsOracle(budget), table_(std::move(table)), reference_(adversary_reference_domain(table_->predicate_class())) {
    uint64_t size = table_->predicate_class().size();
    alive_.resize(size);
    for (uint64_t i = 0; i < size; i++) {
        alive_[i] = i;
    }
}

double AdversarialSqsOracle::member_mean(uint64_t member, std::span<const int8_t> ref_values) const {
    if (table_->spectral()) {
        const PredicateClass &cls = table_->predicate_class();
        uint64_t s = cls.index_set() == ParityIndexSet::NonZero ? member + 1 : member;
        int64_t sum = 0;
        uint64_t count = 0;
        for (uint64_t x = 1; x < ref_values.size(); x++) {
            if (!parity_of(x & s)) {
                sum += ref_values[x];
                count++;
            }
        }
        return static_cast<double>(sum) / static_cast<double>(count);
    }
    int64_t sum = 0;
    std::span<const uint32_t> pos = table_->positives(member);
    for (uint32_t idx : pos) {
        sum += ref_values[idx];
    }
    return static_cast<double>(sum) / static_cast<double>(pos.size());
}

std::vector<double> AdversarialSqsOracle::candidate_means(std::span<const int8_t> ref_values) const {
    std::vector<double> means(alive_.size());
    if (table_->spectral()) {
        const PredicateClass &cls = table_->predicate_class();
        std::vector<int64_t> G(ref_values.begin(), ref_values.end());
        fwht_inplace(std::span<int64_t>(G));
        int64_t g0 = ref_values[0];
        uint64_t half = G.size() / 2;
        for (size_t k = 0; k < alive_.size(); k++) {
            uint64_t s = cls.index_set() == ParityIndexSet::NonZero ? alive_[k] + 1 : alive_[k];
            if (s == 0) {
                means[k] = static_cast<double>(G[0] - g0) / static_cast<double>(G.size() - 1);
            } else {
                means[k] = static_cast<double>((G[0] + G[s]) / 2 - g0) / static_cast<double>(half - 1);
            }
        }
        return means;
    }
    for (size_t k = 0; k < alive_.size(); k++) {
        means[k] = member_mean(alive_[k], ref_values);
    }
    return means;
}

OracleAnswer AdversarialSqsOracle::answer(const QueryFn &g, double xi) {
    std::vector<int8_t> values;
    values.reserve(reference_.cardinality());
    int64_t ref_sum = 0;
    int64_t sampling_sum = 0;
    const Domain &sampling = domain();
    reference_.for_each([&](uint64_t x) {
        int v = checked_query_value(g, x);
        values.push_back(static_cast<int8_t>(v));
        ref_sum += v;
        if (sampling.contains(x)) {
            sampling_sum += v;
        }
    });
    double ref_mean = static_cast<double>(ref_sum) / static_cast<double>(reference_.cardinality());

    std::vector<double> means = candidate_means(values);
    std::vector<uint64_t> survivors;
    survivors.reserve(alive_.size());
    for (size_t k = 0; k < alive_.size(); k++) {
        if (!(std::abs(means[k] - ref_mean) > xi)) {
            survivors.push_back(alive_[k]);
        }
    }
    if (survivors.empty()) {
        fail(ErrorKind::AdversaryExhausted, "every remaining candidate depends on query " +
                                                std::to_string(transcript_.size()));
    }
    TranscriptEntry entry;
    entry.query_index = transcript_.size();
    entry.xi = xi;
    entry.answer = ref_mean;
    entry.sampling_mean = static_cast<double>(sampling_sum) / static_cast<double>(sampling.cardinality());
    entry.removed = alive_.size() - survivors.size();
    entry.remaining = survivors.size();
    alive_ = std::move(survivors);
    transcript_.push_back(entry);
    query_tables_.push_back(std::move(values));

    OracleAnswer out;
    out.value = ref_mean;
    out.tolerance_used = xi;
    return out;
}

void AdversarialSqsOracle::prune_to(const std::function<bool(uint64_t)> &keep) {
    std::vector<uint64_t> next;
    for (uint64_t i : alive_) {
        if (keep(i)) {
            next.push_back(i);
        }
    }
    if (next.empty()) {
        fail(ErrorKind::AdversaryExhausted, "pruning would leave no candidates");
    }
    alive_ = std::move(next);
}

Predicate AdversarialSqsOracle::commit(Rng &rng) {
    if (alive_.empty()) {
        fail(ErrorKind::AdversaryExhausted, "no candidate to commit to");
    }
    committed_ = alive_[rng.below(alive_.size())];
    return predicate_class().member(*committed_);
}

OptimalSuccess AdversarialSqsOracle::optimal_success() const {
    OptimalSuccess out;
    out.candidates = alive_.size();
    const Domain &d = domain();
    if (table_->spectral()) {
        const PredicateClass &cls = table_->predicate_class();
        uint64_t size = uint64_t{1} << cls.n();
        std::vector<int64_t> W(size, 0);
        for (uint64_t i : alive_) {
            W[cls.index_set() == ParityIndexSet::NonZero ? i + 1 : i] = 1;
        }
        fwht_inplace(std::span<int64_t>(W));
        // |{s in P : s.x = 0}| = (|P| + W(x)) / 2.
        for (uint64_t x = 1; x < size; x++) {
            uint64_t count = static_cast<uint64_t>((static_cast<int64_t>(alive_.size()) + W[x]) / 2);
            if (count > out.best_count) {
                out.best_count = count;
                out.best_x = x;
            }
        }
    } else {
        std::vector<uint64_t> counts(d.cardinality(), 0);
        for (uint64_t i : alive_) {
            for (uint32_t idx : table_->positives(i)) {
                counts[idx]++;
            }
        }
        auto it = std::max_element(counts.begin(), counts.end());
        out.best_count = *it;
        out.best_x = d.code_at(static_cast<uint64_t>(it - counts.begin()));
    }
    out.probability = static_cast<double>(out.best_count) / static_cast<double>(out.candidates);
    return out;
}

std::string AdversarialSqsOracle::transcript_jsonl() const {
    std::string out;
    for (const auto &e : transcript_) {
        out += e.to_json().dump();
        out += '\n';
    }
    if (committed_) {
        nlohmann::json c = {{"committed", *committed_}, {"predicate", predicate_class().member(*committed_).to_json()}};
        out += c.dump();
        out += '\n';
    }
    return out;
}

bool AdversarialSqsOracle::replay_consistent() const {
    if (!committed_) {
        fail(ErrorKind::Precondition, "replay needs a committed predicate");
    }
    for (size_t k = 0; k < transcript_.size(); k++) {
        double mean = member_mean(*committed_, query_tables_[k]);
        if (std::abs(transcript_[k].answer - mean) > transcript_[k].xi + kReplaySlack) {
            return false;
        }
    }
    return true;
}

}  // namespace sqslab
