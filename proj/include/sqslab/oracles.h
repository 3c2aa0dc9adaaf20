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

#ifndef SQSLAB_ORACLES_H
#define SQSLAB_ORACLES_H

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqslab/domain.h"
#include "sqslab/fourier.h"
#include "sqslab/rng.h"

namespace sqslab {

/// A +/-1 valued query over domain codes.
using QueryFn = std::function<int(uint64_t)>;
/// A +/-1 valued query over (x, label) pairs.
using LabeledQueryFn = std::function<int(uint64_t, int)>;

struct OracleAnswer {
    double value = 0.0;
    /// The exact expectation the answer approximates. NaN when no predicate is
    /// committed (adversarial answers).
    double true_mean = std::numeric_limits<double>::quiet_NaN();
    double tolerance_used = 0.0;
    /// Hoeffding bound on Pr[|value - true_mean| > tolerance] for sampled answers; 0 otherwise.
    double failure_bound = 0.0;
};

struct QueryBudget {
    uint64_t max_queries = std::numeric_limits<uint64_t>::max();
    double min_tolerance = 0.0;

    static QueryBudget unlimited() {
        return {};
    }
};

namespace honest {
struct Exact {};
/// Average of m uniform draws from the relevant distribution.
struct Sampled {
    uint64_t m = 1;
};
/// true mean plus noise uniform on [-xi, xi].
struct WorstNoise {};
}  // namespace honest
using HonestMode = std::variant<honest::Exact, honest::Sampled, honest::WorstNoise>;

std::string describe(const HonestMode &mode);

/// One SQS session. ask() enforces the budget (rejecting, never clamping) and
/// forwards to answer().
class SqsOracle {
   public:
    explicit SqsOracle(QueryBudget budget) : budget_(budget) {
    }
    virtual ~SqsOracle() = default;
    SqsOracle(const SqsOracle &) = delete;
    SqsOracle &operator=(const SqsOracle &) = delete;

    OracleAnswer ask(const QueryFn &g, double xi);

    /// Space the hidden positive set lives in. Queries must be defined on it.
    virtual const Domain &domain() const = 0;

    uint64_t queries_used() const {
        return tolerances_.size();
    }
    const std::vector<double> &tolerances_used() const {
        return tolerances_;
    }
    const QueryBudget &budget() const {
        return budget_;
    }

   protected:
    virtual OracleAnswer answer(const QueryFn &g, double xi) = 0;

   private:
    QueryBudget budget_;
    std::vector<double> tolerances_;
};

class SqlOracle {
   public:
    explicit SqlOracle(QueryBudget budget) : budget_(budget) {
    }
    virtual ~SqlOracle() = default;
    SqlOracle(const SqlOracle &) = delete;
    SqlOracle &operator=(const SqlOracle &) = delete;

    OracleAnswer ask(const LabeledQueryFn &g, double xi);

    virtual int n() const = 0;

    uint64_t queries_used() const {
        return tolerances_.size();
    }
    const std::vector<double> &tolerances_used() const {
        return tolerances_;
    }

   protected:
    virtual OracleAnswer answer(const LabeledQueryFn &g, double xi) = 0;

   private:
    QueryBudget budget_;
    std::vector<double> tolerances_;
};

/// Checks that g is +/-1 at code and returns it.
int checked_query_value(const QueryFn &g, uint64_t code);

/// E_{x in S_f}[g(x)] computed exactly. Throws oracle-undefined when S_f is empty.
double positive_set_mean(const Predicate &f, const QueryFn &g);
double domain_mean(const Domain &domain, const QueryFn &g);

/// Stateless form of the honest SQS oracle.
OracleAnswer honest_sqs_answer(const Predicate &f, const QueryFn &g, double xi, const HonestMode &mode, Rng &rng);

/// Honest SQL oracle: expectation over the full cube of g(x, f(x)). f must be over a FullCube.
OracleAnswer honest_sql_answer(const Predicate &f, const LabeledQueryFn &g, double xi, const HonestMode &mode,
                               Rng &rng);

/// SQS session for a fixed predicate. Caches S_f.
class HonestSqsOracle : public SqsOracle {
   public:
    HonestSqsOracle(Predicate f, HonestMode mode, Rng rng, QueryBudget budget = QueryBudget::unlimited());
    const Domain &domain() const override {
        return f_.domain();
    }
    const Predicate &target() const {
        return f_;
    }

   protected:
    OracleAnswer answer(const QueryFn &g, double xi) override;

   private:
    Predicate f_;
    HonestMode mode_;
    Rng rng_;
    std::vector<uint64_t> positives_;
};

class HonestSqlOracle : public SqlOracle {
   public:
    HonestSqlOracle(Predicate f, HonestMode mode, Rng rng, QueryBudget budget = QueryBudget::unlimited());
    int n() const override {
        return f_.domain().n();
    }

   protected:
    OracleAnswer answer(const LabeledQueryFn &g, double xi) override;

   private:
    Predicate f_;
    HonestMode mode_;
    Rng rng_;
};

/// |E_{x in S_f}[g] - E_{x in reference}[g]| <= xi.
bool xi_independent(const Predicate &f, const QueryFn &g, double xi, const Domain &reference);

/// Precomputed positive sets of every class member, shared read-only across
/// adversary sessions. Negative parity classes need none (they use the transform).
class ClassTable {
   public:
    explicit ClassTable(PredicateClass cls);

    const PredicateClass &predicate_class() const {
        return cls_;
    }
    const Domain &domain() const {
        return domain_;
    }
    bool spectral() const {
        return spectral_;
    }
    /// Domain indices of S_f for member i. Empty span for spectral classes.
    std::span<const uint32_t> positives(uint64_t member) const;
    uint64_t positive_count(uint64_t member) const;

   private:
    PredicateClass cls_;
    Domain domain_;
    bool spectral_ = false;
    std::vector<uint32_t> flat_;
    std::vector<uint64_t> offsets_;
};

struct TranscriptEntry {
    uint64_t query_index = 0;
    double xi = 0.0;
    double answer = 0.0;           // reference-domain mean
    double sampling_mean = 0.0;    // mean over the sampling domain (differs for punctured cubes)
    uint64_t removed = 0;
    uint64_t remaining = 0;

    nlohmann::json to_json() const;
};

struct OptimalSuccess {
    uint64_t best_x = 0;
    uint64_t best_count = 0;
    uint64_t candidates = 0;
    double probability = 0.0;
};

/// The pruning oracle: keeps a candidate set P, answers every query with the
/// reference-domain mean, drops each candidate that is not xi-independent from
/// the query, and only commits to a uniformly random survivor at the end.
class AdversarialSqsOracle : public SqsOracle {
   public:
    AdversarialSqsOracle(std::shared_ptr<const ClassTable> table, QueryBudget budget);

    const Domain &domain() const override {
        return table_->domain();
    }
    const Domain &reference_domain() const {
        return reference_;
    }
    const PredicateClass &predicate_class() const {
        return table_->predicate_class();
    }

    uint64_t remaining() const {
        return alive_.size();
    }
    /// Member indices of P, ascending.
    const std::vector<uint64_t> &candidates() const {
        return alive_;
    }
    /// Keeps only the members for which keep(index) holds. Throws adversary-exhausted if none would remain.
    void prune_to(const std::function<bool(uint64_t)> &keep);

    Predicate commit(Rng &rng);
    std::optional<uint64_t> committed() const {
        return committed_;
    }

    /// Exact success ceiling of any output against a uniformly committed survivor.
    OptimalSuccess optimal_success() const;

    const std::vector<TranscriptEntry> &transcript() const {
        return transcript_;
    }
    std::string transcript_jsonl() const;

    /// After commit: every logged answer is within its tolerance of E_{S_f}[g] for the committed f.
    bool replay_consistent() const;

   protected:
    OracleAnswer answer(const QueryFn &g, double xi) override;

   private:
    std::vector<double> candidate_means(std::span<const int8_t> ref_values) const;
    double member_mean(uint64_t member, std::span<const int8_t> ref_values) const;

    std::shared_ptr<const ClassTable> table_;
    Domain reference_;
    std::vector<uint64_t> alive_;
    std::vector<TranscriptEntry> transcript_;
    std::vector<std::vector<int8_t>> query_tables_;  // reference-domain values of each query
    std::optional<uint64_t> committed_;
};

/// Reference domain used by the adversary for a class.
Domain adversary_reference_domain(const PredicateClass &cls);

/// Lower bound on |P| after q queries when each removes at most per_query_bound.
double candidate_floor(double initial, double queries, double per_query_bound);

}  // namespace sqslab

#endif
