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

#ifndef SQSLAB_SAMPLERS_H
#define SQSLAB_SAMPLERS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqslab/learners.h"
#include "sqslab/oracles.h"
#include "sqslab/rng.h"

namespace sqslab {

struct SamplerOutcome {
    uint64_t output = 0;
    bool is_positive = false;  // filled in by whoever knows the committed predicate
    uint64_t queries_used = 0;
    std::vector<double> tolerances_used;
    bool fallback_used = false;
    bool learner_failed = false;
    std::string notes;
};

/// Uniform element of the domain.
uint64_t random_guess(const Domain &domain, Rng &rng);

struct BitFixingOptions {
    uint64_t size_bound = 1;
    /// Bits fixed by queries. When smaller than n, the remaining low bits are
    /// drawn uniformly (needed to stay within budgets of fewer than n queries).
    std::optional<uint64_t> max_queries;
};

/// Prefix walk over a cube domain. Query i is the +/-1 indicator of "x starts with
/// the committed prefix followed by a 1", asked at tolerance 1/(2 size_bound). An
/// answer above -1 + 1/size_bound fixes the bit to 1, otherwise to 0.
SamplerOutcome bit_fixing_sampler(SqsOracle &oracle, const BitFixingOptions &options, Rng &rng);

/// ceil(9 ln(2q/delta) / (2 xi^2)).
uint64_t reduction_sample_size(double xi, double delta, uint64_t q);

/// Parameters of the learn-then-sample reduction for target failure eps_prime.
struct ReductionParams {
    double epsilon_prime = 0.0;
    double rho = 0.0;
    double epsilon = 0.0;  // rho eps' / (4 ln(4/eps'))
    double delta = 0.0;    // eps' / 4
    uint64_t q = 0;        // learner queries
    double xi = 0.0;       // learner tolerance
    uint64_t samples = 0;  // M per simulated query at tolerance xi
    uint64_t second_phase_rounds = 0;  // ceil(ln(1/delta) / rho)

    static ReductionParams make(double epsilon_prime, double rho, uint64_t q, double xi);
    nlohmann::json to_json() const;
};

struct SqlSimulation {
    double value = 0.0;  // y = s + (y1 - y0) rho
    double s = 0.0;      // label-0 mean over M uniform cube points
    double y0 = 0.0;
    double y1 = 0.0;
    uint64_t samples = 0;
};

/// Answers one SQL query using two SQS queries at xi/3 and M uniform samples.
SqlSimulation simulate_sql_from_sqs(const LabeledQueryFn &g, double xi, SqsOracle &sqs, double rho,
                                    uint64_t samples, Rng &rng);

/// SQL interface backed by an SQS session; M is recomputed from each query's tolerance.
class SimulatedSqlOracle final : public SqlOracle {
   public:
    SimulatedSqlOracle(SqsOracle &sqs, double rho, uint64_t q, double delta, Rng &rng);
    int n() const override {
        return sqs_.domain().n();
    }
    const std::vector<SqlSimulation> &log() const {
        return log_;
    }

   protected:
    OracleAnswer answer(const LabeledQueryFn &g, double xi) override;

   private:
    SqsOracle &sqs_;
    double rho_;
    uint64_t q_;
    double delta_;
    Rng &rng_;
    std::vector<SqlSimulation> log_;
};

struct LearnThenSampleOutcome {
    SamplerOutcome sample;
    std::optional<Hypothesis> hypothesis;
    uint64_t sql_queries = 0;
    uint64_t rounds_used = 0;
};

/// Phase 1 runs the learner against the simulated SQL oracle; phase 2 draws up to
/// second_phase_rounds uniform points and returns the first the hypothesis accepts,
/// falling back to one more uniform draw.
LearnThenSampleOutcome learn_then_sample(SqLearner &learner, SqsOracle &sqs, const ReductionParams &params,
                                         Rng &rng);

}  // namespace sqslab

#endif
