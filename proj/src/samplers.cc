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

#include "sqslab/samplers.h"

#include <cmath>

#include "sqslab/errors.h"

namespace sqslab {

uint64_t random_guess(const Domain &domain, Rng &rng) {
    return domain.code_at(rng.below(domain.cardinality()));
}

SamplerOutcome bit_fixing_sampler(SqsOracle &oracle, const BitFixingOptions &options, Rng &rng) {
    const Domain &d = oracle.domain();
    if (d.kind() == DomainKind::PuncturedZp) {
        fail(ErrorKind::Usage, "bit fixing needs a cube domain");
    }
    if (options.size_bound == 0) {
        fail(ErrorKind::Usage, "size bound must be positive");
    }
    int n = d.n();
    uint64_t fixed = static_cast<uint64_t>(n);
    if (options.max_queries) {
        fixed = std::min(fixed, *options.max_queries);
    }
    double bound = static_cast<double>(options.size_bound);
    double xi = 1.0 / (2.0 * bound);
    double threshold = -1.0 + 1.0 / bound;

    SamplerOutcome out;
    uint64_t prefix = 0;
    for (uint64_t i = 0; i < fixed; i++) {
        uint64_t want = (prefix << 1) | 1;
        int shift = n - 1 - static_cast<int>(i);
        QueryFn g = [want, shift](uint64_t x) { return (x >> shift) == want ? 1 : -1; };
        double y = oracle.ask(g, xi).value;
        prefix = y > threshold ? want : want - 1;
    }
    int free_bits = n - static_cast<int>(fixed);
    uint64_t x = prefix << free_bits;
    if (free_bits > 0) {
        uint64_t span = uint64_t{1} << free_bits;
        do {
            x = (prefix << free_bits) | rng.below(span);
        } while (!d.contains(x));
        out.notes = std::to_string(free_bits) + " bits drawn at random";
    } else if (!d.contains(x)) {
        fail(ErrorKind::Protocol, "oracle answers fixed every bit to zero");
    }
    out.output = x;
    out.queries_used = oracle.queries_used();
    out.tolerances_used = oracle.tolerances_used();
    return out;
}

uint64_t reduction_sample_size(double xi, double delta, uint64_t q) {
    if (!(xi > 0.0) || !(delta > 0.0 && delta < 1.0) || q == 0) {
        fail(ErrorKind::Usage, "reduction sample size needs xi > 0, delta in (0, 1), q >= 1");
    }
    return static_cast<uint64_t>(std::ceil(9.0 * std::log(2.0 * static_cast<double>(q) / delta) / (2.0 * xi * xi)));
}

ReductionParams ReductionParams::make(double epsilon_prime, double rho, uint64_t q, double xi) {
    if (!(epsilon_prime > 0.0 && epsilon_prime < 1.0) || !(rho > 0.0 && rho <= 1.0)) {
        fail(ErrorKind::Usage, "reduction needs eps' in (0, 1) and rho in (0, 1]");
    }
    ReductionParams p;
    p.epsilon_prime = epsilon_prime;
    p.rho = rho;
    p.epsilon = rho * epsilon_prime / (4.0 * std::log(4.0 / epsilon_prime));
    p.delta = epsilon_prime / 4.0;
    p.q = q;
    p.xi = xi;
    p.samples = q == 0 ? 0 : reduction_sample_size(xi, p.delta, q);
    p.second_phase_rounds = static_cast<uint64_t>(std::ceil(std::log(1.0 / p.delta) / rho));
    return p;
}

nlohmann::json ReductionParams::to_json() const {
    return {{"epsilon_prime", epsilon_prime}, {"rho", rho}, {"epsilon", epsilon},
            {"delta", delta},                 {"q", q},     {"xi", xi},
            {"samples", samples},             {"second_phase_rounds", second_phase_rounds}};
}

SqlSimulation simulate_sql_from_sqs(const LabeledQueryFn &g, double xi, SqsOracle &sqs, double rho,
                                    uint64_t samples, Rng &rng) {
    if (samples == 0) {
        fail(ErrorKind::Usage, "simulation needs at least one sample");
    }
    int n = sqs.domain().n();
    uint64_t size = uint64_t{1} << n;
    SqlSimulation out;
    out.samples = samples;
    int64_t sum = 0;
    for (uint64_t k = 0; k < samples; k++) {
        int v = g(rng.below(size), 0);
        if (v != 1 && v != -1) {
            fail(ErrorKind::Usage, "labeled query returned " + std::to_string(v) + ", expected +/-1");
        }
        sum += v;
    }
    out.s = static_cast<double>(sum) / static_cast<double>(samples);
    out.y0 = sqs.ask([&g](uint64_t x) { return g(x, 0); }, xi / 3.0).value;
    out.y1 = sqs.ask([&g](uint64_t x) { return g(x, 1); }, xi / 3.0).value;
    out.value = out.s + (out.y1 - out.y0) * rho;
    return out;
}

SimulatedSqlOracle::SimulatedSqlOracle(SqsOracle &sqs, double rho, uint64_t q, double delta, Rng &rng)
    : SqlOracle(QueryBudget::unlimited()), sqs_(sqs), rho_(rho), q_(q), delta_(delta), rng_(rng) {
}

OracleAnswer SimulatedSqlOracle::answer(const LabeledQueryFn &g, double xi) {
    uint64_t m = reduction_sample_size(xi, delta_, std::max<uint64_t>(q_, 1));
    log_.push_back(simulate_sql_from_sqs(g, xi, sqs_, rho_, m, rng_));
    OracleAnswer out;
    out.value = log_.back().value;
    out.tolerance_used = xi;
    return out;
}

LearnThenSampleOutcome learn_then_sample(SqLearner &learner, SqsOracle &sqs, const ReductionParams &params,
                                         Rng &rng) {
    LearnThenSampleOutcome out;
    SimulatedSqlOracle sql(sqs, params.rho, params.q, params.delta, rng);
    try {
        out.hypothesis = learner.learn(sql, params.epsilon, params.delta);
    } catch (const Error &e) {
        out.sample.learner_failed = true;
        out.sample.notes = std::string("learner failed: ") + e.what();
    }
    out.sql_queries = sql.queries_used();

    const Domain &d = sqs.domain();
    bool found = false;
    if (out.hypothesis) {
        for (uint64_t r = 0; r < params.second_phase_rounds; r++) {
            uint64_t x = random_guess(d, rng);
            out.rounds_used++;
            if (out.hypothesis->eval(x)) {
                out.sample.output = x;
                found = true;
                break;
            }
        }
    }
    if (!found) {
        out.sample.output = random_guess(d, rng);
        out.sample.fallback_used = true;
    }
    out.sample.queries_used = sqs.queries_used();
    out.sample.tolerances_used = sqs.tolerances_used();
    return out;
}

}  // namespace sqslab
