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

#ifndef SQSLAB_HARNESS_H
#define SQSLAB_HARNESS_H

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sqslab/domain.h"
#include "sqslab/oracles.h"

namespace sqslab {

/// Worker count for parallel loops: hardware concurrency capped by SQSLAB_THREADS.
unsigned worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads. Exceptions are
/// rethrown on the calling thread after all workers stop.
void parallel_for(uint64_t count, const std::function<void(uint64_t)> &body);

struct SamplerSpec {
    enum class Kind { BitFixing, Random, LearnThenSample };
    Kind kind = Kind::Random;
    // bit_fixing
    uint64_t size_bound = 1;
    std::optional<uint64_t> max_queries;  // null in the config means n
    // learn_then_sample
    std::string learner;  // "dictator" or "trivial_sparse"
    double epsilon_prime = 0.0;
    double rho = 0.0;
    double density_bound = 0.0;

    nlohmann::json to_json() const;
    static SamplerSpec from_json(const nlohmann::json &j);
};

struct ExperimentConfig {
    std::string name;
    std::variant<PredicateClass, Predicate> target;
    /// Honest mode, or nullopt for the adversarial oracle.
    std::optional<HonestMode> honest;
    SamplerSpec sampler;
    QueryBudget budget;
    uint64_t trials = 0;
    uint64_t seed = 0;
    std::string output;
    bool transcripts = false;
    double mc_slack = 0.0;

    nlohmann::json to_json() const;
    /// Every field is required. Errors name the offending field.
    static ExperimentConfig from_json(const nlohmann::json &j);
    /// Parses text; JSON syntax errors report line and column.
    static ExperimentConfig parse(const std::string &text);
};

struct ExperimentRecord {
    uint64_t trial = 0;
    uint64_t seed = 0;
    uint64_t queries = 0;
    std::optional<uint64_t> output;
    bool is_positive = false;
    std::string notes;
    std::optional<double> optimal_success;  // adversarial runs only
    std::string transcript;                 // JSON lines, when requested
};

struct TheoryBound {
    enum class Kind { None, Ceiling, Floor };
    Kind kind = Kind::None;
    double value = 0.0;
    std::string expression;
};

/// The closed-form guarantee that applies to the configured regime.
TheoryBound theory_bound(const ExperimentConfig &config);

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ExperimentRecord> records;
    nlohmann::json summary;

    /// Header trial,seed,queries,output_hex,is_positive,notes and one row per trial.
    std::string csv() const;
    std::string transcripts_jsonl() const;
};

/// Runs one trial with the given per-trial seed.
ExperimentRecord run_trial(const ExperimentConfig &config, uint64_t trial,
                           const std::shared_ptr<const ClassTable> &table);

ExperimentReport run_experiment(const ExperimentConfig &config);

/// Writes <output> (CSV), <output stem>.summary.json, and transcripts when enabled.
void write_report(const ExperimentReport &report, const std::string &output_path);

struct VerifyParams {
    std::optional<int> n;
    std::optional<uint32_t> p;
    std::optional<double> xi;
    std::optional<uint64_t> trials;
    uint64_t seed = 1;
};

struct LemmaCheck {
    std::string lemma;
    std::string statement;
    std::string parameters;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string details;

    nlohmann::json to_json() const;
};

struct VerifyReport {
    std::vector<LemmaCheck> checks;
    bool all_pass() const;
    nlohmann::json to_json() const;
};

/// Known selectors: class-stats, orthonormalize, coefficient-formula,
/// independent-count, bias-fourier, hoeffding, sd, simon, shor, all.
const std::vector<std::string> &verify_selectors();

/// Throws a usage error for unknown selectors.
VerifyReport verify_lemmas(const std::string &selector, const VerifyParams &params);

}  // namespace sqslab

#endif
