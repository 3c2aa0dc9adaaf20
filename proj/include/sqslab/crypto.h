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

#ifndef SQSLAB_CRYPTO_H
#define SQSLAB_CRYPTO_H

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sqslab/oracles.h"
#include "sqslab/rng.h"

namespace sqslab {

/// Signature scheme over n-bit messages and n-bit signatures. The object holds
/// the key material produced by generation; sign() plays the signing oracle.
class SignatureScheme {
   public:
    virtual ~SignatureScheme() = default;
    virtual int width() const = 0;
    virtual uint64_t sign(uint64_t message) const = 0;
    virtual bool verify(uint64_t message, uint64_t signature) const = 0;
    virtual nlohmann::json descriptor() const = 0;
};

/// Deterministic keyed-hash signer. Verification recomputes the tag, so it has
/// no unforgeability whatsoever; it exists to exercise the breaker mechanics
/// against exactly computable expectations.
class ToyPrfScheme final : public SignatureScheme {
   public:
    ToyPrfScheme(int n, uint64_t key);
    int width() const override {
        return n_;
    }
    uint64_t key() const {
        return key_;
    }
    uint64_t sign(uint64_t message) const override;
    bool verify(uint64_t message, uint64_t signature) const override;
    nlohmann::json descriptor() const override;

   private:
    int n_;
    uint64_t key_;
};

std::shared_ptr<const SignatureScheme> toy_scheme(int n, uint64_t key);
/// Key generation: draws a fresh key.
std::shared_ptr<const SignatureScheme> toy_scheme_gen(int n, Rng &rng);
std::shared_ptr<const SignatureScheme> scheme_from_json(const nlohmann::json &j);

/// (m, s) packed as (m << n) | s.
constexpr uint64_t encode_pair(uint64_t message, uint64_t signature, int n) {
    return (message << n) | signature;
}
constexpr std::pair<uint64_t, uint64_t> decode_pair(uint64_t code, int n) {
    return {code >> n, code & ((uint64_t{1} << n) - 1)};
}

/// Per-query parameters: xi0 = xi eps / (10 q), M = ceil(2 ln(10 q / eps) / xi0^2).
struct BreakerParams {
    double xi = 0.0;
    double epsilon = 0.0;
    uint64_t q = 0;
    double xi0 = 0.0;
    uint64_t samples = 0;
};
BreakerParams breaker_params(double xi, double epsilon, uint64_t q);

enum class BreakerSampling {
    /// Draws M messages, signs each one, and records them in the history set.
    Explicit,
    /// Draws the number of +1 outcomes among M signed samples directly from
    /// Binomial(M, pi), pi computed exactly by enumerating all messages. Same
    /// answer distribution; the history set is not materialized.
    Aggregated,
};

struct BreakerQueryRecord {
    uint64_t index = 0;
    double xi = 0.0;
    double xi0 = 0.0;
    uint64_t samples = 0;
    double sample_mean = 0.0;  // x
    double answer = 0.0;       // y, uniform on [x - xi/2, x + xi/2]
    std::optional<double> sigma;  // exact E over valid pairs, when enumerable
    std::optional<bool> typical;  // |x - sigma| <= xi0
};

/// The breaker posing as an SQS oracle for ver_vk.
class BreakerOracle : public SqsOracle {
   public:
    struct Options {
        BreakerSampling sampling = BreakerSampling::Explicit;
        /// Compute sigma exactly when 2^n is at most this.
        uint64_t audit_cap = uint64_t{1} << 16;
    };

    BreakerOracle(std::shared_ptr<const SignatureScheme> scheme, double epsilon, uint64_t q, Rng rng,
                  Options options);

    const Domain &domain() const override {
        return domain_;
    }
    const std::vector<BreakerQueryRecord> &records() const {
        return records_;
    }
    bool in_history(uint64_t message) const;
    uint64_t history_size() const {
        return history_size_;
    }
    /// Total messages drawn (with repetition).
    uint64_t messages_drawn() const {
        return drawn_;
    }

   protected:
    OracleAnswer answer(const QueryFn &g, double xi) override;

   private:
    std::shared_ptr<const SignatureScheme> scheme_;
    Domain domain_;
    double epsilon_;
    uint64_t q_;
    Rng rng_;
    Options options_;
    std::vector<bool> history_;
    uint64_t history_size_ = 0;
    uint64_t drawn_ = 0;
    std::vector<BreakerQueryRecord> records_;
};

/// E over valid (m, sign(m)) pairs of g, by enumerating every message.
double signed_pair_mean(const SignatureScheme &scheme, const QueryFn &g);

/// min(1, |x0 - x1| / xi): upper bound on the statistical distance between the
/// answer distributions uniform on intervals of length xi centered at x0 and x1.
double answer_sd_bound(double x0, double x1, double xi);

/// A sampling algorithm run inside the breaker. It gets the SQS interface and
/// the verification key as auxiliary input and returns a pair (m', s').
class PairSampler {
   public:
    virtual ~PairSampler() = default;
    virtual std::pair<uint64_t, uint64_t> run(SqsOracle &oracle, const SignatureScheme &vk, Rng &rng) = 0;
};

enum class BreakerOutcome { Forged, Seen, Invalid };
const char *outcome_name(BreakerOutcome outcome);

struct BreakerResult {
    BreakerOutcome outcome = BreakerOutcome::Invalid;
    uint64_t message = 0;
    uint64_t signature = 0;
    uint64_t history_size = 0;
    uint64_t messages_drawn = 0;
    std::vector<BreakerQueryRecord> transcript;
};

/// Runs the sampler against a fresh explicit-mode breaker and classifies its output.
BreakerResult breaker_run(PairSampler &sampler, std::shared_ptr<const SignatureScheme> scheme, double epsilon,
                          uint64_t q, Rng &rng);

}  // namespace sqslab

#endif
