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

#include "sqslab/crypto.h"

#include <cmath>
#include <random>

#include "sqslab/errors.h"

namespace sqslab {

namespace {

constexpr int kMaxSchemeWidth = kMaxBitWidth / 2;
constexpr uint64_t kMessageTweak = 0xD1B54A32D192ED03ULL;

}  // namespace

ToyPrfScheme::ToyPrfScheme(int n, uint64_t key) : n_(n), key_(key) {
    if (n < 1 || n > kMaxSchemeWidth) {
        fail(ErrorKind::Usage, "toy scheme width " + std::to_string(n) + " outside [1, 16]");
    }
}

uint64_t ToyPrfScheme::sign(uint64_t message) const {
    uint64_t mask = (uint64_t{1} << n_) - 1;
    return splitmix64(key_ ^ splitmix64(message + kMessageTweak)) & mask;
}

bool ToyPrfScheme::verify(uint64_t message, uint64_t signature) const {
    uint64_t mask = (uint64_t{1} << n_) - 1;
    if (message > mask || signature > mask) {
        return false;
    }
    return sign(message) == signature;
}

nlohmann::json ToyPrfScheme::descriptor() const {
    return {{"kind", "toy_prf"}, {"n", n_}, {"key_hex", to_hex(key_, 64)}};
}

std::shared_ptr<const SignatureScheme> toy_scheme(int n, uint64_t key) {
    return std::make_shared<ToyPrfScheme>(n, key);
}

std::shared_ptr<const SignatureScheme> toy_scheme_gen(int n, Rng &rng) {
    return toy_scheme(n, rng());
}

std::shared_ptr<const SignatureScheme> scheme_from_json(const nlohmann::json &j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind != "toy_prf") {
        fail(ErrorKind::Usage, "unknown signature scheme '" + kind + "'");
    }
    return toy_scheme(j.at("n").get<int>(), parse_hex(j.at("key_hex").get<std::string>()));
}

BreakerParams breaker_params(double xi, double epsilon, uint64_t q) {
    if (!(xi > 0.0) || !(epsilon > 0.0) || q == 0) {
        fail(ErrorKind::Usage, "breaker parameters need xi > 0, epsilon > 0, q >= 1");
    }
    BreakerParams p;
    p.xi = xi;
    p.epsilon = epsilon;
    p.q = q;
    p.xi0 = xi * epsilon / (10.0 * static_cast<double>(q));
    p.samples = static_cast<uint64_t>(std::ceil(2.0 * std::log(10.0 * static_cast<double>(q) / epsilon) / (p.xi0 * p.xi0)));
    return p;
}

BreakerOracle::BreakerOracle(std::shared_ptr<const SignatureScheme> scheme, double epsilon, uint64_t q, Rng rng,
                             Options options)
    : SqsOracle(QueryBudget{q, 0.0}),
      scheme_(std::move(scheme)),
      domain_(Domain::full_cube(2 * scheme_->width())),
      epsilon_(epsilon),
      q_(q),
      rng_(rng),
      options_(options) {
    if (options_.sampling == BreakerSampling::Explicit) {
        history_.assign(uint64_t{1} << scheme_->width(), false);
    }
}

bool BreakerOracle::in_history(uint64_t message) const {
    if (options_.sampling != BreakerSampling::Explicit) {
        fail(ErrorKind::Precondition, "aggregated breaker keeps no history");
    }
    return message < history_.size() && history_[message];
}

OracleAnswer BreakerOracle::answer(const QueryFn &g, double xi) {
    BreakerParams params = breaker_params(xi, epsilon_, q_);
    int n = scheme_->width();
    uint64_t messages = uint64_t{1} << n;

    BreakerQueryRecord rec;
    rec.index = records_.size();
    rec.xi = xi;
    rec.xi0 = params.xi0;
    rec.samples = params.samples;

    if (options_.sampling == BreakerSampling::Explicit) {
        int64_t sum = 0;
        for (uint64_t k = 0; k < params.samples; k++) {
            uint64_t m = rng_.below(messages);
            if (!history_[m]) {
                history_[m] = true;
                history_size_++;
            }
            sum += checked_query_value(g, encode_pair(m, scheme_->sign(m), n));
        }
        drawn_ += params.samples;
        rec.sample_mean = static_cast<double>(sum) / static_cast<double>(params.samples);
        if (messages <= options_.audit_cap) {
            rec.sigma = signed_pair_mean(*scheme_, g);
        }
    } else {
        double sigma = signed_pair_mean(*scheme_, g);
        double pi = (1.0 + sigma) / 2.0;
        std::binomial_distribution<uint64_t> binomial(params.samples, pi);
        uint64_t plus = binomial(rng_);
        drawn_ += params.samples;
        rec.sample_mean = (2.0 * static_cast<double>(plus) - static_cast<double>(params.samples)) /
                          static_cast<double>(params.samples);
        rec.sigma = sigma;
    }
    rec.answer = rec.sample_mean + (rng_.unit() - 0.5) * xi;
    if (rec.sigma) {
        rec.typical = std::abs(rec.sample_mean - *rec.sigma) <= params.xi0;
    }
    records_.push_back(rec);

    OracleAnswer out;
    out.value = rec.answer;
    if (rec.sigma) {
        out.true_mean = *rec.sigma;
    }
    out.tolerance_used = xi;
    return out;
}

double signed_pair_mean(const SignatureScheme &scheme, const QueryFn &g) {
    int n = scheme.width();
    uint64_t messages = uint64_t{1} << n;
    if (messages > kDefaultEnumerationCap) {
        fail(ErrorKind::Resource, "too many messages to enumerate");
    }
    int64_t sum = 0;
    for (uint64_t m = 0; m < messages; m++) {
        sum += checked_query_value(g, encode_pair(m, scheme.sign(m), n));
    }
    return static_cast<double>(sum) / static_cast<double>(messages);
}

double answer_sd_bound(double x0, double x1, double xi) {
    if (!(xi > 0.0)) {
        fail(ErrorKind::Usage, "answer_sd_bound needs xi > 0");
    }
    return std::min(1.0, std::abs(x0 - x1) / xi);
}

const char *outcome_name(BreakerOutcome outcome) {
    switch (outcome) {
        case BreakerOutcome::Forged:
            return "forged";
        case BreakerOutcome::Seen:
            return "seen";
        case BreakerOutcome::Invalid:
            return "invalid";
    }
    return "?";
}

BreakerResult breaker_run(PairSampler &sampler, std::shared_ptr<const SignatureScheme> scheme, double epsilon,
                          uint64_t q, Rng &rng) {
    BreakerOracle oracle(scheme, epsilon, q, rng.fork(0xB4EA), BreakerOracle::Options{});
    auto [m, s] = sampler.run(oracle, *scheme, rng);
    BreakerResult out;
    out.message = m;
    out.signature = s;
    out.history_size = oracle.history_size();
    out.messages_drawn = oracle.messages_drawn();
    out.transcript = oracle.records();
    if (!scheme->verify(m, s)) {
        out.outcome = BreakerOutcome::Invalid;
    } else if (oracle.in_history(m)) {
        out.outcome = BreakerOutcome::Seen;
    } else {
        out.outcome = BreakerOutcome::Forged;
    }
    return out;
}

}  // namespace sqslab
