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

#ifndef SQSLAB_STATS_H
#define SQSLAB_STATS_H

#include <cstdint>
#include <functional>
#include <map>

namespace sqslab {

/// e^{-2 m eps^2}: bound on the lower tail of a binomial mean m samples wide.
double hoeffding_tail(uint64_t num_samples, double deviation);

enum class SamplePreset {
    /// +/-1 valued samples, two-sided at xi0: M = ceil(2 ln(2 / fail) / xi0^2).
    SignatureBreaker,
    /// +/-1 valued samples at xi0 = xi/3: M = ceil(ln(2 / fail) / (2 xi0^2)).
    LearnToSample,
};

uint64_t required_samples_sqs(double xi0, double failure_prob, SamplePreset preset);

/// Finite distribution keyed by integers.
class Pmf {
   public:
    Pmf() = default;
    /// Throws unless probabilities are nonnegative and sum to 1 within 1e-12.
    explicit Pmf(std::map<int64_t, double> probabilities);

    static Pmf uniform(int64_t lo, int64_t hi);  // inclusive

    const std::map<int64_t, double> &probabilities() const {
        return p_;
    }
    double at(int64_t x) const;
    double probability_of(const std::function<bool(int64_t)> &event) const;

    /// A x B with key a * stride + b. stride must exceed every key of b.
    static Pmf product(const Pmf &a, const Pmf &b, int64_t stride);

   private:
    std::map<int64_t, double> p_;
};

/// (1/2) sum |A(x) - B(x)| over the union of supports.
double statistical_distance(const Pmf &a, const Pmf &b);

struct UniformInterval {
    double center = 0.0;
    double half_width = 0.5;

    double lo() const {
        return center - half_width;
    }
    double hi() const {
        return center + half_width;
    }
    double density(double x) const;
};

/// Exact SD of two equal-width uniforms: min(1, |c1 - c2| / (2 h)). Throws on
/// unequal widths.
double uniform_interval_sd(const UniformInterval &a, const UniformInterval &b);

/// |a - b| / l for intervals [a, a+l], [b, b+l].
double uniform_interval_sd_bound(const UniformInterval &a, const UniformInterval &b);

}  // namespace sqslab

#endif
