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

#include "sqslab/stats.h"

#include <cmath>
#include <set>

#include "sqslab/errors.h"

namespace sqslab {

double hoeffding_tail(uint64_t num_samples, double deviation) {
    if (num_samples == 0) {
        fail(ErrorKind::Usage, "hoeffding_tail needs at least one sample");
    }
    if (!(deviation > 0.0 && deviation < 0.5)) {
        fail(ErrorKind::Usage, "hoeffding_tail deviation must lie in (0, 1/2)");
    }
    return std::exp(-2.0 * static_cast<double>(num_samples) * deviation * deviation);
}

uint64_t required_samples_sqs(double xi0, double failure_prob, SamplePreset preset) {
    if (!(xi0 > 0.0) || !(failure_prob > 0.0 && failure_prob < 1.0)) {
        fail(ErrorKind::Usage, "required_samples_sqs needs xi0 > 0 and failure probability in (0, 1)");
    }
    double l = std::log(2.0 / failure_prob);
    double m = preset == SamplePreset::SignatureBreaker ? 2.0 * l / (xi0 * xi0) : l / (2.0 * xi0 * xi0);
    return static_cast<uint64_t>(std::ceil(m));
}

Pmf::Pmf(std::map<int64_t, double> probabilities) : p_(std::move(probabilities)) {
    double total = 0.0;
    for (const auto &[x, w] : p_) {
        if (!(w >= 0.0)) {
            fail(ErrorKind::Usage, "negative probability at " + std::to_string(x));
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        fail(ErrorKind::Usage, "probabilities sum to " + std::to_string(total));
    }
}

Pmf Pmf::uniform(int64_t lo, int64_t hi) {
    if (hi < lo) {
        fail(ErrorKind::Usage, "empty uniform range");
    }
    std::map<int64_t, double> p;
    double w = 1.0 / static_cast<double>(hi - lo + 1);
    for (int64_t x = lo; x <= hi; x++) {
        p[x] = w;
    }
    return Pmf(std::move(p));
}

double Pmf::at(int64_t x) const {
    auto it = p_.find(x);
    return it == p_.end() ? 0.0 : it->second;
}

double Pmf::probability_of(const std::function<bool(int64_t)> &event) const {
    double total = 0.0;
    for (const auto &[x, w] : p_) {
        if (event(x)) {
            total += w;
        }
    }
    return total;
}

Pmf Pmf::product(const Pmf &a, const Pmf &b, int64_t stride) {
    std::map<int64_t, double> p;
    for (const auto &[x, wx] : a.p_) {
        for (const auto &[y, wy] : b.p_) {
            if (y < 0 || y >= stride) {
                fail(ErrorKind::Usage, "product stride does not cover the second factor");
            }
            p[x * stride + y] += wx * wy;
        }
    }
    Pmf out;
    out.p_ = std::move(p);
    return out;
}

double statistical_distance(const Pmf &a, const Pmf &b) {
    std::set<int64_t> support;
    for (const auto &[x, w] : a.probabilities()) {
        support.insert(x);
    }
    for (const auto &[x, w] : b.probabilities()) {
        support.insert(x);
    }
    double total = 0.0;
    for (int64_t x : support) {
        total += std::abs(a.at(x) - b.at(x));
    }
    return total / 2.0;
}

double UniformInterval::density(double x) const {
    return x >= lo() && x <= hi() ? 1.0 / (2.0 * half_width) : 0.0;
}

double uniform_interval_sd(const UniformInterval &a, const UniformInterval &b) {
    if (!(a.half_width > 0.0) || a.half_width != b.half_width) {
        fail(ErrorKind::Precondition, "uniform_interval_sd needs equal positive widths");
    }
    return std::min(1.0, std::abs(a.center - b.center) / (2.0 * a.half_width));
}

double uniform_interval_sd_bound(const UniformInterval &a, const UniformInterval &b) {
    if (!(a.half_width > 0.0) || a.half_width != b.half_width) {
        fail(ErrorKind::Precondition, "uniform_interval_sd_bound needs equal positive widths");
    }
    return std::abs(a.lo() - b.lo()) / (2.0 * a.half_width);
}

}  // namespace sqslab
