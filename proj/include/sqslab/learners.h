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

#ifndef SQSLAB_LEARNERS_H
#define SQSLAB_LEARNERS_H

#include <cstdint>
#include <string>

#include "json.hpp"
#include "sqslab/oracles.h"

namespace sqslab {

/// Output of a learner: a total predicate over {0,1}^n.
struct Hypothesis {
    enum class Kind { Dictator, Constant };
    Kind kind = Kind::Constant;
    int n = 0;
    int index = 0;      // dictator: f(x) = x_index
    bool value = false;  // constant

    static Hypothesis dictator(int n, int index);
    static Hypothesis constant(int n, bool value);

    bool eval(uint64_t code) const;
    std::string description() const;
    nlohmann::json to_json() const;
    static Hypothesis from_json(const nlohmann::json &j);

    bool operator==(const Hypothesis &other) const = default;
};

class SqLearner {
   public:
    virtual ~SqLearner() = default;
    virtual Hypothesis learn(SqlOracle &oracle, double epsilon, double delta) = 0;
    /// Queries issued per run, for sizing the reduction.
    virtual uint64_t query_count(int n) const = 0;
    /// Tolerance of every query.
    virtual double tolerance() const = 0;
    virtual std::string name() const = 0;
};

/// Queries g_i(x, y) = (2y - 1)(-1)^{x_i} for every i and returns the dictator
/// with the most negative answer. The true correlation is -1 at the target and 0
/// elsewhere, so tolerance 1/4 separates them.
Hypothesis dictator_sq_learner(SqlOracle &oracle, int n, double epsilon, double delta);

class DictatorLearner final : public SqLearner {
   public:
    Hypothesis learn(SqlOracle &oracle, double epsilon, double delta) override;
    uint64_t query_count(int n) const override {
        return static_cast<uint64_t>(n);
    }
    double tolerance() const override {
        return 0.25;
    }
    std::string name() const override {
        return "dictator";
    }
};

/// The all-zero hypothesis. Its error is the target's density, so it is an
/// epsilon-accurate learner whenever density_bound <= epsilon.
Hypothesis trivial_sparse_learner(int n, double density_bound, double epsilon);

class TrivialSparseLearner final : public SqLearner {
   public:
    explicit TrivialSparseLearner(double density_bound) : density_bound_(density_bound) {
    }
    Hypothesis learn(SqlOracle &oracle, double epsilon, double delta) override;
    uint64_t query_count(int) const override {
        return 0;
    }
    double tolerance() const override {
        return 1.0;
    }
    std::string name() const override {
        return "trivial_sparse";
    }

   private:
    double density_bound_;
};

/// Pr_x[h(x) != f(x)] over f's domain, by enumeration.
double hypothesis_error(const Hypothesis &h, const Predicate &f);

}  // namespace sqslab

#endif
