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

#include "sqslab/learners.h"

#include "sqslab/errors.h"

namespace sqslab {

Hypothesis Hypothesis::dictator(int n, int index) {
    if (index < 0 || index >= n) {
        fail(ErrorKind::Usage, "dictator index out of range");
    }
    Hypothesis h;
    h.kind = Kind::Dictator;
    h.n = n;
    h.index = index;
    return h;
}

Hypothesis Hypothesis::constant(int n, bool value) {
    Hypothesis h;
    h.kind = Kind::Constant;
    h.n = n;
    h.value = value;
    return h;
}

bool Hypothesis::eval(uint64_t code) const {
    if (kind == Kind::Dictator) {
        return (code >> (n - 1 - index)) & 1;
    }
    return value;
}

std::string Hypothesis::description() const {
    if (kind == Kind::Dictator) {
        return "x_" + std::to_string(index);
    }
    return value ? "constant 1" : "constant 0";
}

nlohmann::json Hypothesis::to_json() const {
    if (kind == Kind::Dictator) {
        return {{"kind", "dictator"}, {"n", n}, {"index", index}};
    }
    return {{"kind", "constant"}, {"n", n}, {"value", value}};
}

Hypothesis Hypothesis::from_json(const nlohmann::json &j) {
    std::string kind = j.at("kind").get<std::string>();
    int n = j.value("n", 0);
    if (kind == "dictator") {
        Hypothesis h;
        h.kind = Kind::Dictator;
        h.n = n;
        h.index = j.at("index").get<int>();
        return h;
    }
    if (kind == "constant") {
        return constant(n, j.at("value").get<bool>());
    }
    fail(ErrorKind::Usage, "unknown hypothesis kind '" + kind + "'");
}

Hypothesis dictator_sq_learner(SqlOracle &oracle, int n, double, double) {
    int best = -1;
    double best_value = 0.0;
    for (int i = 0; i < n; i++) {
        int shift = n - 1 - i;
        LabeledQueryFn g = [shift](uint64_t x, int y) {
            int bit = static_cast<int>((x >> shift) & 1);
            return (2 * y - 1) * (bit ? -1 : 1);
        };
        double v = oracle.ask(g, 0.25).value;
        if (best < 0 || v < best_value) {
            best = i;
            best_value = v;
        }
    }
    if (best < 0 || !(best_value < -0.5)) {
        fail(ErrorKind::NoDictatorFound, "no correlation below -1/2 (best " + std::to_string(best_value) + ")");
    }
    return Hypothesis::dictator(n, best);
}

Hypothesis DictatorLearner::learn(SqlOracle &oracle, double epsilon, double delta) {
    return dictator_sq_learner(oracle, oracle.n(), epsilon, delta);
}

Hypothesis trivial_sparse_learner(int n, double density_bound, double epsilon) {
    if (density_bound > epsilon) {
        fail(ErrorKind::Precondition, "density bound " + std::to_string(density_bound) + " exceeds epsilon " +
                                          std::to_string(epsilon));
    }
    return Hypothesis::constant(n, false);
}

Hypothesis TrivialSparseLearner::learn(SqlOracle &oracle, double epsilon, double) {
    return trivial_sparse_learner(oracle.n(), density_bound_, epsilon);
}

double hypothesis_error(const Hypothesis &h, const Predicate &f) {
    const Domain &d = f.domain();
    d.require_enumerable();
    uint64_t wrong = 0;
    d.for_each([&](uint64_t x) { wrong += h.eval(x) != f.eval_unchecked(x); });
    return static_cast<double>(wrong) / static_cast<double>(d.cardinality());
}

}  // namespace sqslab
