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

#ifndef SQSLAB_RNG_H
#define SQSLAB_RNG_H

#include <cstdint>
#include <limits>

namespace sqslab {

constexpr uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: output k is a fixed mix of (key, k). Two generators
/// with the same key produce the same stream regardless of scheduling, which is
/// what makes parallel trials reproducible.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t key = 0) : key_(splitmix64(key ^ 0x5851F42D4C957F2DULL)) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        return splitmix64(key_ + splitmix64(counter_++));
    }

    /// Uniform integer in [0, bound). Uses rejection so it is exactly uniform.
    uint64_t below(uint64_t bound);

    /// Uniform double in [0, 1).
    double unit() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// An independent child stream, e.g. one per trial or per oracle.
    Rng fork(uint64_t stream) const {
        return Rng(splitmix64(key_ ^ splitmix64(stream + 0x632BE59BD9B4E019ULL)));
    }

    uint64_t counter() const {
        return counter_;
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace sqslab

#endif
