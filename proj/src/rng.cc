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

#include "sqslab/rng.h"

#include "sqslab/errors.h"

namespace sqslab {

uint64_t Rng::below(uint64_t bound) {
    if (bound == 0) {
        fail(ErrorKind::Usage, "Rng::below(0)");
    }
    // Reject the top (2^64 mod bound) values so every residue is equally likely.
    uint64_t threshold = (0 - bound) % bound;
    while (true) {
        uint64_t r = (*this)();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

}  // namespace sqslab
