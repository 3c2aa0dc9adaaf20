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

#ifndef SQSLAB_ERRORS_H
#define SQSLAB_ERRORS_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqslab {

enum class ErrorKind {
    Usage,              // malformed arguments, width mismatches
    Domain,             // element outside a predicate's domain
    Resource,           // enumeration cap exceeded
    Precondition,       // operation called outside its contract
    Singularity,        // degenerate correlation in orthonormalization
    OracleUndefined,    // empty positive set
    AdversaryExhausted, // candidate set would become empty
    Budget,             // query count or tolerance outside the session budget
    Protocol,           // oracle answers inconsistent with the sampler's protocol
    NoDictatorFound,
    Invariant,          // closed form disagrees with brute force
};

std::string_view error_kind_name(ErrorKind kind);

/// All library failures carry a kind so callers (and the harness) can classify them.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

}  // namespace sqslab

#endif
