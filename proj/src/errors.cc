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

#include "sqslab/errors.h"

namespace sqslab {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Usage:
            return "usage";
        case ErrorKind::Domain:
            return "domain";
        case ErrorKind::Resource:
            return "resource";
        case ErrorKind::Precondition:
            return "precondition";
        case ErrorKind::Singularity:
            return "singularity";
        case ErrorKind::OracleUndefined:
            return "oracle-undefined";
        case ErrorKind::AdversaryExhausted:
            return "adversary-exhausted";
        case ErrorKind::Budget:
            return "budget";
        case ErrorKind::Protocol:
            return "protocol";
        case ErrorKind::NoDictatorFound:
            return "no-dictator-found";
        case ErrorKind::Invariant:
            return "invariant";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + " error: " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace sqslab
