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

#ifndef SQSLAB_DOMAIN_H
#define SQSLAB_DOMAIN_H

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sqslab/vectors.h"

namespace sqslab {

constexpr uint64_t kDefaultEnumerationCap = uint64_t{1} << 24;

enum class DomainKind { FullCube, PuncturedCube, PuncturedZp };

/// A finite input space. Elements are identified by their code: the integer
/// value of the bit string (cubes) or the base-p rank of the vector (Z_p).
/// Enumeration is in increasing code order, which is lexicographic.
class Domain {
   public:
    static Domain full_cube(int n);
    /// {0,1}^n minus the all-zero vector.
    static Domain punctured_cube(int n);
    /// Vectors in Z_p^n whose entries 1..n-1 are not all zero.
    static Domain punctured_zp(int n, uint32_t p);

    DomainKind kind() const {
        return kind_;
    }
    int n() const {
        return n_;
    }
    uint32_t p() const {
        return p_;
    }
    /// 2^n or p^n: the number of codes including excluded ones.
    uint64_t ambient_size() const {
        return ambient_;
    }
    uint64_t cardinality() const;

    bool contains(uint64_t code) const;
    /// The index-th element in enumeration order.
    uint64_t code_at(uint64_t index) const;
    /// Inverse of code_at. Throws a domain error for codes not in the domain.
    uint64_t index_of(uint64_t code) const;

    /// Calls fn(code) for each element in order.
    template <typename Fn>
    void for_each(Fn &&fn) const {
        for (uint64_t c = 0; c < ambient_; c++) {
            if (contains(c)) {
                fn(c);
            }
        }
    }
    std::vector<uint64_t> elements(uint64_t cap = kDefaultEnumerationCap) const;

    /// Throws a resource error when the domain has more than cap elements.
    void require_enumerable(uint64_t cap = kDefaultEnumerationCap) const;

    std::string describe() const;
    std::string format_element(uint64_t code) const;
    nlohmann::json to_json() const;
    static Domain from_json(const nlohmann::json &j);

    bool operator==(const Domain &other) const = default;

   private:
    Domain(DomainKind kind, int n, uint32_t p, uint64_t ambient) : kind_(kind), n_(n), p_(p), ambient_(ambient) {
    }
    DomainKind kind_ = DomainKind::FullCube;
    int n_ = 0;
    uint32_t p_ = 2;
    uint64_t ambient_ = 1;
};

class SignatureScheme;

struct NegParity {
    BitVector s;
    bool punctured = true;  // domain {0,1}^n \ {0^n} when true, else {0,1}^n
};
struct BoolLinear {
    ZpVector a;
};
struct SetMembership {
    Domain domain;
    std::vector<uint64_t> members;  // sorted, unique
};
/// ver_vk over (m, s) pairs encoded as (m << n) | s.
struct SigVerify {
    std::shared_ptr<const SignatureScheme> scheme;
};
struct Dictator {
    int n = 0;
    int index = 0;
};
struct Constant {
    Domain domain;
    bool value = true;
};

/// A {0,1}-valued function over a finite domain.
class Predicate {
   public:
    using Variant = std::variant<NegParity, BoolLinear, SetMembership, SigVerify, Dictator, Constant>;

    static Predicate neg_parity(const BitVector &s, bool punctured = true);
    static Predicate bool_linear(const ZpVector &a);
    static Predicate set_membership(const Domain &domain, std::vector<uint64_t> members);
    static Predicate sig_verify(std::shared_ptr<const SignatureScheme> scheme);
    static Predicate dictator(int n, int index);
    static Predicate constant(const Domain &domain, bool value);

    const Domain &domain() const {
        return domain_;
    }
    const Variant &variant() const {
        return v_;
    }

    /// Throws a domain error when code is not in the domain.
    bool eval(uint64_t code) const;
    /// eval without the membership check, for hot loops over known-good codes.
    bool eval_unchecked(uint64_t code) const;

    bool is_normalized() const;
    std::string describe() const;
    nlohmann::json to_json() const;
    static Predicate from_json(const nlohmann::json &j);

   private:
    Predicate(Variant v, Domain d) : v_(std::move(v)), domain_(d) {
    }
    Variant v_;
    Domain domain_;
};

bool eval(const Predicate &f, uint64_t code);

/// S_f in enumeration order. Throws a resource error past the cap.
std::vector<uint64_t> positive_set(const Predicate &f, uint64_t cap = kDefaultEnumerationCap);

/// |S_f| / |domain| as an exact fraction.
struct Fraction {
    uint64_t num = 0;
    uint64_t den = 1;
    double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};
Fraction density_exact(const Predicate &f, uint64_t cap = kDefaultEnumerationCap);
double density(const Predicate &f, uint64_t cap = kDefaultEnumerationCap);

enum class ParityIndexSet { NonZero, All };

/// A finite family of predicates with a deterministic member order.
class PredicateClass {
   public:
    static PredicateClass all_neg_parity(int n, ParityIndexSet index_set = ParityIndexSet::NonZero);
    static PredicateClass normalized_bool_linear(int n, uint32_t p);
    static PredicateClass dictators(int n);
    static PredicateClass custom(std::vector<Predicate> members);

    enum class Kind { NegParity, BoolLinear, Dictator, Custom };
    Kind kind() const {
        return kind_;
    }
    int n() const {
        return n_;
    }
    uint32_t p() const {
        return p_;
    }
    ParityIndexSet index_set() const {
        return index_set_;
    }
    uint64_t size() const;
    /// The member at position i in enumeration order.
    Predicate member(uint64_t i) const;
    std::vector<Predicate> members() const;
    /// The domain members are sampled over.
    Domain domain() const;

    std::string describe() const;
    nlohmann::json to_json() const;
    static PredicateClass from_json(const nlohmann::json &j);

   private:
    Kind kind_ = Kind::Custom;
    int n_ = 0;
    uint32_t p_ = 2;
    ParityIndexSet index_set_ = ParityIndexSet::NonZero;
    std::vector<Predicate> custom_;
};

/// Closed forms for the normalized booleanized linear class next to their
/// brute-force counterparts.
struct BoolLinearClassStats {
    int n = 0;
    uint32_t p = 0;
    uint64_t domain_size = 0, domain_size_formula = 0;
    uint64_t class_size = 0, class_size_formula = 0;
    // every member's |S_f| must equal the formula; min/max observed
    uint64_t positive_size_min = 0, positive_size_max = 0, positive_size_formula = 0;
    uint64_t agreement_min = 0, agreement_max = 0, agreement_formula = 0;
    uint64_t per_point_min = 0, per_point_max = 0, per_point_formula = 0;
    bool trivial_vector_excluded = false;
    uint64_t pairs_checked = 0;

    bool all_match() const;
};

/// Throws an invariant error when any brute-force count disagrees with its closed form.
BoolLinearClassStats class_stats_boollinear(int n, uint32_t p);

/// Per-point positive counts for negative parities: min/max over x in the
/// punctured cube of |{s in index set : not-parity_s(x) = 1}|.
struct NegParityPointCounts {
    uint64_t min = 0, max = 0;
    uint64_t nonzero_formula = 0;  // 2^{n-1} - 1
    uint64_t all_formula = 0;      // 2^{n-1}
};
NegParityPointCounts negparity_point_counts(int n, ParityIndexSet index_set);

}  // namespace sqslab

#endif
