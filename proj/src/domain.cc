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

#include "sqslab/domain.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "sqslab/crypto.h"
#include "sqslab/errors.h"

namespace sqslab {

namespace {

void check_cube_width(int n) {
    if (n < 1 || n > kMaxBitWidth) {
        fail(ErrorKind::Usage, "cube width " + std::to_string(n) + " outside [1, 32]");
    }
}

// p^{n-1}: the block size of the leading Z_p digit.
uint64_t zp_block(const Domain &d) {
    return d.ambient_size() / d.p();
}

}  // namespace

Domain Domain::full_cube(int n) {
    check_cube_width(n);
    return Domain(DomainKind::FullCube, n, 2, uint64_t{1} << n);
}

Domain Domain::punctured_cube(int n) {
    check_cube_width(n);
    return Domain(DomainKind::PuncturedCube, n, 2, uint64_t{1} << n);
}

Domain Domain::punctured_zp(int n, uint32_t p) {
    if (!is_odd_prime(p)) {
        fail(ErrorKind::Usage, "p = " + std::to_string(p) + " is not an odd prime");
    }
    if (n < 2) {
        fail(ErrorKind::Usage, "punctured Z_p space needs n >= 2");
    }
    double size = std::pow(static_cast<double>(p), n);
    if (size > 9.0e15) {
        fail(ErrorKind::Resource, "p^n too large to index");
    }
    return Domain(DomainKind::PuncturedZp, n, p, ipow(p, n));
}

uint64_t Domain::cardinality() const {
    switch (kind_) {
        case DomainKind::FullCube:
            return ambient_;
        case DomainKind::PuncturedCube:
            return ambient_ - 1;
        case DomainKind::PuncturedZp:
            return ambient_ - p_;
    }
    return 0;
}

bool Domain::contains(uint64_t code) const {
    if (code >= ambient_) {
        return false;
    }
    switch (kind_) {
        case DomainKind::FullCube:
            return true;
        case DomainKind::PuncturedCube:
            return code != 0;
        case DomainKind::PuncturedZp:
            return code % zp_block(*this) != 0;
    }
    return false;
}

uint64_t Domain::code_at(uint64_t index) const {
    if (index >= cardinality()) {
        fail(ErrorKind::Domain, "index " + std::to_string(index) + " past the end of " + describe());
    }
    switch (kind_) {
        case DomainKind::FullCube:
            return index;
        case DomainKind::PuncturedCube:
            return index + 1;
        case DomainKind::PuncturedZp: {
            uint64_t per = zp_block(*this) - 1;
            return (index / per) * zp_block(*this) + index % per + 1;
        }
    }
    return 0;
}

uint64_t Domain::index_of(uint64_t code) const {
    if (!contains(code)) {
        fail(ErrorKind::Domain, format_element(code) + " is not in " + describe());
    }
    switch (kind_) {
        case DomainKind::FullCube:
            return code;
        case DomainKind::PuncturedCube:
            return code - 1;
        case DomainKind::PuncturedZp: {
            uint64_t block = zp_block(*this);
            return (code / block) * (block - 1) + code % block - 1;
        }
    }
    return 0;
}

std::vector<uint64_t> Domain::elements(uint64_t cap) const {
    require_enumerable(cap);
    std::vector<uint64_t> out;
    out.reserve(cardinality());
    for_each([&](uint64_t c) { out.push_back(c); });
    return out;
}

void Domain::require_enumerable(uint64_t cap) const {
    if (cardinality() > cap) {
        fail(ErrorKind::Resource,
             describe() + " has " + std::to_string(cardinality()) + " elements, above the cap " + std::to_string(cap));
    }
}

std::string Domain::describe() const {
    switch (kind_) {
        case DomainKind::FullCube:
            return "{0,1}^" + std::to_string(n_);
        case DomainKind::PuncturedCube:
            return "{0,1}^" + std::to_string(n_) + "\\{0}";
        case DomainKind::PuncturedZp:
            return "Xhat(" + std::to_string(n_) + "," + std::to_string(p_) + ")";
    }
    return "?";
}

std::string Domain::format_element(uint64_t code) const {
    if (kind_ == DomainKind::PuncturedZp) {
        if (code >= ambient_) {
            return "code " + std::to_string(code);
        }
        return ZpVector::from_code(code, n_, p_).str();
    }
    if (code >= ambient_) {
        return "code " + std::to_string(code);
    }
    return BitVector(n_, code).str();
}

nlohmann::json Domain::to_json() const {
    switch (kind_) {
        case DomainKind::FullCube:
            return {{"kind", "full_cube"}, {"n", n_}};
        case DomainKind::PuncturedCube:
            return {{"kind", "punctured_cube"}, {"n", n_}};
        case DomainKind::PuncturedZp:
            return {{"kind", "punctured_zp"}, {"n", n_}, {"p", p_}};
    }
    return {};
}

Domain Domain::from_json(const nlohmann::json &j) {
    std::string kind = j.at("kind").get<std::string>();
    int n = j.at("n").get<int>();
    if (kind == "full_cube") {
        return full_cube(n);
    }
    if (kind == "punctured_cube") {
        return punctured_cube(n);
    }
    if (kind == "punctured_zp") {
        return punctured_zp(n, j.at("p").get<uint32_t>());
    }
    fail(ErrorKind::Usage, "unknown domain kind '" + kind + "'");
}

Predicate Predicate::neg_parity(const BitVector &s, bool punctured) {
    Domain d = punctured ? Domain::punctured_cube(s.width()) : Domain::full_cube(s.width());
    return Predicate(NegParity{s, punctured}, d);
}

Predicate Predicate::bool_linear(const ZpVector &a) {
    return Predicate(BoolLinear{a}, Domain::punctured_zp(a.size(), a.modulus()));
}

Predicate Predicate::set_membership(const Domain &domain, std::vector<uint64_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (uint64_t m : members) {
        if (!domain.contains(m)) {
            fail(ErrorKind::Domain, domain.format_element(m) + " is not in " + domain.describe());
        }
    }
    return Predicate(SetMembership{domain, std::move(members)}, domain);
}

Predicate Predicate::sig_verify(std::shared_ptr<const SignatureScheme> scheme) {
    if (!scheme) {
        fail(ErrorKind::Usage, "null signature scheme");
    }
    int n = scheme->width();
    return Predicate(SigVerify{std::move(scheme)}, Domain::full_cube(2 * n));
}

Predicate Predicate::dictator(int n, int index) {
    if (index < 0 || index >= n) {
        fail(ErrorKind::Usage, "dictator index " + std::to_string(index) + " outside [0, " + std::to_string(n) + ")");
    }
    return Predicate(Dictator{n, index}, Domain::full_cube(n));
}

Predicate Predicate::constant(const Domain &domain, bool value) {
    return Predicate(Constant{domain, value}, domain);
}

bool Predicate::eval_unchecked(uint64_t code) const {
    return std::visit(
        [&](const auto &v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, NegParity>) {
                return !parity_of(code & v.s.bits());
            } else if constexpr (std::is_same_v<T, BoolLinear>) {
                uint64_t acc = 0;
                uint32_t p = v.a.modulus();
                for (int i = v.a.size() - 1; i >= 0; i--) {
                    acc += static_cast<uint64_t>(v.a[i]) * (code % p);
                    code /= p;
                }
                return acc % p == 1;
            } else if constexpr (std::is_same_v<T, SetMembership>) {
                return std::binary_search(v.members.begin(), v.members.end(), code);
            } else if constexpr (std::is_same_v<T, SigVerify>) {
                auto [m, s] = decode_pair(code, v.scheme->width());
                return v.scheme->verify(m, s);
            } else if constexpr (std::is_same_v<T, Dictator>) {
                return (code >> (v.n - 1 - v.index)) & 1;
            } else {
                return v.value;
            }
        },
        v_);
}

bool Predicate::eval(uint64_t code) const {
    if (!domain_.contains(code)) {
        fail(ErrorKind::Domain, domain_.format_element(code) + " is not in the domain " + domain_.describe() +
                                    " of " + describe());
    }
    return eval_unchecked(code);
}

bool Predicate::is_normalized() const {
    if (auto *b = std::get_if<BoolLinear>(&v_)) {
        return b->a[0] == 1;
    }
    return false;
}

std::string Predicate::describe() const {
    return std::visit(
        [&](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, NegParity>) {
                return "negparity(s=" + v.s.str() + ")";
            } else if constexpr (std::is_same_v<T, BoolLinear>) {
                return "boollinear(p=" + std::to_string(v.a.modulus()) + ", a=" + v.a.str() + ")";
            } else if constexpr (std::is_same_v<T, SetMembership>) {
                return "set(" + std::to_string(v.members.size()) + " members over " + v.domain.describe() + ")";
            } else if constexpr (std::is_same_v<T, SigVerify>) {
                return "ver_vk(n=" + std::to_string(v.scheme->width()) + ")";
            } else if constexpr (std::is_same_v<T, Dictator>) {
                return "dictator(x_" + std::to_string(v.index) + ")";
            } else {
                return std::string("constant(") + (v.value ? "1" : "0") + ")";
            }
        },
        v_);
}

nlohmann::json Predicate::to_json() const {
    return std::visit(
        [&](const auto &v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, NegParity>) {
                return {{"kind", "negparity"},
                        {"n", v.s.width()},
                        {"params", {{"s", v.s.hex()}, {"punctured", v.punctured}}}};
            } else if constexpr (std::is_same_v<T, BoolLinear>) {
                return {{"kind", "boollinear"}, {"n", v.a.size()}, {"p", v.a.modulus()}, {"params", {{"a", v.a.entries()}}}};
            } else if constexpr (std::is_same_v<T, SetMembership>) {
                std::vector<std::string> hex;
                for (uint64_t m : v.members) {
                    hex.push_back(to_hex(m, v.domain.n()));
                }
                return {{"kind", "set"}, {"n", v.domain.n()}, {"params", {{"domain", v.domain.to_json()}, {"members", hex}}}};
            } else if constexpr (std::is_same_v<T, SigVerify>) {
                return {{"kind", "sig_verify"}, {"n", v.scheme->width()}, {"params", {{"scheme", v.scheme->descriptor()}}}};
            } else if constexpr (std::is_same_v<T, Dictator>) {
                return {{"kind", "dictator"}, {"n", v.n}, {"params", {{"index", v.index}}}};
            } else {
                return {{"kind", "constant"}, {"n", v.domain.n()}, {"params", {{"domain", v.domain.to_json()}, {"value", v.value}}}};
            }
        },
        v_);
}

Predicate Predicate::from_json(const nlohmann::json &j) {
    std::string kind = j.at("kind").get<std::string>();
    int n = j.at("n").get<int>();
    const nlohmann::json &params = j.at("params");
    if (kind == "negparity") {
        return neg_parity(BitVector::from_hex(params.at("s").get<std::string>(), n), params.at("punctured").get<bool>());
    }
    if (kind == "boollinear") {
        return bool_linear(ZpVector(params.at("a").get<std::vector<uint32_t>>(), j.at("p").get<uint32_t>()));
    }
    if (kind == "set") {
        Domain d = Domain::from_json(params.at("domain"));
        std::vector<uint64_t> members;
        for (const auto &h : params.at("members")) {
            members.push_back(parse_hex(h.get<std::string>()));
        }
        return set_membership(d, std::move(members));
    }
    if (kind == "sig_verify") {
        return sig_verify(scheme_from_json(params.at("scheme")));
    }
    if (kind == "dictator") {
        return dictator(n, params.at("index").get<int>());
    }
    if (kind == "constant") {
        return constant(Domain::from_json(params.at("domain")), params.at("value").get<bool>());
    }
    fail(ErrorKind::Usage, "unknown predicate kind '" + kind + "'");
}

bool eval(const Predicate &f, uint64_t code) {
    return f.eval(code);
}

std::vector<uint64_t> positive_set(const Predicate &f, uint64_t cap) {
    const Domain &d = f.domain();
    if (auto *s = std::get_if<SetMembership>(&f.variant())) {
        return s->members;
    }
    if (auto *v = std::get_if<SigVerify>(&f.variant())) {
        // One valid signature per message, so enumerate messages instead of pairs.
        int n = v->scheme->width();
        uint64_t messages = uint64_t{1} << n;
        if (messages > cap) {
            fail(ErrorKind::Resource, "2^" + std::to_string(n) + " messages exceed the enumeration cap");
        }
        std::vector<uint64_t> out;
        out.reserve(messages);
        for (uint64_t m = 0; m < messages; m++) {
            out.push_back(encode_pair(m, v->scheme->sign(m), n));
        }
        return out;
    }
    d.require_enumerable(cap);
    std::vector<uint64_t> out;
    d.for_each([&](uint64_t c) {
        if (f.eval_unchecked(c)) {
            out.push_back(c);
        }
    });
    return out;
}

Fraction density_exact(const Predicate &f, uint64_t cap) {
    const Domain &d = f.domain();
    if (auto *s = std::get_if<SetMembership>(&f.variant())) {
        return {s->members.size(), d.cardinality()};
    }
    if (auto *c = std::get_if<Constant>(&f.variant())) {
        return {c->value ? d.cardinality() : 0, d.cardinality()};
    }
    if (std::holds_alternative<Dictator>(f.variant())) {
        return {d.cardinality() / 2, d.cardinality()};
    }
    return {positive_set(f, cap).size(), d.cardinality()};
}

double density(const Predicate &f, uint64_t cap) {
    return density_exact(f, cap).value();
}

PredicateClass PredicateClass::all_neg_parity(int n, ParityIndexSet index_set) {
    check_cube_width(n);
    PredicateClass c;
    c.kind_ = Kind::NegParity;
    c.n_ = n;
    c.index_set_ = index_set;
    return c;
}

PredicateClass PredicateClass::normalized_bool_linear(int n, uint32_t p) {
    (void)Domain::punctured_zp(n, p);
    PredicateClass c;
    c.kind_ = Kind::BoolLinear;
    c.n_ = n;
    c.p_ = p;
    return c;
}

PredicateClass PredicateClass::dictators(int n) {
    check_cube_width(n);
    PredicateClass c;
    c.kind_ = Kind::Dictator;
    c.n_ = n;
    return c;
}

PredicateClass PredicateClass::custom(std::vector<Predicate> members) {
    if (members.empty()) {
        fail(ErrorKind::Usage, "custom class needs at least one member");
    }
    for (const auto &m : members) {
        if (!(m.domain() == members.front().domain())) {
            fail(ErrorKind::Usage, "custom class members must share a domain");
        }
    }
    PredicateClass c;
    c.kind_ = Kind::Custom;
    c.n_ = members.front().domain().n();
    c.p_ = members.front().domain().p();
    c.custom_ = std::move(members);
    return c;
}

uint64_t PredicateClass::size() const {
    switch (kind_) {
        case Kind::NegParity:
            return index_set_ == ParityIndexSet::NonZero ? (uint64_t{1} << n_) - 1 : (uint64_t{1} << n_);
        case Kind::BoolLinear:
            return ipow(p_, n_ - 1);
        case Kind::Dictator:
            return static_cast<uint64_t>(n_);
        case Kind::Custom:
            return custom_.size();
    }
    return 0;
}

Predicate PredicateClass::member(uint64_t i) const {
    if (i >= size()) {
        fail(ErrorKind::Usage, "class member " + std::to_string(i) + " out of range");
    }
    switch (kind_) {
        case Kind::NegParity: {
            uint64_t s = index_set_ == ParityIndexSet::NonZero ? i + 1 : i;
            return Predicate::neg_parity(BitVector(n_, s), true);
        }
        case Kind::BoolLinear: {
            // a[0] = 1, a[1..n-1] = digits of i.
            return Predicate::bool_linear(ZpVector::from_code(ipow(p_, n_ - 1) + i, n_, p_));
        }
        case Kind::Dictator:
            return Predicate::dictator(n_, static_cast<int>(i));
        case Kind::Custom:
            return custom_[i];
    }
    fail(ErrorKind::Usage, "bad class");
}

std::vector<Predicate> PredicateClass::members() const {
    std::vector<Predicate> out;
    out.reserve(size());
    for (uint64_t i = 0; i < size(); i++) {
        out.push_back(member(i));
    }
    return out;
}

Domain PredicateClass::domain() const {
    switch (kind_) {
        case Kind::NegParity:
            return Domain::punctured_cube(n_);
        case Kind::BoolLinear:
            return Domain::punctured_zp(n_, p_);
        case Kind::Dictator:
            return Domain::full_cube(n_);
        case Kind::Custom:
            return custom_.front().domain();
    }
    fail(ErrorKind::Usage, "bad class");
}

std::string PredicateClass::describe() const {
    switch (kind_) {
        case Kind::NegParity:
            return "negparity class n=" + std::to_string(n_) +
                   (index_set_ == ParityIndexSet::NonZero ? " (s != 0)" : " (all s)");
        case Kind::BoolLinear:
            return "normalized boollinear class n=" + std::to_string(n_) + " p=" + std::to_string(p_);
        case Kind::Dictator:
            return "dictator class n=" + std::to_string(n_);
        case Kind::Custom:
            return "custom class of " + std::to_string(custom_.size());
    }
    return "?";
}

nlohmann::json PredicateClass::to_json() const {
    switch (kind_) {
        case Kind::NegParity:
            return {{"kind", "negparity"},
                    {"n", n_},
                    {"params", {{"include_zero", index_set_ == ParityIndexSet::All}}}};
        case Kind::BoolLinear:
            return {{"kind", "boollinear"}, {"n", n_}, {"p", p_}, {"params", nlohmann::json::object()}};
        case Kind::Dictator:
            return {{"kind", "dictator"}, {"n", n_}, {"params", nlohmann::json::object()}};
        case Kind::Custom: {
            nlohmann::json members = nlohmann::json::array();
            for (const auto &m : custom_) {
                members.push_back(m.to_json());
            }
            return {{"kind", "custom"}, {"n", n_}, {"params", {{"members", members}}}};
        }
    }
    return {};
}

PredicateClass PredicateClass::from_json(const nlohmann::json &j) {
    std::string kind = j.at("kind").get<std::string>();
    int n = j.at("n").get<int>();
    const nlohmann::json &params = j.at("params");
    if (kind == "negparity") {
        return all_neg_parity(n, params.at("include_zero").get<bool>() ? ParityIndexSet::All : ParityIndexSet::NonZero);
    }
    if (kind == "boollinear") {
        return normalized_bool_linear(n, j.at("p").get<uint32_t>());
    }
    if (kind == "dictator") {
        return dictators(n);
    }
    if (kind == "custom") {
        std::vector<Predicate> members;
        for (const auto &m : params.at("members")) {
            members.push_back(Predicate::from_json(m));
        }
        return custom(std::move(members));
    }
    fail(ErrorKind::Usage, "unknown class kind '" + kind + "'");
}

bool BoolLinearClassStats::all_match() const {
    return domain_size == domain_size_formula && class_size == class_size_formula &&
           positive_size_min == positive_size_formula && positive_size_max == positive_size_formula &&
           agreement_min == agreement_formula && agreement_max == agreement_formula &&
           per_point_min == per_point_formula && per_point_max == per_point_formula && trivial_vector_excluded;
}

BoolLinearClassStats class_stats_boollinear(int n, uint32_t p) {
    Domain d = Domain::punctured_zp(n, p);
    d.require_enumerable();
    PredicateClass cls = PredicateClass::normalized_bool_linear(n, p);

    BoolLinearClassStats st;
    st.n = n;
    st.p = p;
    st.domain_size_formula = ipow(p, n) - p;
    st.class_size_formula = ipow(p, n - 1);
    st.positive_size_formula = ipow(p, n - 1) - 1;
    st.agreement_formula = (uint64_t{p} * p - 2 * p + 2) * ipow(p, n - 2) - p;
    st.per_point_formula = ipow(p, n - 2);

    uint64_t count = 0;
    d.for_each([&](uint64_t) { count++; });
    st.domain_size = count;
    st.trivial_vector_excluded = !d.contains(ipow(p, n - 1));  // (1, 0, ..., 0)

    std::vector<Predicate> members = cls.members();
    st.class_size = members.size();

    // Bit-packed truth tables, one row per member.
    std::vector<uint64_t> elements = d.elements();
    size_t words = (elements.size() + 63) / 64;
    std::vector<uint64_t> tables(members.size() * words, 0);
    std::vector<uint64_t> per_point(elements.size(), 0);
    st.positive_size_min = UINT64_MAX;
    for (size_t i = 0; i < members.size(); i++) {
        uint64_t positives = 0;
        for (size_t k = 0; k < elements.size(); k++) {
            if (members[i].eval_unchecked(elements[k])) {
                tables[i * words + k / 64] |= uint64_t{1} << (k % 64);
                per_point[k]++;
                positives++;
            }
        }
        st.positive_size_min = std::min(st.positive_size_min, positives);
        st.positive_size_max = std::max(st.positive_size_max, positives);
    }
    st.per_point_min = *std::min_element(per_point.begin(), per_point.end());
    st.per_point_max = *std::max_element(per_point.begin(), per_point.end());

    st.agreement_min = UINT64_MAX;
    uint64_t pad = words * 64 - elements.size();
    for (size_t i = 0; i < members.size(); i++) {
        for (size_t j = i + 1; j < members.size(); j++) {
            uint64_t disagree = 0;
            for (size_t w = 0; w < words; w++) {
                disagree += std::popcount(tables[i * words + w] ^ tables[j * words + w]);
            }
            uint64_t agree = words * 64 - pad - disagree;
            st.agreement_min = std::min(st.agreement_min, agree);
            st.agreement_max = std::max(st.agreement_max, agree);
            st.pairs_checked++;
        }
    }
    if (st.pairs_checked == 0) {
        st.agreement_min = st.agreement_max = st.agreement_formula;
    }

    if (!st.all_match()) {
        std::ostringstream msg;
        msg << "boollinear class stats disagree with closed forms at n=" << n << " p=" << p;
        fail(ErrorKind::Invariant, msg.str());
    }
    return st;
}

NegParityPointCounts negparity_point_counts(int n, ParityIndexSet index_set) {
    Domain d = Domain::punctured_cube(n);
    d.require_enumerable();
    NegParityPointCounts out;
    out.nonzero_formula = (uint64_t{1} << (n - 1)) - 1;
    out.all_formula = uint64_t{1} << (n - 1);
    out.min = UINT64_MAX;
    uint64_t s_begin = index_set == ParityIndexSet::NonZero ? 1 : 0;
    uint64_t top = uint64_t{1} << n;
    // Brute force over (x, s); n <= 12 keeps this at 16M pairs.
    d.for_each([&](uint64_t x) {
        uint64_t c = 0;
        for (uint64_t s = s_begin; s < top; s++) {
            c += !parity_of(x & s);
        }
        out.min = std::min(out.min, c);
        out.max = std::max(out.max, c);
    });
    return out;
}

}  // namespace sqslab
