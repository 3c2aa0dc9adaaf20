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

#include "sqslab/fourier.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "sqslab/errors.h"

namespace sqslab {

namespace {

constexpr double kCorrelationTolerance = 1e-9;

void require_full_cube(const TruthTable &g, const char *what) {
    if (g.domain().kind() != DomainKind::FullCube) {
        fail(ErrorKind::Usage, std::string(what) + " needs a table over the full cube, got " + g.domain().describe());
    }
}

bool integral_values(std::span<const double> values) {
    for (double v : values) {
        if (v != std::nearbyint(v) || std::abs(v) > 0x1.0p40) {
            return false;
        }
    }
    return true;
}

// Unnormalized transform G(s) = sum_x g(x) (-1)^{s.x}, exact for integer tables.
std::vector<double> raw_transform(const TruthTable &g) {
    std::span<const double> values = g.values();
    std::vector<double> out(values.size());
    if (integral_values(values)) {
        std::vector<int64_t> ints(values.size());
        for (size_t i = 0; i < values.size(); i++) {
            ints[i] = static_cast<int64_t>(values[i]);
        }
        fwht_inplace(std::span<int64_t>(ints));
        for (size_t i = 0; i < ints.size(); i++) {
            out[i] = static_cast<double>(ints[i]);
        }
    } else {
        std::copy(values.begin(), values.end(), out.begin());
        fwht_inplace(std::span<double>(out));
    }
    return out;
}

template <typename T>
void fwht_impl(std::span<T> data) {
    size_t size = data.size();
    if (size == 0 || (size & (size - 1)) != 0) {
        fail(ErrorKind::Usage, "transform length " + std::to_string(size) + " is not a power of two");
    }
    for (size_t h = 1; h < size; h <<= 1) {
        for (size_t i = 0; i < size; i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                T u = data[j];
                T v = data[j + h];
                data[j] = u + v;
                data[j + h] = u - v;
            }
        }
    }
}

}  // namespace

TruthTable::TruthTable(Domain domain, std::vector<double> values) : domain_(domain), values_(std::move(values)) {
    if (values_.size() != domain_.cardinality()) {
        fail(ErrorKind::Usage, "table has " + std::to_string(values_.size()) + " values but " + domain_.describe() +
                                   " has " + std::to_string(domain_.cardinality()) + " elements");
    }
}

TruthTable TruthTable::from_function(const Domain &domain, const std::function<double(uint64_t)> &fn) {
    domain.require_enumerable();
    std::vector<double> values;
    values.reserve(domain.cardinality());
    domain.for_each([&](uint64_t c) { values.push_back(fn(c)); });
    return TruthTable(domain, std::move(values));
}

TruthTable TruthTable::pm_of(const Predicate &f) {
    return from_function(f.domain(), [&](uint64_t c) { return f.eval_unchecked(c) ? 1.0 : -1.0; });
}

TruthTable TruthTable::parity_character(const BitVector &s) {
    uint64_t bits = s.bits();
    return from_function(Domain::full_cube(s.width()),
                         [bits](uint64_t x) { return parity_of(x & bits) ? -1.0 : 1.0; });
}

double TruthTable::mean() const {
    double sum = 0.0;
    for (double v : values_) {
        sum += v;
    }
    return sum / static_cast<double>(values_.size());
}

bool TruthTable::is_pm_one() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 1.0 || v == -1.0; });
}

double inner_product(const TruthTable &f, const TruthTable &g) {
    if (!(f.domain() == g.domain())) {
        fail(ErrorKind::Usage, "inner product over different domains " + f.domain().describe() + " and " +
                                   g.domain().describe());
    }
    double sum = 0.0;
    for (size_t i = 0; i < f.size(); i++) {
        sum += f[i] * g[i];
    }
    return sum / static_cast<double>(f.size());
}

void fwht_inplace(std::span<double> data) {
    fwht_impl(data);
}

void fwht_inplace(std::span<int64_t> data) {
    fwht_impl(data);
}

double SpectrumGF2::parseval_sum() const {
    double sum = 0.0;
    for (double c : coefficients) {
        sum += c * c;
    }
    return sum;
}

void SpectrumGF2::write_csv(std::ostream &out) const {
    out << "s,coefficient\n";
    out << std::setprecision(17);
    for (size_t s = 0; s < coefficients.size(); s++) {
        out << to_hex(s, n) << ',' << coefficients[s] << '\n';
    }
}

SpectrumGF2 wht(const TruthTable &g) {
    require_full_cube(g, "wht");
    SpectrumGF2 out;
    out.n = g.domain().n();
    out.coefficients = raw_transform(g);
    double scale = std::ldexp(1.0, -out.n);
    for (double &c : out.coefficients) {
        c *= scale;
    }
    return out;
}

TruthTable read_truth_table_csv(std::istream &in) {
    std::vector<std::pair<uint64_t, double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        size_t comma = line.find(',');
        if (comma == std::string::npos) {
            fail(ErrorKind::Usage, "line " + std::to_string(line_no) + ": expected 'x,value'");
        }
        std::string key = line.substr(0, comma);
        std::string val = line.substr(comma + 1);
        double value = 0.0;
        uint64_t x = 0;
        try {
            size_t used = 0;
            value = std::stod(val, &used);
            x = parse_hex(key);
        } catch (const std::exception &) {
            if (rows.empty() && line_no == 1) {
                continue;  // header
            }
            fail(ErrorKind::Usage, "line " + std::to_string(line_no) + ": cannot parse '" + line + "'");
        }
        rows.emplace_back(x, value);
    }
    size_t size = rows.size();
    if (size < 2 || (size & (size - 1)) != 0) {
        fail(ErrorKind::Usage, "truth table has " + std::to_string(size) + " rows; need 2^n with n >= 1");
    }
    int n = std::countr_zero(size);
    std::vector<double> values(size, 0.0);
    std::vector<bool> seen(size, false);
    for (const auto &[x, v] : rows) {
        if (x >= size || seen[x]) {
            fail(ErrorKind::Usage, "truth table point " + to_hex(x, n) + " is out of range or repeated");
        }
        seen[x] = true;
        values[x] = v;
    }
    return TruthTable(Domain::full_cube(n), std::move(values));
}

ParityCoefficientCounts parity_counts(const TruthTable &g, const BitVector &s) {
    require_full_cube(g, "parity_counts");
    if (s.width() != g.domain().n()) {
        fail(ErrorKind::Usage, "parity index width differs from table width");
    }
    if (!g.is_pm_one()) {
        fail(ErrorKind::Usage, "parity_counts needs a +/-1 table");
    }
    ParityCoefficientCounts c;
    c.n = s.width();
    c.t = g[0] > 0 ? 1 : -1;
    for (uint64_t x = 0; x < g.size(); x++) {
        if (g[x] > 0) {
            c.a++;
            if (x != 0 && !parity_of(x & s.bits())) {
                c.b++;
            }
        }
    }
    return c;
}

double parity_coefficient_from_counts(const ParityCoefficientCounts &c) {
    double numerator = 4.0 * static_cast<double>(c.b) + (c.t == 1 ? 4.0 : 0.0) - 2.0 * static_cast<double>(c.a);
    return std::ldexp(numerator, -c.n);
}

CorrelatedClassStats CorrelatedClassStats::bool_linear(int n, uint32_t p) {
    (void)Domain::punctured_zp(n, p);
    CorrelatedClassStats st;
    st.d = ipow(p, n - 1);
    double pd = p;
    double num = (pd - 2) * (pd - 2) * std::pow(pd, n - 2) - pd;
    st.lambda = num / (std::pow(pd, n) - pd);
    return st;
}

std::vector<TruthTable> bool_linear_pm_tables(int n, uint32_t p) {
    PredicateClass cls = PredicateClass::normalized_bool_linear(n, p);
    std::vector<TruthTable> out;
    out.reserve(cls.size());
    for (uint64_t i = 0; i < cls.size(); i++) {
        out.push_back(TruthTable::pm_of(cls.member(i)));
    }
    return out;
}

std::vector<TruthTable> orthonormalize_correlated(const std::vector<TruthTable> &functions,
                                                  const CorrelatedClassStats &stats) {
    if (functions.empty()) {
        return {};
    }
    if (functions.size() != stats.d) {
        fail(ErrorKind::Precondition, "family has " + std::to_string(functions.size()) + " members, stats say " +
                                          std::to_string(stats.d));
    }
    size_t d = functions.size();
    double lambda = d == 1 ? 0.0 : stats.lambda;
    for (size_t i = 0; i < d; i++) {
        for (size_t j = i; j < d; j++) {
            double expected = i == j ? 1.0 : lambda;
            double got = inner_product(functions[i], functions[j]);
            if (std::abs(got - expected) > kCorrelationTolerance) {
                std::ostringstream msg;
                msg << "inner product of members " << i << " and " << j << " is " << got << ", expected " << expected;
                fail(ErrorKind::Precondition, msg.str());
            }
        }
    }
    double total = 1.0 + (static_cast<double>(d) - 1.0) * lambda;
    if (lambda >= 1.0 || total <= 0.0) {
        fail(ErrorKind::Singularity, "correlation " + std::to_string(lambda) + " leaves no orthonormal rescaling");
    }
    double alpha = 1.0 / std::sqrt(1.0 - lambda);
    double beta = (alpha - 1.0 / std::sqrt(total)) / static_cast<double>(d);

    size_t size = functions.front().size();
    std::vector<double> sum(size, 0.0);
    for (const auto &f : functions) {
        for (size_t k = 0; k < size; k++) {
            sum[k] += f[k];
        }
    }
    std::vector<TruthTable> out;
    out.reserve(d);
    for (const auto &f : functions) {
        std::vector<double> values(size);
        for (size_t k = 0; k < size; k++) {
            values[k] = alpha * f[k] - beta * sum[k];
        }
        out.emplace_back(f.domain(), std::move(values));
    }
    return out;
}

double orthonormality_defect(const std::vector<TruthTable> &functions) {
    double worst = 0.0;
    for (size_t i = 0; i < functions.size(); i++) {
        for (size_t j = i; j < functions.size(); j++) {
            double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(inner_product(functions[i], functions[j]) - target));
        }
    }
    return worst;
}

std::vector<double> negparity_positive_means(const TruthTable &g, bool punctured) {
    require_full_cube(g, "negparity_positive_means");
    std::vector<double> G = raw_transform(g);
    uint64_t size = G.size();
    double g0 = g[0];
    std::vector<double> means(size);
    for (uint64_t s = 0; s < size; s++) {
        double sum = s == 0 ? G[0] : (G[0] + G[s]) / 2.0;
        double count = s == 0 ? static_cast<double>(size) : static_cast<double>(size / 2);
        if (punctured) {
            sum -= g0;
            count -= 1.0;
        }
        means[s] = sum / count;
    }
    return means;
}

DependentCount count_dependent_negparity(const TruthTable &g, double xi, ParityIndexSet index_set) {
    require_full_cube(g, "count_dependent_negparity");
    int n = g.domain().n();
    double slack = std::ldexp(6.0, -n);
    if (!(xi > slack)) {
        fail(ErrorKind::Precondition, "tolerance must exceed 6/2^n = " + std::to_string(slack));
    }
    std::vector<double> means = negparity_positive_means(g, true);
    double reference = g.mean();

    DependentCount out;
    out.bound = 1.0 / ((xi - slack) * (xi - slack));
    out.closed_form_bound = std::pow(2.0, n / 2.0 + 2.0);
    out.closed_form_applies = xi >= std::pow(2.0, -n / 4.0) * (1.0 - 1e-12);
    uint64_t first = index_set == ParityIndexSet::NonZero ? 1 : 0;
    for (uint64_t s = first; s < means.size(); s++) {
        double dev = std::abs(means[s] - reference);
        out.max_deviation = std::max(out.max_deviation, dev);
        out.predicates_checked++;
        if (dev > xi) {
            out.count++;
            out.dependent.push_back(s - first);
        }
    }
    return out;
}

DependentCount count_dependent_boollinear(const TruthTable &g, double xi) {
    const Domain &d = g.domain();
    if (d.kind() != DomainKind::PuncturedZp) {
        fail(ErrorKind::Usage, "count_dependent_boollinear needs a table over the punctured Z_p space");
    }
    int n = d.n();
    uint32_t p = d.p();
    uint64_t block = ipow(p, n - 1);
    double reference = g.mean();

    // Digits of every tail x' in Z_p^{n-1}, entry 1 first.
    std::vector<uint8_t> digits(block * (n - 1));
    for (uint64_t r = 0; r < block; r++) {
        uint64_t v = r;
        for (int i = n - 2; i >= 0; i--) {
            digits[r * (n - 1) + i] = static_cast<uint8_t>(v % p);
            v /= p;
        }
    }

    DependentCount out;
    double pd = p;
    out.closed_form_bound = std::pow(pd, 2.0 * n / 3.0 + 2.0);
    out.bound = out.closed_form_bound;
    out.closed_form_applies = xi >= std::pow(pd, -n / 3.0) * (1.0 - 1e-12);
    double positives = static_cast<double>(block - 1);
    for (uint64_t member = 0; member < block; member++) {
        // a = (1, digits of member). Positive x: x0 = 1 - sum_{i>=1} a_i x_i.
        const uint8_t *a = &digits[member * (n - 1)];
        double sum = 0.0;
        for (uint64_t r = 1; r < block; r++) {
            const uint8_t *x = &digits[r * (n - 1)];
            uint32_t acc = 0;
            for (int i = 0; i < n - 1; i++) {
                acc += static_cast<uint32_t>(a[i]) * x[i];
            }
            uint32_t x0 = (1 + p - acc % p) % p;
            uint64_t code = x0 * block + r;
            sum += g[d.index_of(code)];
        }
        double dev = std::abs(sum / positives - reference);
        out.max_deviation = std::max(out.max_deviation, dev);
        out.predicates_checked++;
        if (dev > xi) {
            out.count++;
            out.dependent.push_back(member);
        }
    }
    return out;
}

uint64_t count_large_coefficients(const SpectrumGF2 &spectrum, double tau) {
    uint64_t count = 0;
    for (double c : spectrum.coefficients) {
        if (std::abs(c) > tau) {
            count++;
        }
    }
    return count;
}

}  // namespace sqslab
