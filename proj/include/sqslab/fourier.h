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

#ifndef SQSLAB_FOURIER_H
#define SQSLAB_FOURIER_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sqslab/domain.h"

namespace sqslab {

/// Explicit real-valued function over a domain, stored in enumeration order.
class TruthTable {
   public:
    TruthTable(Domain domain, std::vector<double> values);

    static TruthTable from_function(const Domain &domain, const std::function<double(uint64_t)> &fn);
    /// The +/-1 form 2f - 1 of a predicate.
    static TruthTable pm_of(const Predicate &f);
    /// (-1)^{s.x} over the full cube.
    static TruthTable parity_character(const BitVector &s);

    const Domain &domain() const {
        return domain_;
    }
    std::span<const double> values() const {
        return values_;
    }
    size_t size() const {
        return values_.size();
    }
    double operator[](size_t index) const {
        return values_[index];
    }
    double at_code(uint64_t code) const {
        return values_[domain_.index_of(code)];
    }
    double mean() const;
    bool is_pm_one() const;

   private:
    Domain domain_;
    std::vector<double> values_;
};

/// (1/|X|) sum_x f(x) g(x). Throws a usage error when the domains differ.
double inner_product(const TruthTable &f, const TruthTable &g);

/// Unnormalized in-place Walsh-Hadamard butterflies over a power-of-two span.
void fwht_inplace(std::span<double> data);
void fwht_inplace(std::span<int64_t> data);

/// g_hat(s) = 2^{-n} sum_x g(x) (-1)^{s.x}, indexed by the code of s.
struct SpectrumGF2 {
    int n = 0;
    std::vector<double> coefficients;

    double operator[](uint64_t s) const {
        return coefficients[s];
    }
    double parseval_sum() const;
    /// Header "s,coefficient"; s in hex, coefficient with round-trip precision.
    void write_csv(std::ostream &out) const;
};

/// O(n 2^n) transform. Requires a FullCube domain.
SpectrumGF2 wht(const TruthTable &g);

/// Reads "x,value" rows (x in hex, header optional) covering every point of {0,1}^n.
TruthTable read_truth_table_csv(std::istream &in);

/// Counts for one negative parity f = not-parity_s and one +/-1 query g.
struct ParityCoefficientCounts {
    uint64_t a = 0;  // |{x in {0,1}^n : g(x) = +1}|
    uint64_t b = 0;  // |{x in S_f : g(x) = +1}|
    int t = 1;       // g(0^n)
    int n = 0;
};
ParityCoefficientCounts parity_counts(const TruthTable &g, const BitVector &s);

/// <(-1)^{s.x}, g> recovered from the counts alone: (4b + 4[t = +1] - 2a) / 2^n.
double parity_coefficient_from_counts(const ParityCoefficientCounts &c);

/// A family with common size d and common pairwise inner product lambda.
struct CorrelatedClassStats {
    uint64_t d = 1;
    double lambda = 0.0;

    /// d = p^{n-1}, lambda = ((p^2 - 4p + 4) p^{n-2} - p) / (p^n - p).
    static CorrelatedClassStats bool_linear(int n, uint32_t p);
};

/// The +/-1 tables 2 L_a - 1 for every member of the normalized class, in class order.
std::vector<TruthTable> bool_linear_pm_tables(int n, uint32_t p);

/// Rescales a uniformly correlated +/-1 family into an orthonormal family.
/// Verifies every pairwise inner product equals stats.lambda to 1e-9 first.
std::vector<TruthTable> orthonormalize_correlated(const std::vector<TruthTable> &functions,
                                                  const CorrelatedClassStats &stats);

/// max_{i,j} |<f_i, f_j> - delta_ij|.
double orthonormality_defect(const std::vector<TruthTable> &functions);

/// E_{x in S_f}[g] for f = not-parity_s, for every s (index = code of s), via one
/// transform: sum over {x : s.x = 0} of g is 2^{n-1} (g_hat(0) + g_hat(s)).
/// When punctured, 0^n is removed from every positive set.
std::vector<double> negparity_positive_means(const TruthTable &g, bool punctured = true);

struct DependentCount {
    uint64_t count = 0;              // predicates with |E_{S_f}[g] - E_ref[g]| > xi
    uint64_t predicates_checked = 0;
    double bound = 0.0;              // bound proven for this xi
    double closed_form_bound = 0.0;  // the lemma's closed form at its own xi
    bool closed_form_applies = false;
    double max_deviation = 0.0;
    std::vector<uint64_t> dependent;  // member indices, ascending

    bool within_bound() const {
        return static_cast<double>(count) <= bound;
    }
};

/// Negative parities over the punctured cube against a query over the full cube;
/// the reference mean is over {0,1}^n. bound = 1/(xi - 6/2^n)^2, closed form 2^{n/2+2}.
/// Requires xi > 6/2^n.
DependentCount count_dependent_negparity(const TruthTable &g, double xi,
                                         ParityIndexSet index_set = ParityIndexSet::NonZero);

/// Normalized booleanized linear predicates against a query over the punctured Z_p
/// space; reference mean over the same space. bound = closed form p^{2n/3+2},
/// established only for xi >= p^{-n/3} (closed_form_applies).
DependentCount count_dependent_boollinear(const TruthTable &g, double xi);

/// |{s : |g_hat(s)| > tau}|.
uint64_t count_large_coefficients(const SpectrumGF2 &spectrum, double tau);

}  // namespace sqslab

#endif
