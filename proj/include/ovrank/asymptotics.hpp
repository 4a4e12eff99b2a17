// Main terms of the asymptotic expansion of A(a/c; n), the induced estimate of
// N-bar(a,c,n), and Engel's explicit estimate for p-bar(n).

#pragma once

#include "ovrank/hp.hpp"
#include "ovrank/modular.hpp"

#include <optional>
#include <vector>

namespace ovrank {

// Which k-ranges feed the two sums.
//   definitional: B over c|k odd; D over c∤k odd, c1 != 4
//   printed:      literal "c|k, k odd, c1 != 4" on the D-sum (D undefined there)
enum class SumConditions { definitional, printed };

struct AsymptoticOptions {
    int precision_bits = kDefaultPrecision;
    KernelConvention kernel = KernelConvention::calibrated;
    SumConditions conditions = SumConditions::definitional;
    std::optional<long> k_max;  // replaces floor(sqrt(n)) when set
};

struct KTerm {
    long k = 0;
    long r = -1;  // -1 for B-terms, otherwise the delta index
    HPComplex contribution;
};

struct AsymptoticEstimate {
    HPReal value;           // real part of the summed main terms
    HPReal imag_residual;   // |imaginary part| that was dropped
    HPReal dominant;        // largest |contribution| among k_terms
    std::vector<KTerm> k_terms;
    int precision_bits = kDefaultPrecision;
};

AsymptoticEstimate a_asymptotic(long a, long c, long n, const AsymptoticOptions& options = {});

struct NbarEstimate {
    HPReal value;
    HPReal imag_residual;
    int precision_bits = kDefaultPrecision;
};

// (1/c) engel_pbar(n) + (1/c) sum_j zeta_c^{-aj} A(j/c;n) with each A(j/c;n)
// replaced by its main terms. Every j/c must reduce to a denominator > 2.
NbarEstimate nbar_asymptotic(long a, long c, long n, const AsymptoticOptions& options = {});

struct EngelEstimate {
    long n = 0;
    HPReal estimate;
    HPReal certified_bound;
};

// N = 3 truncation of Engel's series: the k = 1 and k = 3 terms. The estimate
// is carried at precision_bits + log2(e^{pi sqrt n}) bits so its absolute
// error stays far below certified_bound.
EngelEstimate engel_pbar(long n, int precision_bits = kDefaultPrecision);
// The k = 1 bracket alone, (1/8n)[(1+1/(pi sqrt n))e^{-pi sqrt n} + (1-1/(pi sqrt n))e^{pi sqrt n}].
EngelEstimate engel_pbar_displayed(long n, int precision_bits = kDefaultPrecision);

// 3^{5/2} sinh(pi sqrt(n)/3) / (pi n^{3/2}) and its two relaxations.
struct R2Chain {
    HPReal sharp;
    HPReal relaxed;
    HPReal loose;
};
R2Chain r2_chain(long n, int precision_bits = kDefaultPrecision);

}  // namespace ovrank
