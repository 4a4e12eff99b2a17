// Explicit constants and envelopes: the series constants C1..C5, C-bar_2,
// C-bar_4, the error pieces S_i / S_err / I_err, main- and error-term bounds,
// the ratio bounds R_c, the thresholds M_c and the p-bar sandwich.

#pragma once

#include "ovrank/hp.hpp"
#include "ovrank/verdict.hpp"

#include <map>
#include <string>
#include <vector>

namespace ovrank {

struct CertifiedConstant {
    int index = 0;
    int c = 0;
    long terms = 0;      // partial sum covers r = 1..terms
    HPReal partial;
    HPReal tail;         // upper bound for the omitted r > terms
    HPReal value;        // partial + tail

    HPReal relative_tail() const { return tail / partial; }
};

inline constexpr double kTailTolerance = 1e-15;

// Upper value of C_index (index 1..5). c is used by C2 and C4 only and must
// then be >= 3. The tail uses p-bar(r) < e^{pi sqrt r}. At least `min_terms`
// terms are summed exactly.
CertifiedConstant const_C(int index, int c = 3, int precision_bits = kDefaultPrecision, long min_terms = 0);

HPReal cbar2(int c, int precision_bits = kDefaultPrecision);
HPReal cbar4(int c, int precision_bits = kDefaultPrecision);

struct BoundBreakdown {
    int c = 0;
    long n = 0;
    std::map<std::string, HPReal> pieces;
    HPReal total;
};

// S1..S8, S2err, S5err, S6err, I2err, I5err, I6err with C-bar_2, C-bar_4.
BoundBreakdown error_pieces(int c, long n, int precision_bits = kDefaultPrecision);
// Same fourteen names, evaluated from the underlying expressions with the
// certified C-values, exact cot(pi/2c) and sum_k k^{-1/2} <= 2 n^{1/4}.
// Requires n >= 4 (log(n/4) >= 0).
BoundBreakdown error_pieces_raw(int c, long n, int precision_bits = kDefaultPrecision);

// main_G1 = 0.1624 e^{pi sqrt(n)/c} n^{1/4} c,
// main_G2 = (0.0266c + 0.2123) e^{pi sqrt(n)(1-4/c)} n^{1/4} c.
BoundBreakdown main_term_breakdown(int c, long n, int precision_bits = kDefaultPrecision);
HPReal main_term_bound(int c, long n, int precision_bits = kDefaultPrecision);
HPReal error_term_bound(int c, long n, int precision_bits = kDefaultPrecision);

// R_c(n): explicit forms for c = 3, 4, 5 and the merged generic form for c >= 6.
HPReal r_ratio(int c, long n, int precision_bits = kDefaultPrecision);
// The unmerged normalized bound with C-bar_2, C-bar_4 (every term kept).
HPReal r_ratio_piecewise(int c, long n, int precision_bits = kDefaultPrecision);

// 27.32 n e^{-pi sqrt n}, an upper bound for 1/p-bar(n) when n >= 2.
HPReal inverse_pbar_bound(long n, int precision_bits = kDefaultPrecision);

HPReal m_c(int c, int precision_bits = kDefaultPrecision);
HPReal m_c_prime(int c, int precision_bits = kDefaultPrecision);

struct Sandwich {
    HPReal lower;
    HPReal upper;
};
// (1/8n)(1 -+ 1/sqrt n) e^{pi sqrt n}
Sandwich pbar_sandwich(long n, int precision_bits = kDefaultPrecision);

struct Threshold {
    int c = 0;
    HPReal lower_coef;
    HPReal upper_coef;
    HPReal n_min;
    bool tabulated = false;  // true for the c = 3, 4, 5 rows
};
Threshold sandwich_threshold(int c, int precision_bits = kDefaultPrecision);

struct AuxCheck {
    std::string name;
    bool passed = false;
    long samples = 0;
    HPReal worst_margin;  // smallest (rhs - lhs) / |rhs| seen
};
std::vector<AuxCheck> aux_inequalities_selftest(int precision_bits = kDefaultPrecision);

}  // namespace ovrank
