// Exhaustive checks of N-bar(a,c,n1+n2) < N-bar(a,c,n1) N-bar(a,c,n2) and the
// analytic T-inequalities that close the argument for large n.

#pragma once

#include "ovrank/counts.hpp"
#include "ovrank/hp.hpp"
#include "ovrank/verdict.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ovrank {

inline constexpr int kCertificateSchemaVersion = 1;

struct Violation {
    int n1 = 0;
    int n2 = 0;
    BigCount lhs;  // N-bar(a,c,n1+n2)
    BigCount rhs;  // N-bar(a,c,n1) N-bar(a,c,n2)

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct Certificate {
    int c = 0;
    int a = 0;
    int n_lo = 0;
    int n_hi = 0;
    long pairs_checked = 0;
    std::vector<Violation> violations;  // sorted by (n1, n2)
    // Smallest rhs/lhs. Pairs with lhs = 0 < rhs have infinite ratio and are
    // skipped; empty only when every pair is of that kind.
    std::optional<mpq_class> min_margin;
    int min_n1 = -1, min_n2 = -1;  // where min_margin was attained
    std::uint32_t table_checksum = 0;

    bool clean() const { return violations.empty(); }
    std::string serialize() const;
};

// Every pair n_lo <= n1 <= n2 <= n_hi, exact. Requires table.n_max() >= 2 n_hi.
Certificate verify_subadditivity(int c, int a, int n_lo, int n_hi, const RankClassTable& table);
Certificate verify_subadditivity_serial(int c, int a, int n_lo, int n_hi, const RankClassTable& table);

enum class TVariant { explicit_c3, explicit_c4, explicit_c5, generic };

std::string to_string(TVariant v);
TVariant parse_tvariant(const std::string& s);
// explicit_c{3,4,5} for those c, generic otherwise.
TVariant variant_for(int c);

struct TResult {
    bool holds = false;
    HPReal lhs;     // T_{n1}(1) = 2 pi sqrt(n1) - pi sqrt(2 n1)
    HPReal rhs;     // log(V) + log(S) at C = 1 (generic: log(48 c n1) + log S)
    HPReal margin;  // lhs - rhs
    Check check;    // lhs < rhs tested as rhs < lhs under the margin policy
};

TResult t_inequality(long n1, int c, TVariant variant, int precision_bits = kDefaultPrecision);

// The relaxation used for c >= 6:
//   log(48 c n1) + log S <= log(840 c n1)   (any n1 >= 2)
//   T_{n1}(1) > 2 log n1 >= log n1 + 2 log(840 c) > log(840 c n1)   (n1 >= (840 c)^2)
struct GenericChain {
    bool b1 = false;       // first relaxation
    bool b2 = false;       // T > 2 log n1
    bool b2_range = false; // n1 >= (840 c)^2
    bool closes = false;   // T > log(840 c n1)
    HPReal threshold;      // (840 c)^2
};
GenericChain t_generic_chain(long n1, int c, int precision_bits = kDefaultPrecision);

// T_{n1}(C), S_{n1}(C), W_{n1}(C), and V_{n1}(C) with the sandwich row of
// c in {3, 4, 5}.
HPReal t_function(const HPReal& n1, const HPReal& C);
HPReal v_function(const HPReal& n1, const HPReal& C, int c);
HPReal s_function(const HPReal& n1, const HPReal& C);
HPReal w_function(const HPReal& n1, const HPReal& C, int c);

enum class Monotonicity { T_in_C, S_in_C };

struct ProbeReport {
    Monotonicity which = Monotonicity::T_in_C;
    int c = 0;
    long samples = 0;
    bool monotone = false;  // T increasing / S decreasing on every sampled n1
    bool v_bound = false;   // V(C) < upper 8 n1 / lower^2 (c = 3, 4, 5; true otherwise)
    bool w_bound = false;   // W(C) < 48 c n1
    std::vector<long> n1_values;
};
ProbeReport monotonicity_probe(int c, Monotonicity which, int precision_bits = kDefaultPrecision);

// Minimal n >= 2 with r_ratio(c, n) < target, searched up to 10^18.
long threshold_scan(int c, const HPReal& target);

}  // namespace ovrank
