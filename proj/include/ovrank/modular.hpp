// Sawtooth and Dedekind sums, the (c1, k1, l, delta, m) parameters, and the
// Kloosterman-type sums A, B, D that enter the main terms for A(a/c; n).

#pragma once

#include "ovrank/hp.hpp"

#include <gmpxx.h>

#include <functional>

namespace ovrank {

using Rational = mpq_class;

// ((x)) = x - floor(x) - 1/2 off the integers, 0 on them.
Rational sawtooth(const Rational& x);

// s(h,k) by the reciprocity recursion (Euclid-like, O(log k) steps).
Rational dedekind_sum(long h, long k);
// s(h,k) = sum_{u mod k} ((u/k))((hu/k)), O(k).
Rational dedekind_sum_direct(long h, long k);

// omega_{h,k} = exp(pi i s(h,k)).
HPComplex omega(long h, long k, int precision_bits = kDefaultPrecision);

// h' in [0,k) with h h' = 1 (mod k). For k = 1 returns 0.
long mod_inverse(long h, long k);

long gcd_long(long a, long b);

// Calls fn(h, h') for 0 <= h < k with gcd(h,k) = 1, in increasing h.
void for_each_unit(long k, const std::function<void(long h, long h_inv)>& fn);
long unit_count(long k);

struct KloostermanContext {
    long a = 0;
    long c = 0;
    long k = 0;
    long c1 = 0;  // c / gcd(c,k)
    long k1 = 0;  // k / gcd(c,k)
    long l = 0;   // 0 <= l < c1, l = a k1 (mod c1)
};

KloostermanContext context(long a, long c, long k);

// Position of l/c1 in (0,1). `divisible` means c | k (c1 = 1, l = 0).
enum class Region { divisible, lower, middle, upper };
Region region(const KloostermanContext& ctx);

// delta_{c,k,r}; requires c not dividing k, r >= 0.
Rational delta(const KloostermanContext& ctx, long r);
// m_{a,c,k,r}; same domain as delta.
Rational m_param(const KloostermanContext& ctx, long r);

// Which phase is used for the (a^2 k1 h')/c factor of B.
//   printed:    e^{-2 pi i h' a^2 k1 / c}, literal transcription
//   calibrated: -e^{-pi i (c-2) h' a^2 k1 / c}, matches exact A(a/c;n)
enum class KernelConvention { printed, calibrated };

// A_{a,c,k}(n,m): c | k, k even.
HPComplex kloosterman_A(long a, long c, long k, long n, const Rational& m,
                        int precision_bits = kDefaultPrecision);

// B_{a,c,k}(n,m): c | k, k odd.
HPComplex kloosterman_B(long a, long c, long k, long n, const Rational& m,
                        int precision_bits = kDefaultPrecision,
                        KernelConvention convention = KernelConvention::calibrated);

// D_{a,c,k}(n,m) with the sign of the l/c1 region: +1 for (0,1/4], -1 for
// (3/4,1). c does not divide k, k odd. The middle region is rejected.
HPComplex kloosterman_D(long a, long c, long k, long n, const Rational& m, int region_sign,
                        int precision_bits = kDefaultPrecision);

}  // namespace ovrank
