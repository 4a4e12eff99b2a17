#include "ovrank/modular.hpp"

#include <stdexcept>
#include <string>

namespace ovrank {

namespace {

long mod(long x, long k) { return ((x % k) + k) % k; }

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

HPReal tan_pi(const mpq_class& x, int prec) { return sin_turns(x / 2, prec) / cos_turns(x / 2, prec); }
HPReal sin_pi(const mpq_class& x, int prec) { return sin_turns(x / 2, prec); }

// Phase of omega_{h,k}^2 / omega_{j,k'} in turns: s(h,k) - s(j,k')/2.
Rational omega_ratio_turns(long h, long k, long j, long k2) {
    return dedekind_sum(h, k) - dedekind_sum(j, k2) / 2;
}

void check_kloosterman_args(long a, long c, long k) {
    require(c > 2, "kloosterman: c must be > 2");
    require(a > 0 && a < c, "kloosterman: need 0 < a < c");
    require(gcd_long(a, c) == 1, "kloosterman: gcd(a,c) must be 1");
    require(k >= 1, "kloosterman: k must be >= 1");
}

}  // namespace

long gcd_long(long a, long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        const long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational sawtooth(const Rational& x) {
    if (x.get_den() == 1) return 0;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rational r = x - Rational(fl) - ratio(1, 2);
    r.canonicalize();
    return r;
}

Rational dedekind_sum(long h, long k) {
    require(k >= 1, "dedekind_sum: k must be >= 1");
    h = mod(h, k);
    require(gcd_long(h, k) == 1, "dedekind_sum: gcd(h,k) must be 1");
    // s(h,k) + s(k,h) = -1/4 + (h^2 + k^2 + 1) / (12 h k), and s(k,h) = s(k mod h, h).
    Rational sum = 0;
    int sign = 1;
    while (k > 1) {
        const mpz_class hz = h, kz = k;
        Rational step{mpz_class(hz * hz + kz * kz + 1), mpz_class(12 * hz * kz)};
        step.canonicalize();
        step -= ratio(1, 4);
        if (sign > 0) sum += step;
        else sum -= step;
        sign = -sign;
        const long next = k % h;
        k = h;
        h = next;
    }
    sum.canonicalize();
    return sum;
}

Rational dedekind_sum_direct(long h, long k) {
    require(k >= 1, "dedekind_sum_direct: k must be >= 1");
    h = mod(h, k);
    require(gcd_long(h, k) == 1, "dedekind_sum_direct: gcd(h,k) must be 1");
    Rational sum = 0;
    for (long u = 1; u < k; ++u) sum += sawtooth(ratio(u, k)) * sawtooth(ratio(mod(h * u, k), k));
    sum.canonicalize();
    return sum;
}

HPComplex omega(long h, long k, int precision_bits) {
    return HPComplex::unit(dedekind_sum(h, k) / 2, precision_bits);
}

long mod_inverse(long h, long k) {
    require(k >= 1, "mod_inverse: k must be >= 1");
    if (k == 1) return 0;
    long old_r = mod(h, k), r = k, old_s = 1, s = 0;
    while (r != 0) {
        const long q = old_r / r;
        long t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        throw std::invalid_argument("mod_inverse: " + std::to_string(h) + " is not invertible mod " +
                                    std::to_string(k));
    return mod(old_s, k);
}

void for_each_unit(long k, const std::function<void(long, long)>& fn) {
    require(k >= 1, "for_each_unit: k must be >= 1");
    for (long h = 0; h < k; ++h)
        if (gcd_long(h, k) == 1) fn(h, mod_inverse(h, k));
}

long unit_count(long k) {
    long n = 0;
    for_each_unit(k, [&n](long, long) { ++n; });
    return n;
}

KloostermanContext context(long a, long c, long k) {
    check_kloosterman_args(a, c, k);
    KloostermanContext ctx;
    ctx.a = a;
    ctx.c = c;
    ctx.k = k;
    const long g = gcd_long(c, k);
    ctx.c1 = c / g;
    ctx.k1 = k / g;
    ctx.l = mod(a * ctx.k1, ctx.c1);
    return ctx;
}

Region region(const KloostermanContext& ctx) {
    if (ctx.c1 == 1) return Region::divisible;
    const Rational x = ratio(ctx.l, ctx.c1);
    if (x <= ratio(1, 4)) return Region::lower;
    if (x <= ratio(3, 4)) return Region::middle;
    return Region::upper;
}

Rational delta(const KloostermanContext& ctx, long r) {
    require(r >= 0, "delta: r must be >= 0");
    const Region reg = region(ctx);
    if (reg == Region::divisible) throw std::invalid_argument("delta: undefined when c divides k");
    const Rational x = ratio(ctx.l, ctx.c1);
    Rational out;
    switch (reg) {
        case Region::lower: out = ratio(1, 16) - x / 2 + x * x - r * x; break;
        case Region::middle: out = 0; break;
        case Region::upper: out = ratio(1, 16) - 3 * x / 2 + x * x + ratio(1, 2) - r * (1 - x); break;
        case Region::divisible: break;
    }
    out.canonicalize();
    return out;
}

Rational m_param(const KloostermanContext& ctx, long r) {
    require(r >= 0, "m_param: r must be >= 0");
    const Region reg = region(ctx);
    if (reg == Region::divisible) throw std::invalid_argument("m_param: undefined when c divides k");
    const mpz_class d = mpz_class(ctx.a) * ctx.k1 - ctx.l;
    const mpz_class c1 = ctx.c1;
    mpz_class num;
    switch (reg) {
        case Region::lower: num = 2 * d * d + c1 * d + 2 * r * c1 * d; break;
        case Region::middle: return 0;
        case Region::upper: num = 2 * d * d + 3 * c1 * d - 2 * r * c1 * d - c1 * c1 * (2 * r - 1); break;
        case Region::divisible: break;
    }
    Rational out{mpz_class(-num), mpz_class(2 * c1 * c1)};
    out.canonicalize();
    return out;
}

HPComplex kloosterman_A(long a, long c, long k, long n, const Rational& m, int precision_bits) {
    const auto ctx = context(a, c, k);
    require(k % c == 0, "kloosterman_A: requires c | k");
    require(k % 2 == 0, "kloosterman_A: requires k even");
    const long half = k / 2;
    HPComplex sum(precision_bits);
    for_each_unit(k, [&](long h, long hi) {
        Rational turns = omega_ratio_turns(h, k, mod(h, half), half) - ratio(hi * a * a * ctx.k1, c) +
                         (Rational(n * h) + m * hi) / k;
        const HPReal amp = 1.0 / tan_pi(ratio(a * hi, c), precision_bits);
        sum += HPComplex::unit(turns, precision_bits) * amp;
    });
    HPReal pre = tan_pi(ratio(a, c), precision_bits);
    if (ctx.k1 % 2 == 0) pre = -pre;  // (-1)^{k1+1}
    return sum * pre;
}

HPComplex kloosterman_B(long a, long c, long k, long n, const Rational& m, int precision_bits,
                        KernelConvention convention) {
    const auto ctx = context(a, c, k);
    require(k % c == 0, "kloosterman_B: requires c | k");
    require(k % 2 == 1, "kloosterman_B: requires k odd");
    HPComplex sum(precision_bits);
    for_each_unit(k, [&](long h, long hi) {
        const Rational kernel = convention == KernelConvention::printed
                                    ? ratio(-hi * a * a * ctx.k1, c)
                                    : ratio(-(c - 2) * hi * a * a * ctx.k1, 2 * c);
        Rational turns = omega_ratio_turns(h, k, mod(2 * h, k), k) + kernel + (Rational(n * h) + m * hi) / k;
        const HPReal amp = 1.0 / sin_pi(ratio(a * hi, c), precision_bits);
        sum += HPComplex::unit(turns, precision_bits) * amp;
    });
    HPReal pre = -tan_pi(ratio(a, c), precision_bits) / sqrt(HPReal(2L, precision_bits));
    if (convention == KernelConvention::calibrated) pre = -pre;
    return sum * pre;
}

HPComplex kloosterman_D(long a, long c, long k, long n, const Rational& m, int region_sign,
                        int precision_bits) {
    const auto ctx = context(a, c, k);
    require(k % c != 0, "kloosterman_D: requires c not dividing k");
    require(k % 2 == 1, "kloosterman_D: requires k odd");
    require(region_sign == 1 || region_sign == -1, "kloosterman_D: region_sign must be +1 or -1");
    if (region(ctx) == Region::middle)
        throw std::invalid_argument("kloosterman_D: l/c1 in (1/4, 3/4] has no D term");
    HPComplex sum(precision_bits);
    for_each_unit(k, [&](long h, long hi) {
        Rational turns = omega_ratio_turns(h, k, mod(2 * h, k), k) + (Rational(n * h) + m * hi) / k;
        sum += HPComplex::unit(turns, precision_bits);
    });
    HPReal pre = tan_pi(ratio(a, c), precision_bits) / sqrt(HPReal(2L, precision_bits));
    if (region_sign < 0) pre = -pre;
    return sum * pre;
}

}  // namespace ovrank
